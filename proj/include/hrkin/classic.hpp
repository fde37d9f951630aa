#ifndef HRKIN__CLASSIC_HPP_
#define HRKIN__CLASSIC_HPP_

#include <vector>

#include "hrkin/arm.hpp"
#include "hrkin/transform.hpp"

namespace hrkin {

// Per-link prefix transforms retained by classic_forward so Jacobian assembly
// costs O(N) instead of recomputing prefix products per column.
struct ClassicCache {
  // prefix[i] is the pose after the first i links (prefix[0] = identity,
  // prefix[num_links] = end-effector pose).
  std::vector<HomTransform> prefix;
  HomTransform end;
  // Effective configuration (frozen angles substituted for damaged links).
  std::vector<double> q;
  int num_links = 0;
  bool valid = false;
};

// Full-chain forward kinematics: the ordered product of per-link transforms
// twist_rotation(phi_i) * bend_translation(theta_i, d).  Damaged links use
// their frozen angles regardless of the q entries.
void classic_forward(const ArmLayout& layout, const FullConfiguration& q,
                     ClassicCache& cache);
HomTransform classic_forward(const ArmLayout& layout,
                             const FullConfiguration& q);

// Same result without retaining prefixes; used as the uncached baseline in
// benchmarks.
HomTransform classic_forward_naive(const ArmLayout& layout,
                                   const FullConfiguration& q);

// q with frozen angles substituted at damaged links.
FullConfiguration effective_configuration(const ArmLayout& layout,
                                          const FullConfiguration& q);

}  // namespace hrkin

#endif  // HRKIN__CLASSIC_HPP_
