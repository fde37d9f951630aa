#ifndef HRKIN__SECTOR_HPP_
#define HRKIN__SECTOR_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "hrkin/arm.hpp"
#include "hrkin/transform.hpp"

namespace hrkin {

// One sector: a Head link at first_link followed by body_count Body links
// that twist by 0 and share one bend angle.
struct Sector {
  int first_link = 0;  // 1-based index of the Head link
  int body_count = 0;  // u >= 0
};

// Which reduced variable a Q slot holds.
enum class VarKind { Phi, Theta, BodyTheta };

// One slot of the reduced configuration Q.
struct QVar {
  int sector = -1;  // index into SectorDecomposition::sectors
  int link = 0;     // 1-based link the slot controls (head link for BodyTheta)
  VarKind kind = VarKind::Phi;
};

// Partition of the links into sectors and damaged links, plus the explicit
// correspondence between Q slots and links.
struct SectorDecomposition {
  std::vector<Sector> sectors;        // ascending by first_link
  std::vector<int> damaged;           // 1-based, ascending
  std::vector<QVar> vars;             // Q slot layout, sector blocks in order
  std::vector<int> sector_q_offset;   // offset of each sector's block in Q
  int num_links = 0;

  int q_size() const { return static_cast<int>(vars.size()); }
};

// Builds the sector partition from the layout's mode vector.
// Throws MalformedLayout on structural violations.
SectorDecomposition decompose(const ArmLayout& layout);

// Q from q.  Validates the sector constraints: Body links must have phi = 0
// and all bends inside a sector equal, both within 1e-12 (otherwise
// InconsistentConfiguration).  Damaged entries in q are ignored.
ReducedConfiguration project_configuration(const SectorDecomposition& decomp,
                                           const ArmLayout& layout,
                                           const FullConfiguration& q);

// q from Q.  Damaged slots receive the frozen angles; Body links receive
// (0, theta_body) from their sector.  Inverse of project_configuration on
// consistent inputs.
FullConfiguration expand_configuration(const SectorDecomposition& decomp,
                                       const ArmLayout& layout,
                                       const ReducedConfiguration& Q);

// {control variables |Q|, mobile elementary joints}.  A sector contributes
// 2 + (body_count > 0) control variables and 2 + body_count mobile joints.
std::pair<int, int> count_dofs(const SectorDecomposition& decomp);

// Straight-line distance closed by u equal-bend links of length d:
// |d * sin(u*theta/2) / sin(theta/2)|, continuously u*d at theta = 0.
double chord_length(double theta_b, int u, double d);

// Head link transform: twist_rotation(phi) * bend_translation(theta, d).
HomTransform head_transform(double phi_h, double theta_h, double d);

// Product of u bend_translation(theta_b, d) factors, multiplied out.
// This is the normative definition of a sector body's transform.
HomTransform body_transform_iterative(double theta_b, int u, double d);

// Closed form of the same product: an x-axis rotation by u*theta_b plus a
// translation of (signed) chord length at angle (u+1)*theta_b/2 in the y-z
// plane.  Valid for (u-1)*|theta_b| < 2*pi; outside that domain it falls
// back to the iterative product and counts the fallback (see below).
HomTransform body_transform_closed(double theta_b, int u, double d);

// Frozen transform of a damaged link.
HomTransform damaged_transform(double phi, double theta, double d);

// Number of times body_transform_closed fell back to the iterative product
// on this thread, for diagnostics.
std::uint64_t closed_form_fallback_count();
void reset_closed_form_fallback_count();

// Per-sector frames retained by reduced_forward for Jacobian reuse.
struct ReducedCache {
  // Pose entering each sector's head link (damaged prefixes already applied).
  std::vector<HomTransform> sector_entry;
  // Local product of each sector: head_transform * body transform.
  std::vector<HomTransform> sector_local;
  HomTransform end;
  std::vector<double> Q;  // configuration the cache was built from
  int num_links = 0;
  bool valid = false;
};

// Sector-form forward kinematics: each sector's local product is evaluated
// left-to-right in isolation, then the sector products and damaged-link
// transforms are combined strictly in link order.  Because every sector
// product is self-contained, evaluating sectors concurrently cannot change
// the result.
void reduced_forward(const SectorDecomposition& decomp, const ArmLayout& layout,
                     const ReducedConfiguration& Q, ReducedCache& cache);
HomTransform reduced_forward(const SectorDecomposition& decomp,
                             const ArmLayout& layout,
                             const ReducedConfiguration& Q);

}  // namespace hrkin

#endif  // HRKIN__SECTOR_HPP_
