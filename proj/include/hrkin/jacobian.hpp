#ifndef HRKIN__JACOBIAN_HPP_
#define HRKIN__JACOBIAN_HPP_

#include <vector>

#include "hrkin/arm.hpp"
#include "hrkin/classic.hpp"
#include "hrkin/sector.hpp"
#include "hrkin/transform.hpp"

namespace hrkin {

// Geometric Jacobian, row-major 6 x cols.  Rows 0-2 are the linear part,
// rows 3-5 the angular part; position-only solves use the top 3 rows.
struct Jacobian {
  int rows = 6;
  int cols = 0;
  std::vector<double> a;  // row-major rows x cols

  struct Label {
    int owner = 0;  // 1-based link (classic) or sector index (reduced)
    VarKind kind = VarKind::Phi;
  };
  std::vector<Label> labels;

  double at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
  double& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }

  void resize(int c) {
    cols = c;
    a.assign(static_cast<size_t>(rows) * c, 0.0);
    labels.assign(static_cast<size_t>(c), {});
  }
};

// How reduced_jacobian forms the shared-bend column of a sector.
enum class BodyColumnMode {
  // O(1) per sector: the geometric sum of the body joints' columns in closed
  // form (their axes coincide, so the sum collapses).  Falls back to the
  // per-joint sum for short or nearly straight bodies.
  ClosedForm,
  // O(u) per sector: explicit sum over the body joints' elementary columns.
  PerJointSum,
  // Deliberately wrong single-joint reading; kept as a diagnostics/negative
  // control only.
  LastJointOnly,
};

// One column per functional elementary joint (two per link), assembled from
// the prefix frames cached by classic_forward.  Throws InvalidState when the
// cache is missing or sized for a different arm.
Jacobian classic_jacobian(const ArmLayout& layout, const ClassicCache& cache);

// Textbook variant that recomputes every prefix product from scratch per
// column: O(N^2).  Benchmark baseline only.
Jacobian classic_jacobian_naive(const ArmLayout& layout,
                                const FullConfiguration& q);

// One column per reduced variable.  A sector's shared bend column is the sum
// of its body joints' elementary columns (chain rule over the shared angle).
Jacobian reduced_jacobian(const SectorDecomposition& decomp,
                          const ArmLayout& layout, const ReducedCache& cache,
                          BodyColumnMode mode = BodyColumnMode::ClosedForm);

// Central differences of reduced_forward: position directly, orientation via
// the rotation vector of the relative rotation between the two perturbed
// poses.  Oracle for the analytic Jacobians.
Jacobian finite_difference_jacobian(const SectorDecomposition& decomp,
                                    const ArmLayout& layout,
                                    const ReducedConfiguration& Q,
                                    double h = 1e-6);

}  // namespace hrkin

#endif  // HRKIN__JACOBIAN_HPP_
