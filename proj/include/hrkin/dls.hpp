#ifndef HRKIN__DLS_HPP_
#define HRKIN__DLS_HPP_

#include <array>
#include <vector>

#include "hrkin/jacobian.hpp"

namespace hrkin {

// Damped pseudo-inverse J^T (J J^T + k^2 I)^-1, returned row-major with
// shape cols x rows.  The inverse is never formed: the rows x rows normal
// matrix is Cholesky-factored and solved per column.  rows selects how many
// leading rows of J participate (6 for full pose, 3 for position only).
// Throws SingularSystem when k = 0 and J J^T is numerically singular.
std::vector<double> damped_pseudo_inverse(const Jacobian& jac, double damping,
                                          int rows = 6);

// Scratch space for dls_apply so the solver loop does not reallocate.
struct DlsWorkspace {
  std::array<double, 36> normal{};  // J J^T + k^2 I (rows x rows)
  std::array<double, 36> chol{};    // its Cholesky factor
  std::array<double, 6> y{};
};

// qdot = J^T (J J^T + k^2 I)^-1 u without materializing the cols x rows
// pseudo-inverse: one Gram accumulation, one small solve, one J^T product.
// Equivalent to multiplying by damped_pseudo_inverse (tested).
void dls_apply(const Jacobian& jac, double damping, const double* u, int rows,
               DlsWorkspace& ws, std::vector<double>& qdot);

}  // namespace hrkin

#endif  // HRKIN__DLS_HPP_
