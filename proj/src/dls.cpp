#include "hrkin/dls.hpp"

#include <cmath>
#include <stdexcept>

#include "hrkin/errors.hpp"
#include "hrkin/kernels.hpp"

namespace hrkin {
namespace {

void check_rows(const Jacobian& jac, int rows) {
  if (rows != 3 && rows != 6) {
    throw std::invalid_argument("dls: rows must be 3 or 6");
  }
  if (jac.rows != 6 || jac.cols < 1) {
    throw std::invalid_argument("dls: malformed Jacobian");
  }
}

// Pivot acceptance threshold for the normal-matrix Cholesky. With damping
// = 0 the matrix is J*J^T and a pivot far below the dominant diagonal scale
// means rank deficiency. With damping > 0 the ridge makes the matrix
// positive definite by construction no matter how ill-conditioned J is
// (smallest eigenvalue >= k^2), so a small positive pivot is legitimate --
// e.g. long arms produce Jacobian entries of order N^2 and a Gram diagonal
// that dwarfs k^2 -- and only a non-positive pivot (precision exhausted)
// is a failure.
double pivot_tolerance(const double* m, int n, double damping) {
  if (damping > 0.0) return 0.0;
  double max_diag = 0.0;
  for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(m[i * n + i]));
  return 1e-13 * std::max(max_diag, 1.0);
}

// In-place lower Cholesky of the leading n x n block (row-major, stride n).
// Throws SingularSystem when a pivot does not clear tol.
void cholesky(double* m, int n, double tol) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = m[i * n + j];
      for (int k = 0; k < j; ++k) sum -= m[i * n + k] * m[j * n + k];
      if (i == j) {
        if (!(sum > tol)) {
          throw SingularSystem("dls: J*J^T + k^2 I is numerically singular");
        }
        m[i * n + i] = std::sqrt(sum);
      } else {
        m[i * n + j] = sum / m[j * n + j];
      }
    }
  }
}

// Solves L L^T x = b in place using the factor produced above.
void cholesky_solve(const double* l, int n, double* b) {
  for (int i = 0; i < n; ++i) {
    double sum = b[i];
    for (int k = 0; k < i; ++k) sum -= l[i * n + k] * b[k];
    b[i] = sum / l[i * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double sum = b[i];
    for (int k = i + 1; k < n; ++k) sum -= l[k * n + i] * b[k];
    b[i] = sum / l[i * n + i];
  }
}

void build_normal(const Jacobian& jac, double damping, int rows, double* normal) {
  kernels::gram(jac.a.data(), rows, jac.cols, normal);
  const double k2 = damping * damping;
  for (int i = 0; i < rows; ++i) normal[i * rows + i] += k2;
}

}  // namespace

std::vector<double> damped_pseudo_inverse(const Jacobian& jac, double damping,
                                          int rows) {
  check_rows(jac, rows);
  if (!(damping >= 0.0) || !std::isfinite(damping)) {
    throw std::invalid_argument("damped_pseudo_inverse: damping must be >= 0");
  }
  std::array<double, 36> normal{};
  build_normal(jac, damping, rows, normal.data());
  cholesky(normal.data(), rows, pivot_tolerance(normal.data(), rows, damping));
  // Column c of J is the right-hand side for row c of the result, because
  // J^T M^-1 = (M^-1 J)^T for symmetric M.
  std::vector<double> result(static_cast<size_t>(jac.cols) * rows);
  std::vector<double> rhs(static_cast<size_t>(rows));
  for (int c = 0; c < jac.cols; ++c) {
    for (int r = 0; r < rows; ++r) rhs[r] = jac.at(r, c);
    cholesky_solve(normal.data(), rows, rhs.data());
    for (int r = 0; r < rows; ++r) result[static_cast<size_t>(c) * rows + r] = rhs[r];
  }
  return result;
}

void dls_apply(const Jacobian& jac, double damping, const double* u, int rows,
               DlsWorkspace& ws, std::vector<double>& qdot) {
  check_rows(jac, rows);
  build_normal(jac, damping, rows, ws.normal.data());
  ws.chol = ws.normal;
  cholesky(ws.chol.data(), rows,
           pivot_tolerance(ws.normal.data(), rows, damping));
  for (int r = 0; r < rows; ++r) ws.y[r] = u[r];
  cholesky_solve(ws.chol.data(), rows, ws.y.data());
  qdot.resize(static_cast<size_t>(jac.cols));
  kernels::mat_t_vec(jac.a.data(), rows, jac.cols, ws.y.data(), qdot.data());
}

}  // namespace hrkin
