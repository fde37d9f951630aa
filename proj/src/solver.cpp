#include "hrkin/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "hrkin/dls.hpp"
#include "hrkin/errors.hpp"
#include "hrkin/kernels.hpp"

namespace hrkin {

double resolved_position_tolerance(const SolverSettings& settings,
                                   const ArmLayout& layout) {
  if (settings.position_tolerance >= 0.0) return settings.position_tolerance;
  return 1e-4 * layout.num_links * layout.link_length;
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged:
      return "Converged";
    case SolveStatus::Stalled:
      return "Stalled";
    case SolveStatus::MaxIterations:
      return "MaxIterations";
  }
  return "Unknown";
}

namespace {

void check_settings(const SolverSettings& s) {
  if (!(s.damping >= 0.0) || !(s.dt > 0.0) || s.max_iterations < 0 ||
      !(s.step_clamp > 0.0) || s.stall_window < 1 || !(s.stall_epsilon >= 0.0)) {
    throw std::invalid_argument("solver: invalid settings");
  }
}

}  // namespace

ReducedConfiguration ik_step(const ReducedConfiguration& Q, const Jacobian& jac,
                             const Twist& u_e, const SolverSettings& settings) {
  check_settings(settings);
  if (jac.cols != Q.size()) {
    throw std::invalid_argument("ik_step: Jacobian/configuration size mismatch");
  }
  const int rows = settings.position_only ? 3 : 6;
  double u[6] = {u_e.linear.x,  u_e.linear.y,  u_e.linear.z,
                 u_e.angular.x, u_e.angular.y, u_e.angular.z};
  DlsWorkspace ws;
  std::vector<double> qdot;
  dls_apply(jac, settings.damping, u, rows, ws, qdot);
  double norm2 = 0.0;
  for (double v : qdot) norm2 += v * v;
  const double norm = std::sqrt(norm2);
  double scale = settings.dt;
  if (norm > settings.step_clamp) scale *= settings.step_clamp / norm;
  ReducedConfiguration next = Q;
  kernels::axpy(static_cast<int>(qdot.size()), scale, qdot.data(),
                next.v.data());
  return next;
}

SolveReport solve_to_pose(const SectorDecomposition& decomp,
                          const ArmLayout& layout,
                          const ReducedConfiguration& Q0,
                          const HomTransform& target,
                          const SolverSettings& settings) {
  check_settings(settings);
  const double pos_tol = resolved_position_tolerance(settings, layout);
  const double ori_tol = settings.orientation_tolerance;
  const int rows = settings.position_only ? 3 : 6;

  SolveReport report;
  ReducedConfiguration Q = Q0;
  if (settings.record_trajectory) report.trajectory.push_back(Q);

  ReducedCache cache;
  DlsWorkspace ws;
  std::vector<double> qdot;
  std::vector<double> error_history;
  error_history.reserve(static_cast<size_t>(settings.max_iterations) + 1);

  for (int iter = 0;; ++iter) {
    reduced_forward(decomp, layout, Q, cache);
    const Twist err = pose_error(cache.end, target);
    const double pos_err = err.linear.norm();
    const double ori_err = err.angular.norm();
    report.iterations = iter;
    report.final_position_error = pos_err;
    report.final_orientation_error = ori_err;

    if (pos_err <= pos_tol && (settings.position_only || ori_err <= ori_tol)) {
      report.status = SolveStatus::Converged;
      break;
    }
    if (iter >= settings.max_iterations) {
      report.status = SolveStatus::MaxIterations;
      break;
    }
    // Stall detection: the combined error must improve by at least
    // stall_epsilon over any stall_window consecutive iterations.
    const double combined = pos_err + (settings.position_only ? 0.0 : ori_err);
    error_history.push_back(combined);
    const int w = settings.stall_window;
    if (static_cast<int>(error_history.size()) > w) {
      const double prev = error_history[error_history.size() - 1 - w];
      if (prev - combined < settings.stall_epsilon) {
        report.status = SolveStatus::Stalled;
        break;
      }
    }

    const Jacobian jac = reduced_jacobian(decomp, layout, cache);
    double u[6] = {err.linear.x,  err.linear.y,  err.linear.z,
                   err.angular.x, err.angular.y, err.angular.z};
    dls_apply(jac, settings.damping, u, rows, ws, qdot);
    double norm2 = 0.0;
    for (double v : qdot) norm2 += v * v;
    const double norm = std::sqrt(norm2);
    double scale = settings.dt;
    if (norm > settings.step_clamp) scale *= settings.step_clamp / norm;
    kernels::axpy(static_cast<int>(qdot.size()), scale, qdot.data(), Q.v.data());
    if (settings.record_trajectory) report.trajectory.push_back(Q);
  }
  report.final_configuration = Q;
  return report;
}

}  // namespace hrkin
