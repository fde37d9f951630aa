#ifndef HRKIN__SOLVER_HPP_
#define HRKIN__SOLVER_HPP_

#include <string_view>
#include <vector>

#include "hrkin/arm.hpp"
#include "hrkin/jacobian.hpp"
#include "hrkin/sector.hpp"
#include "hrkin/transform.hpp"

namespace hrkin {

struct SolverSettings {
  double damping = 0.1;
  double dt = 1.0;
  int max_iterations = 2000;
  // Negative means "resolve to 1e-4 * num_links * link_length".
  double position_tolerance = -1.0;
  double orientation_tolerance = 1e-3;  // radians
  int stall_window = 50;
  double stall_epsilon = 1e-12;
  double step_clamp = 0.5;  // max norm of the raw update, radians
  bool position_only = false;
  bool record_trajectory = false;
};

double resolved_position_tolerance(const SolverSettings& settings,
                                   const ArmLayout& layout);

enum class SolveStatus { Converged, Stalled, MaxIterations };
std::string_view to_string(SolveStatus s);

struct SolveReport {
  SolveStatus status = SolveStatus::MaxIterations;
  int iterations = 0;
  double final_position_error = 0.0;
  double final_orientation_error = 0.0;
  ReducedConfiguration final_configuration;
  // Q after each step, first entry is Q0; recorded only when
  // settings.record_trajectory is set.
  std::vector<ReducedConfiguration> trajectory;
};

// One damped least-squares step: Q' = Q + clamp(J^+ u_e) * dt, where the raw
// step vector norm is clamped to settings.step_clamp before the dt scaling.
// In position-only mode just u_e.linear and the top 3 Jacobian rows are used.
ReducedConfiguration ik_step(const ReducedConfiguration& Q, const Jacobian& jac,
                             const Twist& u_e, const SolverSettings& settings);

// Iterates FK -> pose_error -> Jacobian -> ik_step until the error is within
// tolerance, the error stops improving (stalled), or the iteration budget is
// exhausted.  Damaged links never move: they are simply not variables.
SolveReport solve_to_pose(const SectorDecomposition& decomp,
                          const ArmLayout& layout,
                          const ReducedConfiguration& Q0,
                          const HomTransform& target,
                          const SolverSettings& settings);

}  // namespace hrkin

#endif  // HRKIN__SOLVER_HPP_
