#ifndef HRKIN__CONFIG_HPP_
#define HRKIN__CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "hrkin/arm.hpp"
#include "hrkin/solver.hpp"
#include "hrkin/transform.hpp"

namespace hrkin {

// Parsed arm config file.  The format is line based:
//
//   # comment
//   num_links: 16
//   link_length: 1.0
//   H: 1,-1,-1,1,0,0,0,0,-1,1,1,0,0,0,-1,1
//   frozen: 2 0.1 -0.2          # damaged link, frozen phi, frozen theta
//   frozen: 3 0.0 0.4
//   damping: 0.1
//   dt: 1.0
//   position_tolerance: 1e-3    # optional, default 1e-4 * N * d
//   orientation_tolerance: 1e-3
//   max_iterations: 2000
//   stall_window: 50
//   stall_epsilon: 1e-12
//   step_clamp: 0.5
//   seed: 42
//   q0: 0,0.1, 0,0.1, ...       # optional initial configuration (2N values)
//
// num_links and H are required; unknown keys are rejected.
struct ArmConfig {
  ArmLayout layout;
  SolverSettings settings;
  std::uint64_t seed = 0;
  std::optional<FullConfiguration> q0;

  FullConfiguration initial_configuration() const {
    return q0 ? *q0 : FullConfiguration::zeros(layout.num_links);
  }
};

// Throws ConfigError on syntax errors, unknown keys, or structurally invalid
// layouts.
ArmConfig load_config(const std::string& path);

// Whitespace- or comma-separated list of 2N joint values.
FullConfiguration load_q_file(const std::string& path, int num_links);

// Target pose from 12 numbers (rotation row-major, then translation) or
// 7 numbers (translation, then unit quaternion w x y z).  The argument is
// either the numbers themselves or a path to a file containing them.
HomTransform parse_target_pose(const std::string& spec);

}  // namespace hrkin

#endif  // HRKIN__CONFIG_HPP_
