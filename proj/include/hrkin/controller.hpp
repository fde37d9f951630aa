#ifndef HRKIN__CONTROLLER_HPP_
#define HRKIN__CONTROLLER_HPP_

#include <utility>
#include <vector>

#include "hrkin/arm.hpp"
#include "hrkin/sector.hpp"
#include "hrkin/solver.hpp"

namespace hrkin {

// Structure-escalation state: the current layout (mode vector plus frozen
// angles), the failure count and the body-size cap k that halves on every
// failure (k_0 = N, k_{a+1} = floor(k_a / 2)).
struct ControllerState {
  int failure_count = 0;
  int body_capacity = 0;  // k
  ArmLayout layout;
  std::vector<std::vector<LinkMode>> history;  // mode vectors before each step
};

// Number of distinct structures the halving schedule can visit:
// floor(log2(N)) + 1 (k = N, N/2, ..., 1).
int state_count(int num_links);

// Wraps an existing layout (possibly damaged, possibly pre-sectored) with
// k_0 = N and failure count 0.
ControllerState make_initial_state(const ArmLayout& layout);

// The coarsest healthy arm: one Head followed by N-1 Body links.
ControllerState initial_coarse_state(int num_links, double link_length);

// One structure refinement.  Link i becomes a Head when it already was one,
// when i = 1, when (i-1) mod k_new = 0, or when both its neighbours are
// damaged (a functional link squeezed between damaged links cannot stay
// Body); damaged links are preserved.  Head sets therefore only grow.
// Throws NoFurtherStates at k = 1.
ControllerState halving_step(const ControllerState& state);

// Marks a link damaged, freezing it at the given angles.  If the following
// link is a Body link it is promoted to Head so the remainder of the sector
// stays controllable.  Idempotent for already-damaged links.  Throws
// NoFunctionalDofs when this damages the last functional link.
ControllerState mark_damaged(const ControllerState& state, int link,
                             FrozenAngles frozen);

// Returns to the coarsest structure compatible with the damage set: a
// functional link is a Head only where the sector rules force one (link 1 and
// links following a damaged link).  Resets the failure count and the body
// capacity; never invoked automatically after a successful solve.
ControllerState coarsen(const ControllerState& state);

// Rebuilds the decomposition and reduced configuration for new_layout while
// keeping the physical pose (q_physical) fixed.  Heads may only be added and
// the damaged set must be unchanged, otherwise InvalidTransition.
std::pair<SectorDecomposition, ReducedConfiguration> restructure(
    const ArmLayout& old_layout, const FullConfiguration& q_physical,
    const ArmLayout& new_layout);

// True when the report calls for escalating to a finer structure.
bool failure_detector(const SolveReport& report);

struct EscalationReport {
  SolveReport solve;           // report of the last attempt
  ControllerState final_state;
  FullConfiguration final_q;   // physical configuration after the last attempt
  int attempts = 0;
  int restructures = 0;
};

// Runs solve_to_pose, escalating through halving_step + restructure on each
// failure until convergence or the finest structure has been tried.
EscalationReport solve_with_escalation(const ArmLayout& layout,
                                       const FullConfiguration& q0,
                                       const HomTransform& target,
                                       const SolverSettings& settings);

}  // namespace hrkin

#endif  // HRKIN__CONTROLLER_HPP_
