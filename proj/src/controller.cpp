#include "hrkin/controller.hpp"

#include <stdexcept>
#include <string>

#include "hrkin/errors.hpp"

namespace hrkin {

int state_count(int num_links) {
  if (num_links < 1) {
    throw std::invalid_argument("state_count: num_links must be >= 1");
  }
  int count = 1;
  for (int k = num_links; k > 1; k /= 2) ++count;
  return count;
}

ControllerState make_initial_state(const ArmLayout& layout) {
  layout.validate();
  ControllerState state;
  state.failure_count = 0;
  state.body_capacity = layout.num_links;
  state.layout = layout;
  return state;
}

ControllerState initial_coarse_state(int num_links, double link_length) {
  ArmLayout layout;
  layout.num_links = num_links;
  layout.link_length = link_length;
  layout.modes.assign(static_cast<size_t>(num_links), LinkMode::Body);
  layout.modes[0] = LinkMode::Head;
  layout.validate();
  return make_initial_state(layout);
}

ControllerState halving_step(const ControllerState& state) {
  if (state.body_capacity <= 1) {
    throw NoFurtherStates("halving_step: already at the finest structure");
  }
  ControllerState next = state;
  next.history.push_back(state.layout.modes);
  next.failure_count = state.failure_count + 1;
  next.body_capacity = state.body_capacity / 2;
  const int n = state.layout.num_links;
  const int k = next.body_capacity;
  for (int i = 1; i <= n; ++i) {
    const LinkMode old = state.layout.mode(i);
    if (old == LinkMode::Damaged) continue;
    bool head = old == LinkMode::Head || i == 1 || (i - 1) % k == 0;
    if (!head && i > 1 && i < n &&
        state.layout.mode(i - 1) == LinkMode::Damaged &&
        state.layout.mode(i + 1) == LinkMode::Damaged) {
      head = true;
    }
    next.layout.modes[i - 1] = head ? LinkMode::Head : LinkMode::Body;
  }
  next.layout.validate();
  return next;
}

ControllerState mark_damaged(const ControllerState& state, int link,
                             FrozenAngles frozen) {
  const int n = state.layout.num_links;
  if (link < 1 || link > n) {
    throw std::invalid_argument("mark_damaged: link " + std::to_string(link) +
                                " out of range");
  }
  if (state.layout.mode(link) == LinkMode::Damaged) return state;
  ControllerState next = state;
  next.history.push_back(state.layout.modes);
  next.layout.modes[link - 1] = LinkMode::Damaged;
  next.layout.frozen[link] = frozen;
  if (link < n && next.layout.mode(link + 1) == LinkMode::Body) {
    next.layout.modes[link] = LinkMode::Head;
  }
  if (next.layout.functional_links() == 0) {
    throw NoFunctionalDofs("mark_damaged: no functional links remain");
  }
  next.layout.validate();
  return next;
}

ControllerState coarsen(const ControllerState& state) {
  ControllerState next = state;
  next.history.push_back(state.layout.modes);
  next.failure_count = 0;
  next.body_capacity = state.layout.num_links;
  const int n = state.layout.num_links;
  for (int i = 1; i <= n; ++i) {
    if (state.layout.mode(i) == LinkMode::Damaged) continue;
    const bool forced_head =
        i == 1 || state.layout.mode(i - 1) == LinkMode::Damaged;
    next.layout.modes[i - 1] = forced_head ? LinkMode::Head : LinkMode::Body;
  }
  if (next.layout.functional_links() == 0) {
    throw NoFunctionalDofs("coarsen: no functional links remain");
  }
  next.layout.validate();
  return next;
}

std::pair<SectorDecomposition, ReducedConfiguration> restructure(
    const ArmLayout& old_layout, const FullConfiguration& q_physical,
    const ArmLayout& new_layout) {
  old_layout.validate();
  new_layout.validate();
  if (old_layout.num_links != new_layout.num_links ||
      old_layout.link_length != new_layout.link_length) {
    throw InvalidTransition("restructure: layouts describe different arms");
  }
  for (int i = 1; i <= old_layout.num_links; ++i) {
    const LinkMode o = old_layout.mode(i);
    const LinkMode n = new_layout.mode(i);
    if ((o == LinkMode::Damaged) != (n == LinkMode::Damaged)) {
      throw InvalidTransition("restructure: damaged set changed at link " +
                              std::to_string(i));
    }
    if (o == LinkMode::Head && n != LinkMode::Head) {
      throw InvalidTransition("restructure: head demoted at link " +
                              std::to_string(i));
    }
  }
  SectorDecomposition decomp = decompose(new_layout);
  // New heads were body links, so their physical twist is 0 and their bend is
  // the old shared bend; project_configuration re-checks the constraints.
  ReducedConfiguration Q = project_configuration(decomp, new_layout, q_physical);
  return {std::move(decomp), std::move(Q)};
}

bool failure_detector(const SolveReport& report) {
  return report.status != SolveStatus::Converged;
}

EscalationReport solve_with_escalation(const ArmLayout& layout,
                                       const FullConfiguration& q0,
                                       const HomTransform& target,
                                       const SolverSettings& settings) {
  EscalationReport out;
  ControllerState state = make_initial_state(layout);
  SectorDecomposition decomp = decompose(state.layout);
  ReducedConfiguration Q = project_configuration(decomp, state.layout, q0);
  while (true) {
    out.solve = solve_to_pose(decomp, state.layout, Q, target, settings);
    ++out.attempts;
    const FullConfiguration q =
        expand_configuration(decomp, state.layout, out.solve.final_configuration);
    if (!failure_detector(out.solve) || state.body_capacity <= 1) {
      out.final_state = std::move(state);
      out.final_q = q;
      return out;
    }
    ControllerState next = halving_step(state);
    std::tie(decomp, Q) = restructure(state.layout, q, next.layout);
    state = std::move(next);
    ++out.restructures;
  }
}

}  // namespace hrkin
