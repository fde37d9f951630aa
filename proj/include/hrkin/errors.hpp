#ifndef HRKIN__ERRORS_HPP_
#define HRKIN__ERRORS_HPP_

#include <stdexcept>

namespace hrkin {

// Layout vector violates the structural rules (leading Body link, Body
// following Damaged, size/mode mismatches, missing frozen angles).
struct MalformedLayout : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A full configuration does not satisfy the sector constraints (nonzero twist
// on a Body link, unequal bend angles inside one sector).
struct InconsistentConfiguration : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An operation was handed a stale or mismatched cache.
struct InvalidState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Undamped solve hit a singular J*J^T.
struct SingularSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A restructure would demote a Head or change the damaged set.
struct InvalidTransition : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// halving_step called at body capacity 1 (the finest structure).
struct NoFurtherStates : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every link is damaged; nothing is left to control.
struct NoFunctionalDofs : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config / input file could not be parsed.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal cross-check (classic vs. reduced agreement, frozen-angle
// preservation) failed.  CLI maps this to exit code 4.
struct SelfCheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hrkin

#endif  // HRKIN__ERRORS_HPP_
