// Error types shared across the engine. Operations that return diagnostics
// (validation) do not throw; these are reserved for violated preconditions
// and malformed arguments.
#pragma once

#include <stdexcept>
#include <string>

namespace gsp {

// An operation was called with its stated precondition violated.
struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

// A renaming or mapping does not cover the nodes it is applied to.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An E-merge edge set does not join external roots of the two operands.
struct EdgeShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Universe enumeration bounds exceed the hard cap.
struct BoundsTooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A literal operand is not a member of the ground universe.
struct OperandOutsideUniverse : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A Turing machine description has two transitions for one (state, symbol).
struct NondeterministicMachine : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace gsp
