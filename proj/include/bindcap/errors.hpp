#pragma once

#include <stdexcept>

namespace bindcap {

// Bad user input: malformed channels, policies, configs.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Time step too large for the channel's rates.
struct StepSizeError : ValidationError {
  using ValidationError::ValidationError;
};

// Chain has an absorbing or disconnected structure under the given policy.
struct IrreducibilityError : ValidationError {
  using ValidationError::ValidationError;
};

// An internal identity was violated; indicates a bug, not bad input.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bindcap
