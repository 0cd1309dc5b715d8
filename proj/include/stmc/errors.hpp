#pragma once

#include <stdexcept>
#include <string>

namespace stmc {

// Tensor/kernel dimension disagreement.
struct shape_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Bad layer/graph/CLI configuration.
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input too short for a valid-padded window.
struct insufficient_context_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Graph needs future frames before it can emit; carries the required look-ahead.
struct causality_error : std::runtime_error {
  causality_error(std::string msg, int lookahead)
      : std::runtime_error(std::move(msg)), required_lookahead(lookahead) {}
  int required_lookahead = 0;
};

// File parse/serialize failures.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace stmc
