#pragma once

#include <stdexcept>
#include <string>

namespace dyck {

// Bad tokens, malformed words, out-of-range parameters, domain violations.
struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Iterative solvers that fail to converge within their budget.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requests whose estimated cost exceeds the configured work budget.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dyck
