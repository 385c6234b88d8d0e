#pragma once

#include <stdexcept>
#include <string>

namespace rngperc {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct DegenerateInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SizeMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Adaptive quadrature gave up before reaching the requested tolerance.
struct QuadratureError : std::runtime_error {
  double value;
  double error_estimate;
  int panels;
  QuadratureError(const std::string& msg, double v, double e, int p)
      : std::runtime_error(msg), value(v), error_estimate(e), panels(p) {}
};

// Replica budget ran out before the confidence interval got tight enough.
struct BudgetExhaustedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rngperc
