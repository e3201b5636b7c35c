#pragma once
#include <stdexcept>
#include <string>

namespace hh {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct SingularPointError : std::domain_error {
  using std::domain_error::domain_error;
};

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CalibrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Carries the best estimate reached before the budget ran out.
struct ConvergenceError : std::runtime_error {
  double best_estimate;
  double abs_err;
  ConvergenceError(const std::string &what, double best, double err)
      : std::runtime_error(what), best_estimate(best), abs_err(err) {}
};

} // namespace hh
