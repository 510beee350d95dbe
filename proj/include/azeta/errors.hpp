#pragma once

#include <stdexcept>
#include <string>

namespace azeta {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};

// A generator with an eigenvalue of nonpositive real part.
struct NotInMPlus : Error {
  using Error::Error;
};

struct NumericalDegeneracy : Error {
  using Error::Error;
};

struct InternalError : Error {
  using Error::Error;
};

struct DivergenceError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  BudgetExceeded(const std::string& what, double best_bound)
      : Error(what), best(best_bound) {}
  double best;
};

}  // namespace azeta
