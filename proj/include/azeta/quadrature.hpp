#pragma once

#include <functional>

#include "azeta/types.hpp"

namespace azeta {

struct QuadResult {
  cplx value{0.0, 0.0};
  double error = 0.0;
  int evaluations = 0;
  bool converged = true;
};

// Single 15-point Kronrod panel; error is |K15 - G7|.
QuadResult gk15(const std::function<cplx(double)>& f, double a, double b);

// Globally adaptive bisection on the panel with the largest error estimate.
QuadResult integrate_adaptive(const std::function<cplx(double)>& f, double a, double b,
                              double abs_tol, int max_panels = 2000);

// Gauss-Kronrod nodes on [-1, 1] in the order used by gk15 (for callers that memoize).
const double* gk15_nodes();

}  // namespace azeta
