#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "azeta/homog.hpp"
#include "azeta/types.hpp"

namespace azeta {

// Integral of G(phi(x)) over R^n (n <= 3) in Euclidean polar coordinates:
// double-exponential quadrature along rays, adaptive Gauss-Kronrod in the angles.
BoundedValue integrate_composed(const HomogeneousFunction& phi, const std::function<double(double)>& G,
                                double rel_tol = 1e-13);

// |B_phi| = (integral of e^{-phi}) / Gamma(alpha + 1).
BoundedValue volume_exp_integral(const HomogeneousFunction& phi);

struct MonteCarloVolume {
  double estimate = 0.0;
  double half_width = 0.0;  // 99% normal approximation
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  double box_radius = 0.0;
};

// Hit-or-miss estimate of |B_phi(r)| inside the growth-bound box.
MonteCarloVolume volume_monte_carlo(const HomogeneousFunction& phi, std::uint64_t samples, std::uint64_t seed,
                                    double r = 1.0);

// Radius rho with B_phi(r) contained in the Euclidean ball of radius rho.
double enclosing_radius(const HomogeneousFunction& phi, double r);

// #{omega in Z^n : phi(omega) < r}
std::uint64_t lattice_count(const HomogeneousFunction& phi, double r, double budget = 1e8);

struct CountRow {
  double r;
  std::uint64_t count;
  double ratio;
  double target;
  double deviation;
};

struct PoleRow {
  double sigma;
  double value;  // (sigma - alpha) zeta(phi, sigma)
  double error;
  double target;
  double deviation;
};

struct CountingReport {
  BoundedValue volume;
  std::vector<CountRow> rows;
  std::vector<double> skipped;  // radii whose box exceeded the budget
  std::vector<PoleRow> pole;
};

CountingReport counting_limit_scan(const HomogeneousFunction& phi, const std::vector<double>& radii,
                                   double budget = 1e8, bool with_pole = true);

}  // namespace azeta
