#include "azeta/volume.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "azeta/errors.hpp"
#include "azeta/parallel.hpp"
#include "azeta/zeta.hpp"

namespace azeta {

namespace {

struct RadialResult {
  double value;
  double error;
};

// r0 with phi(r0 u) ~ level, by doubling then bisection on the ray.
double ray_scale(const HomogeneousFunction& phi, const Vec& u, double level) {
  double lo = 0.0, hi = 1.0;
  int guard = 0;
  while (phi.evaluate(hi * u) < level && guard++ < 200) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (phi.evaluate(mid * u) < level)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

RadialResult radial(const HomogeneousFunction& phi, const std::function<double(double)>& G, const Vec& u,
                    double level, double tol) {
  const int n = phi.dim();
  auto f = [&](double r) {
    if (r <= 0.0) return 0.0;
    double v = G(phi.evaluate(r * u));
    if (!std::isfinite(v)) return 0.0;  // phi overflowed far out on the ray
    return n == 1 ? v : v * std::pow(r, n - 1);
  };
  double r0 = ray_scale(phi, u, level);
  static thread_local boost::math::quadrature::tanh_sinh<double> ts;
  static thread_local boost::math::quadrature::exp_sinh<double> es;
  double e1 = 0.0, e2 = 0.0;
  double a = ts.integrate(f, 0.0, r0, tol, &e1);
  double b = es.integrate(f, r0, std::numeric_limits<double>::infinity(), tol, &e2);
  return {a + b, e1 * std::fabs(a) + e2 * std::fabs(b)};
}

}  // namespace

BoundedValue integrate_composed(const HomogeneousFunction& phi, const std::function<double(double)>& G,
                                double rel_tol) {
  const int n = phi.dim();
  if (n > 3) throw BudgetExceeded("integrate_composed: n > 3 not supported", INFINITY);
  // Locate the bulk of G so the radial split sits near it.
  double level = 1.0;
  {
    double best = 0.0;
    for (double u = 0.05; u < 200.0; u *= 1.1) {
      double v = std::fabs(G(u));
      if (v > best) best = v, level = u;
    }
    level = std::max(level, 1.0);
  }
  const double tol = std::max(rel_tol, 1e-15);
  BoundedValue out;
  out.kind = Rigor::heuristic;
  if (n == 1) {
    Vec p = Vec::Constant(1, 1.0), m = Vec::Constant(1, -1.0);
    auto a = radial(phi, G, p, level, tol), b = radial(phi, G, m, level, tol);
    out.value = a.value + b.value;
    out.error = a.error + b.error + 4e-16 * std::fabs(a.value + b.value);
    return out;
  }
  using boost::math::quadrature::gauss_kronrod;
  double radial_err = 0.0;  // worst radial error, integrated over the angles below
  if (n == 2) {
    auto ang = [&](double th) {
      Vec u(2);
      u << std::cos(th), std::sin(th);
      auto r = radial(phi, G, u, level, tol);
      radial_err = std::max(radial_err, r.error);
      return r.value;
    };
    double err = 0.0;
    double v = gauss_kronrod<double, 31>::integrate(ang, 0.0, 2.0 * M_PI, 12, tol, &err);
    out.value = v;
    out.error = err + 2.0 * M_PI * radial_err + 1e-15 * std::fabs(v);
    return out;
  }
  auto outer = [&](double th) {
    auto inner = [&](double ph) {
      Vec u(3);
      u << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th);
      auto r = radial(phi, G, u, level, tol);
      radial_err = std::max(radial_err, r.error);
      return r.value;
    };
    double e = 0.0;
    return std::sin(th) * gauss_kronrod<double, 21>::integrate(inner, 0.0, 2.0 * M_PI, 8, 1e-12, &e);
  };
  double err = 0.0;
  double v = gauss_kronrod<double, 21>::integrate(outer, 0.0, M_PI, 8, 1e-12, &err);
  out.value = v;
  out.error = err + 4.0 * M_PI * radial_err + 1e-12 * std::fabs(v);
  return out;
}

BoundedValue volume_exp_integral(const HomogeneousFunction& phi) {
  auto I = integrate_composed(phi, [](double u) { return std::exp(-u); });
  double g = std::tgamma(phi.alpha() + 1.0);
  I.value /= g;
  I.error /= g;
  return I;
}

double enclosing_radius(const HomogeneousFunction& phi, double r) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  const auto& gb = phi.growth();
  // |x| >= 1 forces phi >= c3 |x|^{1/beta}; |x| <= 1 forces phi >= c1 |x|^{1/gamma}.
  double outer = std::pow(r / gb.c3, gb.beta);
  if (outer >= 1.0) return outer;
  return std::min(1.0, std::pow(r / gb.c1, gb.gamma));
}

MonteCarloVolume volume_monte_carlo(const HomogeneousFunction& phi, std::uint64_t samples, std::uint64_t seed,
                                    double r) {
  if (samples == 0) throw DomainError("volume_monte_carlo: need at least one sample");
  const int n = phi.dim();
  const double rho = enclosing_radius(phi, r);
  CounterRng rng{seed};
  const std::int64_t blocks = 64;
  std::vector<std::uint64_t> hits(blocks, 0);
  parallel_for(blocks, [&](std::int64_t b) {
    std::uint64_t lo = samples * std::uint64_t(b) / blocks, hi = samples * std::uint64_t(b + 1) / blocks;
    std::uint64_t h = 0;
    Vec x(n);
    for (std::uint64_t i = lo; i < hi; ++i) {
      for (int d = 0; d < n; ++d) x(d) = rho * (2.0 * rng.uniform(i * n + d) - 1.0);
      if (phi.evaluate(x) < r) ++h;
    }
    hits[b] = h;
  });
  MonteCarloVolume out;
  for (auto h : hits) out.hits += h;
  out.samples = samples;
  out.box_radius = rho;
  double box = std::pow(2.0 * rho, n);
  double p = double(out.hits) / double(samples);
  out.estimate = box * p;
  out.std_error = box * std::sqrt(p * (1.0 - p) / double(samples));
  out.half_width = 2.5758293035489 * out.std_error;
  return out;
}

std::uint64_t lattice_count(const HomogeneousFunction& phi, double r, double budget) {
  if (!(r > 0.0)) throw DomainError("lattice_count: r must be positive");
  const int n = phi.dim();
  const double rho = enclosing_radius(phi, r);
  const std::int64_t R = std::int64_t(std::floor(rho));
  double box = std::pow(2.0 * R + 1.0, n);
  if (box > budget) throw BudgetExceeded("lattice_count: enumeration box exceeds budget", box);
  const double rho2 = rho * rho;
  std::vector<std::uint64_t> slab(2 * R + 1, 0);
  parallel_for(2 * R + 1, [&](std::int64_t k) {
    std::int64_t first = k - R;
    std::uint64_t c = 0;
    Vec w(n);
    w(0) = double(first);
    if (n == 1) {
      c = (phi.evaluate(w) < r) ? 1 : 0;
    } else {
      std::vector<std::int64_t> idx(n - 1, -R);
      for (;;) {
        double nn = double(first) * double(first);
        for (int d = 1; d < n; ++d) {
          w(d) = double(idx[d - 1]);
          nn += w(d) * w(d);
        }
        if (nn <= rho2 && phi.evaluate(w) < r) ++c;
        int d = 0;
        while (d < n - 1 && ++idx[d] > R) idx[d++] = -R;
        if (d == n - 1) break;
      }
    }
    slab[k] = c;
  });
  std::uint64_t total = 0;
  for (auto c : slab) total += c;
  return total;
}

CountingReport counting_limit_scan(const HomogeneousFunction& phi, const std::vector<double>& radii, double budget,
                                   bool with_pole) {
  CountingReport rep;
  rep.volume = volume_exp_integral(phi);
  const double vol = rep.volume.real();
  const double alpha = phi.alpha();
  for (double r : radii) {
    try {
      auto c = lattice_count(phi, r, budget);
      double ratio = double(c) / std::pow(r, alpha);
      rep.rows.push_back({r, c, ratio, vol, std::fabs(ratio - vol)});
    } catch (const BudgetExceeded&) {
      rep.skipped.push_back(r);
    }
  }
  if (with_pole) {
    for (double off : {0.5, 0.2, 0.1, 0.05}) {
      double sigma = alpha + off;
      auto z = zeta_direct(phi, cplx(sigma, 0.0));
      double v = off * z.value.real();
      double target = alpha * vol;
      rep.pole.push_back({sigma, v, off * z.error, target, std::fabs(v - target)});
    }
  }
  return rep;
}

}  // namespace azeta
