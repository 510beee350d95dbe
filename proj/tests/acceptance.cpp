// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "azeta/asymp.hpp"
#include "azeta/errors.hpp"
#include "azeta/parallel.hpp"
#include "azeta/verify.hpp"
#include "azeta/volume.hpp"
#include "azeta/zeta.hpp"
#include "oracles.hpp"

using namespace azeta;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void need(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [miss: " << what << "]";
    }
  }
};

PhiPtr abs1() { return HomogeneousFunction::pnorm(1, 1.0); }
PhiPtr square1() { return HomogeneousFunction::quadratic(Mat::Identity(1, 1)); }
PhiPtr disc() { return HomogeneousFunction::quadratic(Mat::Identity(2, 2)); }
PhiPtr superellipse() { return HomogeneousFunction::superellipse({12.0, 18.0}, 6.0); }

PhiPtr quartic2() {
  std::vector<Monomial> t = {{1.0, {4, 0}}, {1.0, {2, 2}}, {1.0, {0, 4}}};
  return HomogeneousFunction::polynomial(2, 4, t);
}

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void c1(Outcome& o) {
  ZetaEngine eng(abs1());
  double worst = 0.0;
  for (double s : {2.0, 3.0, 0.5, -1.0, -3.0}) {
    auto z = eng.continued(cplx(s, 0.0));
    double d = std::abs(z.value - 2.0 * oracle::riemann_zeta(s));
    worst = std::max(worst, d);
    o.need(d <= 1e-7, "s=" + g(s) + " off by " + g(d));
  }
  o.detail << "max |zeta - 2 zeta_R| = " << g(worst) << " (tol 1e-7)";
}

void c2(Outcome& o) {
  o.detail << "|zeta(phi,0) + 1|:";
  for (auto& [name, phi] : std::vector<std::pair<std::string, PhiPtr>>{
           {"|x|", abs1()}, {"x^2+y^2", disc()}, {"superellipse", superellipse()}}) {
    auto z = zeta_at_zero(phi);
    double d = std::abs(z.value + 1.0);
    o.detail << " " << name << " " << g(d);
    o.need(d <= 1e-4, name);
  }
  o.detail << " (tol 1e-4)";
}

void c3(Outcome& o) {
  double r1 = residue_at_alpha(*abs1()).real();
  double r2 = residue_at_alpha(*disc()).real();
  o.need(std::fabs(r1 - 2.0) <= 1e-6, "n=1");
  o.need(std::fabs(r2 - M_PI) <= 1e-4, "disc");
  auto se = superellipse();
  auto res = residue_at_alpha(*se);
  auto mc = volume_monte_carlo(*se, 4000000, 7);
  double al = se->alpha();
  double d = std::fabs(res.real() - al * mc.estimate);
  double tol = 3.0 * std::hypot(al * mc.std_error, res.error);
  o.need(d <= tol, "superellipse");
  o.detail << "n=1 " << g(std::fabs(r1 - 2.0)) << " (1e-6), disc " << g(std::fabs(r2 - M_PI))
           << " (1e-4), superellipse " << g(d) << " vs 3 SE " << g(tol);
}

void c4(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  auto cnt = lattice_count(*disc(), 1e6, 1e7);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double dev = std::fabs(double(cnt) / 1e6 - M_PI);
  o.need(dev < 0.01, "Gauss circle");
  o.need(secs < 60.0, "runtime");
  auto rep = counting_limit_scan(*superellipse(), {1e3, 1e4, 1e5}, 1e7, false);
  o.need(rep.rows.size() == 3, "anisotropic radii skipped");
  o.detail << "circle dev " << g(dev) << " (0.01) in " << g(secs) << " s; anisotropic dev";
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    o.detail << " " << g(rep.rows[i].deviation);
    if (i > 0) o.need(rep.rows[i].deviation < rep.rows[i - 1].deviation, "anisotropic trend");
  }
}

void c5(Outcome& o) {
  auto phi = disc();
  double prev = INFINITY, last = 0.0;
  o.detail << "(sigma-1) zeta deviation from pi:";
  for (double sg : {1.2, 1.1, 1.05}) {
    auto z = zeta_direct(phi, cplx(sg, 0.0));
    double v = (sg - 1.0) * z.value.real();
    double d = std::fabs(v - M_PI);
    o.detail << " " << g(d);
    o.need(d < prev, "monotone at sigma=" + g(sg));
    prev = d;
    last = d / M_PI;
  }
  o.need(last <= 0.05, "within 5% at 1.05");
  o.detail << "; relative at 1.05 " << g(last) << " (0.05)";
}

void c6(Outcome& o) {
  // e^{-pi |x|^2} is its own transform.
  double worst = 0.0;
  for (int n : {1, 2}) {
    auto phi = HomogeneousFunction::quadratic(M_PI * Mat::Identity(n, n));
    auto k = Kernel::exp_power(phi, 1.0);
    auto kh = fourier_transform(k);
    for (double t : {1.0, 2.0, 5.0}) {
      auto r = jacobi_residual(k.natural_generator(), k, kh, t);
      worst = std::max(worst, r.residual);
      o.need(r.residual <= 1e-8, "gaussian n=" + std::to_string(n) + " t=" + g(t));
    }
  }
  o.detail << "gaussian residual " << g(worst) << " (1e-8);";
  auto k = Kernel::exp_power(abs1(), 2.0);
  auto kh = fourier_transform(k);
  for (double t : {1.0, 2.0}) {
    auto r = jacobi_residual(k.natural_generator(), k, kh, t);
    o.detail << " |x| b=2 t=" << g(t) << " " << g(r.residual) << " vs " << g(r.bound);
    o.need(r.residual <= r.bound, "numerical transform t=" + g(t));
  }
}

void c7(Outcome& o) {
  o.detail << "residual / bound:";
  for (auto& [name, phi] : std::vector<std::pair<std::string, PhiPtr>>{{"|x|", abs1()}, {"x^2", square1()}}) {
    ZetaEngine eng(phi);
    double al = eng.kernel().natural_generator().alpha();
    std::vector<cplx> pts = {{0.5 * al, 0.0}, {0.5 * al, 3.0}, {al + 1.5, -1.0}, {-1.5, 2.0}, {0.25 * al, -6.0}};
    double worst = 0.0;
    for (cplx s : pts) {
      auto f = eng.functional_equation(s);
      worst = std::max(worst, f.residual / f.bound);
      o.need(f.residual <= f.bound, name + " s=" + g(s.real()) + "+" + g(s.imag()) + "i");
    }
    o.detail << " " << name << " " << g(worst);
  }
}

void c8(Outcome& o) {
  std::vector<std::pair<std::string, PhiPtr>> phis = {
      {"|x|", abs1()},
      {"x^2", square1()},
      {"disc", disc()},
      {"4-norm", HomogeneousFunction::pnorm(2, 4.0)},
      {"quartic", quartic2()},
      {"superellipse", superellipse()},
  };
  CounterRng rng{2024};
  std::uint64_t k = 0;
  o.detail << "max |direct - continued| (1e-6):";
  for (auto& [name, phi] : phis) {
    ZetaEngine eng(phi);
    double al = phi->alpha();
    std::vector<cplx> pts;
    for (int i = 0; i < 20; ++i) {
      double re = al + 0.5 + 2.5 * rng.uniform(k++);
      double im = -5.0 + 10.0 * rng.uniform(k++);
      pts.push_back({re, im});
    }
    std::vector<double> diff(pts.size());
    parallel_for(std::int64_t(pts.size()),
                 [&](std::int64_t i) { diff[i] = std::abs(eng.direct(pts[i]).value - eng.continued(pts[i]).value); });
    double worst = *std::max_element(diff.begin(), diff.end());
    o.detail << " " << name << " " << g(worst);
    o.need(worst <= 1e-6, name);
  }
}

void c9(Outcome& o) {
  ZetaEngine eng(abs1());
  auto rep = remainder_check(eng, 0.0, 3, 0.1, {0.4, 0.2, 0.1, 0.05});
  o.need(rep.pass, "remainder slope");
  o.detail << "slope " << g(rep.slope) << " (>= " << g(rep.required) << ")";
  auto th = theta_phi(*square1(), cplx(0.2, 0.0));
  double d = std::abs(th.value - std::sqrt(M_PI / 0.2));
  double od = std::fabs(oracle::theta_sq(0.2) - std::sqrt(M_PI / 0.2));
  o.need(d < 1e-6, "x^2 leading term");
  o.need(std::abs(th.value - oracle::theta_sq(0.2)) <= 1e-12 + th.error, "x^2 theta vs oracle");
  o.detail << "; x^2 at w=0.2 " << g(d) << " (1e-6), oracle " << g(od);
}

void c10(Outcome& o) {
  auto rep = bernoulli_identity_check(5);
  auto B = oracle::bernoulli(6);
  double worst = 0.0;
  for (const auto& r : rep.rows) {
    double d = std::fabs(r.computed - B[r.k + 1]);
    worst = std::max(worst, d);
    o.need(d <= 1e-5, "k=" + std::to_string(r.k));
  }
  o.need(rep.rows.size() == 5, "row count");
  o.detail << "max |-(k+1) zeta(-k) - B_{k+1}| = " << g(worst) << " (1e-5)";
}

void c11(Outcome& o) {
  std::vector<double> h;
  for (double y = 10.0; y <= 30.0 + 1e-9; y += 2.0) h.push_back(y);
  for (auto& [name, phi] : std::vector<std::pair<std::string, PhiPtr>>{{"|x|", abs1()}, {"x^2", square1()}}) {
    ZetaEngine eng(phi);
    auto rep = growth_scan(eng, phi->alpha() + 1.0, h, 0.1);
    o.need(rep.rate >= M_PI / 2.0 - 0.2, name);
    o.detail << name << " rate " << g(rep.rate) << " ";
  }
  o.detail << "(>= " << g(M_PI / 2.0 - 0.2) << ")";
}

void c12(Outcome& o) {
  std::vector<std::pair<std::string, PhiPtr>> phis = {
      {"|x|", abs1()}, {"x^2", square1()}, {"disc", disc()}, {"superellipse", superellipse()}};
  for (auto& [name, phi] : phis) {
    VerifyOptions vo;
    auto rep = verify_suite(phi, vo);
    o.detail << name << " " << (rep.checks.size() - rep.failures()) << "/" << rep.checks.size() << " ";
    for (const auto& c : rep.checks)
      if (!c.pass) o.need(false, name + " " + c.name);
  }
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<void(Outcome&)>>> crit = {
      {"riemann reduction", c1},    {"value at zero", c2},        {"residue", c3},
      {"counting limit", c4},       {"pole limit", c5},           {"jacobi transform", c6},
      {"functional equation", c7},  {"overlap consistency", c8},  {"theta expansion", c9},
      {"bernoulli identity", c10},  {"growth scan", c11},         {"property suites", c12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      crit[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("criterion %2zu %s: %s  %s  [%.1fs]\n", i + 1, crit[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, crit.size());
  return failed == 0 ? 0 : 1;
}
