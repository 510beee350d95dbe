#include "azeta/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "azeta/errors.hpp"
#include "azeta/parallel.hpp"
#include "azeta/theta.hpp"
#include "azeta/volume.hpp"

namespace azeta {

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

int VerifyReport::failures() const {
  return int(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; }));
}

namespace {

struct Draw {
  CounterRng rng;
  std::uint64_t k = 0;
  double uniform(double a, double b) { return a + (b - a) * rng.uniform(k++); }
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
  Vec vector(int n, double scale) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = uniform(-scale, scale);
    return x;
  }
};

CheckResult check(const std::string& name, double measured, double tol, Rigor kind = Rigor::rigorous,
                  const std::string& detail = "") {
  CheckResult c;
  c.name = name;
  c.measured = measured;
  c.tolerance = tol;
  c.pass = std::isfinite(measured) && measured <= tol;
  c.kind = kind;
  c.detail = detail;
  return c;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

VerifyReport verify_suite(PhiPtr phi, const VerifyOptions& opt) {
  VerifyReport rep;
  auto& out = rep.checks;
  const auto& G = phi->generator();
  const int n = phi->dim();
  const double al = phi->alpha();
  Draw draw{CounterRng{opt.seed}};

  // Matrix flow.
  {
    double worst = 0.0, inv = 0.0, det = 0.0;
    for (int i = 0; i < 50; ++i) {
      double s = draw.log_uniform(0.1, 10.0), t = draw.log_uniform(0.1, 10.0);
      Mat st = G.power(s * t);
      worst = std::max(worst, (st - G.power(s) * G.power(t)).norm() / st.norm());
      Mat P = G.power(t);
      inv = std::max(inv, (P * G.power(1.0 / t) - Mat::Identity(n, n)).norm());
      det = std::max(det, std::fabs(P.determinant() / std::pow(t, al) - 1.0));
    }
    out.push_back(check("matflow.group_law", worst, 1e-10));
    out.push_back(check("matflow.inverse_law", inv, 1e-10));
    out.push_back(check("matflow.determinant", det, 1e-10));
    const Mat& A = G.entries();
    const Mat& L = G.lyapunov();
    Mat S = A.transpose() * L + L * A;
    S = 0.5 * (S + S.transpose());
    double lam = Eigen::SelfAdjointEigenSolver<Mat>(S).eigenvalues().minCoeff();
    auto ly = check("matflow.lyapunov_certificate", -lam, 0.0, Rigor::rigorous, "min eig " + fmt(lam));
    ly.pass = lam > 0.0;
    out.push_back(ly);
    double rt = 0.0;
    for (int i = 0; i < 200; ++i) {
      Vec x = draw.vector(n, 1.0);
      if (x.norm() == 0.0) continue;
      x *= std::exp(draw.uniform(-5.0, 5.0)) / x.norm();
      auto p = polar_decompose(G, x);
      Vec back = G.power(p.t) * p.xbar;
      rt = std::max(rt, (back - x).norm() / x.norm());
    }
    out.push_back(check("matflow.polar_roundtrip", rt, 1e-10));
  }

  // Homogeneity, scaling covariance, ball scaling, growth bounds.
  {
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      double t = draw.log_uniform(0.01, 100.0);
      Vec x = draw.vector(n, 2.0);
      double lhs = phi->evaluate(G.power(t) * x), f = phi->evaluate(x);
      worst = std::max(worst, std::fabs(lhs - t * f) / (1.0 + t * f));
    }
    out.push_back(check("homog.homogeneity", worst, 1e-9));
    double cov = 0.0;
    for (double a : {0.5, 3.0}) {
      auto pa = phi->scaled(a);
      for (int i = 0; i < 200; ++i) {
        Vec x = draw.vector(n, 2.0);
        double f = phi->evaluate(x);
        cov = std::max(cov, std::fabs(pa->evaluate(x) - a * f) / (1.0 + a * f));
      }
    }
    out.push_back(check("homog.scaling_covariance", cov, 1e-12));
    int mismatch = 0;
    for (int i = 0; i < 1000; ++i) {
      double r = draw.log_uniform(0.1, 10.0);
      Vec x = draw.vector(n, 3.0);
      Vec y = G.power(1.0 / r) * x;
      double f = phi->evaluate(x);
      if (std::fabs(f - r) < 1e-9 * r) continue;  // boundary ties are excluded
      if (unit_ball_membership(*phi, x, r) != unit_ball_membership(*phi, y, 1.0)) ++mismatch;
    }
    out.push_back(check("homog.ball_scaling", mismatch, 0.0));
    const auto& gb = phi->growth();
    int viol = 0;
    for (int i = 0; i < 2000; ++i) {
      Vec x = draw.vector(n, 1.0);
      if (x.norm() == 0.0) continue;
      x *= std::exp(draw.uniform(-4.0, 4.0)) / x.norm();
      double r = x.norm(), f = phi->evaluate(x);
      double lo = r <= 1.0 ? gb.c1 * std::pow(r, 1.0 / gb.gamma) : gb.c3 * std::pow(r, 1.0 / gb.beta);
      double hi = r <= 1.0 ? gb.c2 * std::pow(r, 1.0 / gb.beta) : gb.c4 * std::pow(r, 1.0 / gb.gamma);
      if (f < lo * (1.0 - 1e-12) || f > hi * (1.0 + 1e-12)) ++viol;
    }
    out.push_back(check("homog.growth_bounds", viol, 0.0, Rigor::heuristic));
  }

  // Volumes and counting.
  auto vol = volume_exp_integral(*phi);
  {
    auto mc = volume_monte_carlo(*phi, opt.mc_samples, opt.seed);
    if (n <= 2) {
      double d = std::fabs(vol.real() - mc.estimate);
      out.push_back(check("volume.estimator_agreement", d, mc.half_width + vol.error, Rigor::heuristic,
                          "quadrature " + fmt(vol.real()) + ", monte carlo " + fmt(mc.estimate)));
    }
    for (double r : {2.0, 5.0}) {
      auto mr = volume_monte_carlo(*phi, opt.mc_samples, opt.seed + 17, r);
      double ra = std::pow(r, al);
      double d = std::fabs(mr.estimate - ra * mc.estimate);
      double tol = 2.5758 * std::hypot(mr.std_error, ra * mc.std_error);
      out.push_back(check("volume.ball_scaling_r" + fmt(r), d, tol, Rigor::heuristic));
    }
    std::uint64_t prev = 0;
    int drops = 0;
    for (double r : {0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 100.0}) {
      auto c = lattice_count(*phi, r, 1e7);
      if (c < prev) ++drops;
      prev = c;
    }
    out.push_back(check("volume.count_monotone", drops, 0.0));
    auto sw = sandwich_smooth(*phi, 0.1);
    int bad = 0;
    for (double r : {3.0, 10.0, 40.0}) {
      if (lattice_count(*sw.lower, r, 1e7) < lattice_count(*sw.upper, r, 1e7)) ++bad;
    }
    out.push_back(check("volume.sandwich_count", bad, 0.0));
  }

  // Theta sums.
  {
    auto k = Kernel::power_exp(phi, default_power_exp(*phi, 5));
    ThetaOptions full, half;
    full.allow_half = false;
    double worst = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
      auto a = theta_star_matrix(k.natural_generator(), k, t, full);
      auto b = theta_star_matrix(k.natural_generator(), k, t, half);
      worst = std::max(worst, std::abs(a.value - b.value) / std::max(1e-300, std::abs(a.value)));
    }
    out.push_back(check("theta.half_lattice", worst, 1e-14));
    double prev = INFINITY;
    int up = 0;
    for (double w : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      double v = theta_phi(*phi, cplx(w, 0.0)).real();
      if (!(v < prev)) ++up;
      prev = v;
    }
    out.push_back(check("theta.monotone_in_w", up, 0.0));
  }

  if (!opt.zeta_checks) return rep;

  ZetaEngine eng(phi, opt.zeta);
  {
    // Transform at zero against the closed form through the volume.
    const auto& kh = eng.transform();
    const auto& k = eng.kernel();
    double closed = vol.real() * al * std::tgamma(al + k.param());
    double d = std::fabs(kh.value_at_zero() - closed);
    double tol = kh.in_band_error() + vol.error * al * std::tgamma(al + k.param());
    out.push_back(check("kernel.transform_at_zero", d, tol, Rigor::heuristic));

    auto res = residue_at_alpha(*phi, k.param());
    double target = al * vol.real();
    out.push_back(check("zeta.residue", std::fabs(res.real() - target) / target, 1e-6, Rigor::heuristic));

    auto z0 = zeta_at_zero(phi, opt.zeta.b);
    out.push_back(check("zeta.value_at_zero", std::abs(z0.value + 1.0), 1e-4, Rigor::heuristic,
                        "value " + fmt(z0.value.real())));
  }
  {
    // Scaling law in the convergence region.
    const cplx s(al + 1.5, 0.7);
    auto base = eng.direct(s);
    double worst = 0.0;
    for (double a : {2.0, 1.0 / 3.0}) {
      auto za = zeta_direct(phi->scaled(a), s);
      cplx expect = std::pow(a, -s) * base.value;
      worst = std::max(worst, std::abs(za.value - expect));
    }
    out.push_back(check("zeta.scaling_law", worst, 1e-8, Rigor::heuristic));

    cplx sc = std::conj(s);
    auto bc = eng.direct(sc);
    double conj_d = std::abs(bc.value - std::conj(base.value));
    const cplx sl(al - 0.75, 1.3);
    auto c1 = eng.continued(sl), c2 = eng.continued(std::conj(sl));
    conj_d = std::max(conj_d, std::abs(c2.value - std::conj(c1.value)));
    out.push_back(check("zeta.conjugate_symmetry", conj_d, 1e-12 + c1.error + c2.error, Rigor::heuristic));
  }
  {
    // Overlap of direct and continued values.
    std::vector<cplx> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(cplx(draw.uniform(al + 0.5, al + 3.0), draw.uniform(-3.0, 3.0)));
    std::vector<double> diff(pts.size()), comb(pts.size());
    parallel_for(std::int64_t(pts.size()), [&](std::int64_t i) {
      auto d = eng.direct(pts[i]);
      auto c = eng.continued(pts[i]);
      diff[i] = std::abs(d.value - c.value);
      comb[i] = d.error + c.error;
    });
    double worst = *std::max_element(diff.begin(), diff.end());
    double wc = *std::max_element(comb.begin(), comb.end());
    out.push_back(check("zeta.overlap", worst, 1e-6, Rigor::heuristic, "combined error up to " + fmt(wc)));

    // Kernel independence: c and c + 1 give the same continuation.
    ZetaOptions o2 = eng.options();
    o2.c += 1.0;
    ZetaEngine eng2(phi, o2);
    double kd = 0.0, kt = 0.0;
    for (cplx s : {cplx(al - 1.5, 0.0), cplx(0.5 * al, 1.0), cplx(al + 1.0, -0.5)}) {
      auto a = eng.continued(s), b = eng2.continued(s);
      kd = std::max(kd, std::abs(a.value - b.value) - (a.error + b.error));
      kt = std::max(kt, a.error + b.error);
    }
    out.push_back(check("zeta.kernel_independence", kd, 1e-12, Rigor::heuristic,
                        "combined error up to " + fmt(kt)));
  }
  return rep;
}

}  // namespace azeta
