#include "azeta/zeta.hpp"

#include <algorithm>
#include <cmath>

#include "azeta/errors.hpp"
#include "azeta/parallel.hpp"
#include "azeta/quadrature.hpp"
#include "azeta/special.hpp"
#include "azeta/volume.hpp"

namespace azeta {

namespace {

constexpr double kV1 = 3.0;  // smoothed cutoff falls from 1 to 0 on [1, kV1]

double cutoff(double v) {
  if (v <= 1.0) return 1.0;
  if (v >= kV1) return 0.0;
  double fa = std::exp(-1.0 / (kV1 - v)), fb = std::exp(-1.0 / (v - 1.0));
  return fa / (fa + fb);
}

bool nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Integral over [L, inf) of theta(t) t^{p-1} dt, in u = log t on panels of width 1/4.
BoundedValue mellin_integral(const std::function<BoundedValue(double)>& theta, cplx p, double L, double tol) {
  auto F = [&](double u) -> cplx { return theta(std::exp(u)).value * std::exp(p * u); };
  auto E = [&](double u) -> cplx { return theta(std::exp(u)).error * std::exp(p.real() * u); };
  const double width = 0.25;
  const double unit_tol = tol / 8.0;
  cplx total(0.0, 0.0);
  double err = 0.0;
  bool clean = true;
  std::function<void(double, double, int, cplx&, double&)> panel = [&](double a, double b, int depth, cplx& v,
                                                                     double& e) {
    QuadResult r = gk15(F, a, b);
    if (r.error > unit_tol * (b - a) && depth < 7) {
      double m = 0.5 * (a + b);
      panel(a, m, depth + 1, v, e);
      panel(m, b, depth + 1, v, e);
      return;
    }
    if (r.error > unit_tol * (b - a)) clean = false;
    v += r.value;
    e += r.error + std::fabs(gk15(E, a, b).value.real());
  };
  const double u0 = std::log(L);
  double prev = -1.0;
  int zeros = 0;
  for (int k = 0;; ++k) {
    double a = u0 + k * width;
    cplx v(0.0, 0.0);
    double e = 0.0;
    panel(a, a + width, 0, v, e);
    total += v;
    err += e;
    double mag = std::abs(v) + e;
    if (mag == 0.0) {
      if (++zeros >= 2) break;
      continue;
    }
    zeros = 0;
    if (mag < 1e-3 * tol && prev > 0.0) {
      double q = mag / prev;
      if (q < 0.999) {
        err += mag * q / (1.0 - q);
        break;
      }
    }
    prev = mag;
    if (k >= 400) {
      err += 400.0 * mag;
      clean = false;
      break;
    }
  }
  BoundedValue out;
  out.value = total;
  out.error = err;
  out.kind = Rigor::heuristic;
  (void)clean;
  return out;
}

PhiPtr borrow(const HomogeneousFunction& phi) { return PhiPtr(&phi, [](const HomogeneousFunction*) {}); }

}  // namespace

double default_power_exp(const HomogeneousFunction& phi, int k_max) {
  const auto& G = phi.generator();
  double c = std::max(G.beta() * G.dim() + 1.0, G.alpha() + k_max + 2.0);
  c = 2.0 * std::ceil(c / 2.0 - 1e-12);
  return c;
}

double default_exp_power(const HomogeneousFunction& phi) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, QuadraticForm> || std::is_same_v<T, HomogeneousPolynomial>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, PNorm>) {
          bool even = std::isfinite(v.p) && v.p == std::floor(v.p) && std::fmod(v.p, 2.0) == 0.0;
          return even ? v.p : 2.0;
        } else if constexpr (std::is_same_v<T, AnisotropicSuperellipse>) {
          return v.q;
        } else {
          return 2.0;
        }
      },
      phi.variant());
}

static Kernel make_kernel(const PhiPtr& phi, ZetaOptions& opt, KernelForm form) {
  if (form == KernelForm::PowerExp) {
    if (opt.c <= 0.0) opt.c = default_power_exp(*phi, opt.k_max);
    return Kernel::power_exp(phi, opt.c);
  }
  if (opt.b <= 0.0) opt.b = default_exp_power(*phi);
  return Kernel::exp_power(phi, opt.b);
}

ZetaEngine::ZetaEngine(PhiPtr phi, ZetaOptions opt, KernelForm form)
    : phi_(std::move(phi)),
      opt_(opt),
      kernel_(make_kernel(phi_, opt_, form)),
      shells_(std::make_unique<PsiShells>(kernel_)),
      dual_(kernel_.natural_generator().transpose()) {}

const SampledTransform& ZetaEngine::transform() const {
  std::call_once(transform_once_, [&] {
    TransformOptions to;
    to.band = opt_.band;
    khat_ = std::make_unique<SampledTransform>(fourier_transform(kernel_, to));
  });
  return *khat_;
}

const BoundedValue& ZetaEngine::ghat_zero() const {
  std::call_once(ghat_once_, [&] { ghat0_ = ghat_zero_direct(kernel_); });
  return ghat0_;
}

const BoundedValue& ZetaEngine::volume() const {
  std::call_once(vol_once_, [&] { vol_ = volume_exp_integral(*phi_); });
  return vol_;
}

double ZetaEngine::alpha_k() const { return kernel_.natural_generator().alpha(); }

cplx ZetaEngine::s_kernel(cplx s) const {
  return kernel_.form() == KernelForm::PowerExp ? s : s / kernel_.param();
}

cplx ZetaEngine::gamma_factor_inv(cplx sk) const {
  double ck = kernel_.form() == KernelForm::PowerExp ? kernel_.param() : 0.0;
  return rgamma(sk + ck);
}

Strip ZetaEngine::strip() const {
  const auto& G = kernel_.natural_generator();
  double lo = alpha_k() - G.gamma() * transform().decay_order();
  double hi = G.gamma() * kernel_.decay_sigma();
  double f = kernel_.form() == KernelForm::PowerExp ? 1.0 : kernel_.param();
  return {lo * f, hi * f};
}

void ZetaEngine::check_strip(cplx s) const {
  Strip st = strip();
  if (!(s.real() > st.lo && s.real() < st.hi)) {
    throw DomainError("Re s = " + std::to_string(s.real()) + " lies outside the certified strip (" +
                      std::to_string(st.lo) + ", " + std::to_string(st.hi) +
                      "); raise the kernel exponent c or widen the transform band");
  }
}

BoundedValue ZetaEngine::theta_star(double t) const {
  {
    std::lock_guard<std::mutex> lock(theta_mu_);
    auto it = theta_cache_.find(t);
    if (it != theta_cache_.end()) return it->second;
  }
  ThetaOptions to;
  auto v = theta_star_matrix(kernel_.natural_generator(), kernel_, t, to, shells_.get());
  std::lock_guard<std::mutex> lock(theta_mu_);
  theta_cache_.emplace(t, v);
  return v;
}

BoundedValue ZetaEngine::theta_star_dual(double t) const {
  {
    std::lock_guard<std::mutex> lock(dual_mu_);
    auto it = dual_cache_.find(t);
    if (it != dual_cache_.end()) return it->second;
  }
  auto v = theta_star_transform(dual_, transform(), t, phi_->even());
  std::lock_guard<std::mutex> lock(dual_mu_);
  dual_cache_.emplace(t, v);
  return v;
}

BoundedValue ZetaEngine::mellin_tail(bool dual, cplx p, double L, double tol) const {
  if (dual) return mellin_integral([this](double t) { return theta_star_dual(t); }, p, L, tol);
  return mellin_integral([this](double t) { return theta_star(t); }, p, L, tol);
}

BoundedValue ZetaEngine::xi_plus(cplx s) const {
  double tol = opt_.rel_target * std::max(1.0, std::abs(1.0 / gamma_factor_inv(s)));
  return mellin_tail(false, s, 1.0, tol);
}

BoundedValue ZetaEngine::xi_plus_dual(cplx s) const {
  double tol = opt_.rel_target * std::max(1.0, std::abs(1.0 / gamma_factor_inv(alpha_k() - s)));
  return mellin_tail(true, s, 1.0, tol);
}

MeromorphicValue ZetaEngine::continued(cplx s) const {
  MeromorphicValue out;
  out.s = s;
  out.method = "continued:" + kernel_.describe();
  const double al = phi_->alpha();
  const double f = kernel_.form() == KernelForm::PowerExp ? 1.0 : kernel_.param();
  const cplx sk = s_kernel(s);
  const double ak = alpha_k();
  const double ck = kernel_.form() == KernelForm::PowerExp ? kernel_.param() : 0.0;
  const double g0 = kernel_.value_at_origin();
  const auto& gh = ghat_zero();

  if (std::abs(s - al) < 1e-6) {
    PoleInfo p;
    p.location = al;
    p.distance = std::abs(s - al);
    p.residue = (f * gh.real() * rgamma(ak + ck)).real();
    const double h = 1e-3;
    auto a = continued(cplx(al + h, s.imag()));
    auto b = continued(cplx(al - h, s.imag()));
    cplx da = cplx(h, s.imag()), db = cplx(-h, s.imag());
    p.constant = 0.5 * ((a.value - p.residue / da) + (b.value - p.residue / db));
    out.value = cplx(NAN, NAN);
    out.error = 0.5 * (a.error + b.error);
    out.near_pole = p;
    return out;
  }
  check_strip(s);
  if (nonpositive_integer(sk + ck)) throw DomainError("s + c is a nonpositive integer; choose another kernel exponent");
  if (sk == 0.0 && g0 != 0.0) throw DomainError("s = 0 is removable for this kernel; use zeta_at_zero");

  const cplx gi = gamma_factor_inv(sk);
  const double scale = std::max(1e-8, 1.0 / std::abs(gi));
  const double tol = opt_.rel_target * scale;
  auto xp = mellin_tail(false, sk, 1.0, tol);
  auto xd = mellin_tail(true, ak - sk, 1.0, tol);
  cplx xi = xp.value + xd.value - gh.value / (ak - sk);
  double err = xp.error + xd.error + gh.error / std::abs(ak - sk);
  if (g0 != 0.0) xi -= g0 / sk;
  out.value = xi * gi;
  out.error = err * std::abs(gi);
  out.kind = Rigor::heuristic;
  return out;
}

FunctionalResidual ZetaEngine::functional_equation(cplx s, double t0) const {
  if (!(t0 > 0.0)) throw DomainError("functional_equation: t0 must be positive");
  const double ak = alpha_k();
  const double g0 = kernel_.value_at_origin();
  const auto& gh = ghat_zero();
  const double tol = opt_.rel_target * std::max(1.0, std::abs(1.0 / gamma_factor_inv(s)));
  auto ia = mellin_tail(false, s, t0, tol);
  auto ia_inv = mellin_tail(false, s, 1.0 / t0, tol);
  auto it = mellin_tail(true, ak - s, t0, tol);
  auto it_inv = mellin_tail(true, ak - s, 1.0 / t0, tol);
  FunctionalResidual r;
  r.lhs = ia.value + gh.value * std::pow(t0, s - ak) / (s - ak) + it_inv.value;
  r.rhs = it.value - gh.value * std::pow(t0, ak - s) / (ak - s) + ia_inv.value;
  if (g0 != 0.0) {
    r.lhs -= g0 * std::pow(t0, s) / s;
    r.rhs -= g0 * std::pow(t0, -s) / s;
  }
  r.residual = std::abs(r.lhs - r.rhs);
  r.bound = ia.error + ia_inv.error + it.error + it_inv.error +
            gh.error * (std::abs(std::pow(t0, s - ak) / (s - ak)) + std::abs(std::pow(t0, ak - s) / (ak - s)));
  r.kind = Rigor::heuristic;
  return r;
}

std::shared_ptr<const std::vector<ZetaEngine::DirectPoint>> ZetaEngine::direct_points(double rmax) const {
  std::lock_guard<std::mutex> lock(direct_mu_);
  if (direct_cache_ && rmax <= direct_r_) return direct_cache_;
  const int n = phi_->dim();
  const long R = long(std::floor(enclosing_radius(*phi_, rmax)));
  if (std::pow(2.0 * R + 1.0, n) > 4e8) throw BudgetExceeded("direct sum box exceeds 4e8 points", INFINITY);
  const bool half = phi_->even();
  const long x0_lo = half ? 0 : -R;
  const long nslab = R - x0_lo + 1;
  std::vector<std::vector<DirectPoint>> slabs(nslab);
  parallel_for(nslab, [&](std::int64_t i) {
    const long x0 = x0_lo + long(i);
    auto& out = slabs[i];
    Vec w(n);
    w(0) = double(x0);
    std::vector<long> idx(n, -R);
    const long side = 2 * R + 1;
    const double inner = std::pow(double(side), n - 1);
    for (double c = 0; c < inner; ++c) {
      long sup = std::labs(x0);
      bool nonzero = x0 != 0, positive = x0 > 0;
      for (int d = 1; d < n; ++d) {
        w(d) = double(idx[d]);
        sup = std::max(sup, std::labs(idx[d]));
        if (!nonzero && idx[d] != 0) {
          nonzero = true;
          positive = idx[d] > 0;
        }
      }
      if (nonzero && (!half || positive)) {
        double v = phi_->evaluate(w);
        if (v < rmax) out.push_back({v, sup});
      }
      for (int d = n - 1; d >= 1; --d) {
        if (++idx[d] <= R) break;
        idx[d] = -R;
      }
    }
  });
  auto all = std::make_shared<std::vector<DirectPoint>>();
  for (auto& sl : slabs) all->insert(all->end(), sl.begin(), sl.end());
  std::sort(all->begin(), all->end(), [](const DirectPoint& a, const DirectPoint& b) {
    return a.phi < b.phi || (a.phi == b.phi && a.sup < b.sup);
  });
  direct_cache_ = all;
  direct_r_ = rmax;
  return direct_cache_;
}

cplx ZetaEngine::smoothing_integral(cplx s) const {
  const double al = phi_->alpha();
  auto f = [&](double v) -> cplx { return std::pow(v, al - s - 1.0) * (1.0 - cutoff(v)); };
  auto q = integrate_adaptive(f, 1.0, kV1, 1e-16);
  return q.value + std::pow(kV1, al - s) / (s - al);
}

MeromorphicValue ZetaEngine::direct(cplx s) const {
  const int n = phi_->dim();
  const double al = phi_->alpha();
  if (!(s.real() > al)) throw DivergenceError("zeta_direct needs Re s > alpha = " + std::to_string(al));
  MeromorphicValue out;
  out.s = s;
  out.method = "direct";
  double budget = opt_.direct_budget > 0.0 ? opt_.direct_budget : (n == 1 ? 2e5 : (n == 2 ? 3e5 : 1e6));
  budget *= std::min(8.0, 1.0 + std::fabs(s.imag()) / 5.0);
  const auto& vol = volume();
  const double B = vol.real();
  const double r = std::pow(budget / B, 1.0 / al) / kV1;
  auto pts = direct_points(kV1 * r);
  const double mult = phi_->even() ? 2.0 : 1.0;
  const cplx J = smoothing_integral(s);

  auto smoothed = [&](double rr) {
    std::vector<cplx> terms;
    for (const auto& p : *pts) {
      if (p.phi >= kV1 * rr) break;
      terms.push_back(mult * std::exp(-s * std::log(p.phi)) * cutoff(p.phi / rr));
    }
    return pairwise_sum(terms.data(), terms.size()) + al * B * std::pow(rr, al - s) * J;
  };
  cplx S = smoothed(r);
  cplx S4 = smoothed(r / 4.0);
  double heur = std::abs(S - S4) + al * vol.error * std::pow(r, al - s.real()) * std::abs(J);
  out.value = S;
  out.error = heur;
  out.kind = Rigor::heuristic;

  const auto& gb = phi_->growth();
  const double sig = s.real();
  if (sig > gb.beta * n) {
    // Largest cube inside {phi < kV1 r}: phi <= c4 |x|^{1/gamma} for |x| >= 1.
    long R0 = long(std::floor(std::pow(kV1 * r / gb.c4, gb.gamma) / std::sqrt(double(n))));
    if (R0 >= 1) {
      std::vector<cplx> terms;
      for (const auto& p : *pts)
        if (p.sup <= R0) terms.push_back(mult * std::exp(-s * std::log(p.phi)));
      cplx box = pairwise_sum(terms.data(), terms.size());
      double e = sig / gb.beta;
      double tail = 2.0 * n * std::pow(3.0, n - 1) * std::pow(gb.c3, -sig) * std::pow(double(R0), n - e) / (e - n);
      double rig = std::abs(S - box) + tail;
      if (rig <= std::max(1e-8, 10.0 * heur)) {
        out.error = rig;
        out.kind = Rigor::rigorous;
      }
    }
  }
  return out;
}

MeromorphicValue zeta_direct(PhiPtr phi, cplx s) { return ZetaEngine(std::move(phi)).direct(s); }

MeromorphicValue zeta_direct(const HomogeneousFunction& phi, cplx s) { return zeta_direct(borrow(phi), s); }

MeromorphicValue zeta_continued(PhiPtr phi, cplx s, const ZetaOptions& opt) {
  return ZetaEngine(std::move(phi), opt).continued(s);
}

BoundedValue xi_plus(const GeneratorMatrix& G, const Kernel& k, cplx s, double abs_tol) {
  double sig = k.decay_sigma();
  if (!(s.real() < G.gamma() * sig)) throw DomainError("xi_plus: Re s must stay below gamma * sigma");
  auto th = [&](double t) { return theta_star_matrix(G, k, t); };
  return mellin_integral(th, s, 1.0, abs_tol);
}

MeromorphicValue zeta_at_zero(const ZetaEngine& eng) {
  if (eng.kernel().form() != KernelForm::ExpPower) throw DomainError("zeta_at_zero needs an ExpPower engine");
  const double h = 1e-3;
  auto a = eng.continued(cplx(h, 0.0));
  auto b = eng.continued(cplx(-h, 0.0));
  MeromorphicValue out;
  out.s = 0.0;
  out.value = 0.5 * (a.value + b.value);
  out.error = 0.5 * (a.error + b.error) + 0.5 * h * std::abs(a.value - b.value);
  out.kind = Rigor::heuristic;
  out.method = "removable:" + eng.kernel().describe();
  return out;
}

MeromorphicValue zeta_at_zero(PhiPtr phi, double b) {
  ZetaOptions opt;
  opt.b = b;
  ZetaEngine eng(std::move(phi), opt, KernelForm::ExpPower);
  return zeta_at_zero(eng);
}

BoundedValue residue_at_alpha(const HomogeneousFunction& phi, double c) {
  if (c <= 0.0) c = default_power_exp(phi, 5);
  auto gh = integrate_composed(phi, [c](double u) { return u > 0.0 && std::isfinite(u) ? std::exp(c * std::log(u) - u) : 0.0; });
  double al = phi.alpha();
  double rg = rgamma(cplx(al + c, 0.0)).real();
  BoundedValue out;
  out.value = gh.value * rg;
  out.error = gh.error * std::fabs(rg);
  out.kind = gh.kind;
  return out;
}

MeromorphicValue zeta_negative_integers(PhiPtr phi, int k) {
  if (k < 1) throw DomainError("zeta_negative_integers: k must be positive");
  ZetaOptions opt;
  opt.k_max = std::max(5, k);
  return ZetaEngine(std::move(phi), opt).continued(cplx(-double(k), 0.0));
}

GrowthReport growth_scan(const ZetaEngine& eng, double re_s, const std::vector<double>& heights, double eps) {
  GrowthReport rep;
  rep.re_s = re_s;
  rep.eps = eps;
  rep.required = M_PI / 2.0 - eps - 0.1;
  for (double h : heights)
    if (std::fabs(h) < 1.0) throw DomainError("growth_scan: heights must satisfy |Im s| >= 1");
  const bool use_direct = re_s > eng.phi().alpha();
  rep.rows.resize(heights.size());
  parallel_for(std::int64_t(heights.size()), [&](std::int64_t i) {
    cplx s(re_s, heights[i]);
    auto z = use_direct ? eng.direct(s) : eng.continued(s);
    cplx g = gamma(s);
    rep.rows[i] = {s, std::abs(g * z.value), std::abs(g) * z.error};
  });
  // Least squares of log|Gamma zeta| against |Im s|.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = double(rep.rows.size());
  for (const auto& row : rep.rows) {
    double x = std::fabs(row.s.imag()), y = std::log(row.modulus);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  rep.rate = -slope;
  rep.pass = rep.rate >= rep.required;
  return rep;
}

}  // namespace azeta
