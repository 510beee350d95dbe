#include "azeta/theta.hpp"

#include <cmath>

#include "azeta/errors.hpp"
#include "azeta/special.hpp"

namespace azeta {

namespace {

bool lex_positive(const Vec& w) {
  for (int i = 0; i < w.size(); ++i) {
    if (w(i) > 0.0) return true;
    if (w(i) < 0.0) return false;
  }
  return false;
}

void shell_rec(int d, int n, long m, bool hit, bool half, Vec& w, const std::function<void(const Vec&)>& fn) {
  if (d == n - 1) {
    auto emit = [&](long v) {
      w(d) = double(v);
      if (!half || lex_positive(w)) fn(w);
    };
    if (hit) {
      for (long v = -m; v <= m; ++v) emit(v);
    } else {
      emit(-m);
      emit(m);
    }
    return;
  }
  for (long v = -m; v <= m; ++v) {
    w(d) = double(v);
    shell_rec(d + 1, n, m, hit || v == m || v == -m, half, w, fn);
  }
}

// Suffix sums of sum_{m' > m} N(m') bound(m'); entries past the table are zero.
struct TailTable {
  std::vector<double> suffix;  // suffix[m] = sum over m' >= m
  bool finite = true;
  double at(long m) const {
    if (!finite) return INFINITY;
    if (m < long(suffix.size())) return suffix[m];
    return 0.0;
  }
};

TailTable build_tail(int n, const std::function<double(long)>& bound) {
  std::vector<double> terms(1, 0.0);
  double peak = 0.0;
  int small_run = 0;
  TailTable tt;
  for (long m = 1;; ++m) {
    double v = shell_count(n, m) * bound(m);
    if (!std::isfinite(v)) {
      tt.finite = false;
      return tt;
    }
    terms.push_back(v);
    peak = std::max(peak, v);
    if (v == 0.0 || v < 1e-40 * peak) {
      if (++small_run >= 8) break;
    } else {
      small_run = 0;
    }
    if (m > 20000000) {
      tt.finite = false;
      return tt;
    }
  }
  tt.suffix.assign(terms.size() + 1, 0.0);
  for (long m = long(terms.size()) - 1; m >= 1; --m) tt.suffix[m] = tt.suffix[m + 1] + terms[m];
  return tt;
}

}  // namespace

void for_each_shell_point(int n, long m, bool half, const std::function<void(const Vec&)>& fn) {
  Vec w(n);
  if (m == 0) {
    if (!half) fn(Vec::Zero(n));
    return;
  }
  shell_rec(0, n, m, false, half, w, fn);
}

double shell_count(int n, long m) {
  if (m == 0) return 1.0;
  return std::pow(2.0 * m + 1.0, n) - std::pow(2.0 * m - 1.0, n);
}

PsiShells::PsiShells(const Kernel& k) : k_(&k), half_(k.base().even()) {}

const std::vector<double>& PsiShells::shell(long m) const {
  std::lock_guard<std::mutex> lock(mu_);
  const int n = k_->base().dim();
  while (long(shells_.size()) <= m) {
    long s = long(shells_.size());
    auto v = std::make_unique<std::vector<double>>();
    if (s > 0) for_each_shell_point(n, s, half_, [&](const Vec& w) { v->push_back(k_->psi(w)); });
    shells_.push_back(std::move(v));
  }
  return *shells_[m];
}

BoundedValue theta_star_matrix(const GeneratorMatrix& G, const Kernel& k, double t, const ThetaOptions& opt,
                               const PsiShells* cache) {
  if (!(t > 0.0)) throw DomainError("theta_star_matrix: t must be positive");
  const int n = G.dim();
  const bool fast = G.same_as(k.natural_generator());
  const bool half = opt.allow_half && k.base().even() && (!cache || cache->half());
  Mat P;
  double stretch = 1.0;
  if (!fast) {
    P = G.power(t);
    stretch = t >= 1.0 ? G.c1() * std::pow(t, G.gamma()) : G.c1() * std::pow(t, G.beta());
  }
  // Every omega with |omega|_inf = m has |omega| >= m.
  TailTable tail = build_tail(n, [&](long m) {
    double u = fast ? t * k.psi_lower(double(m)) : k.psi_lower(stretch * double(m));
    return k.profile_sup(u);
  });
  KahanSum acc;
  std::vector<double> buf;
  BoundedValue out;
  int quiet = 0;
  for (long m = 1;; ++m) {
    buf.clear();
    if (fast && cache && cache->half() == half) {
      for (double p : cache->shell(m)) buf.push_back(k.profile(t * p));
    } else {
      for_each_shell_point(n, m, half, [&](const Vec& w) {
        buf.push_back(fast ? k.profile(t * k.psi(w)) : k.evaluate(P * w));
      });
    }
    double s = pairwise_sum(buf.data(), buf.size());
    if (half) s *= 2.0;
    acc.add(s);
    double sum = acc.value();
    double target = std::max({opt.abs_target, opt.rel_target * std::fabs(sum), 1e-300});
    double T = tail.at(m + 1);
    if (T <= target) {
      out.value = sum;
      out.error = T;
      out.kind = Rigor::rigorous;
      return out;
    }
    quiet = std::fabs(s) < 1e-3 * target ? quiet + 1 : 0;
    if (m >= opt.max_shell || (!tail.finite && quiet >= 3 && m >= 8)) {
      out.value = sum;
      out.error = std::isfinite(T) ? T : std::max(target, 10.0 * std::fabs(s) * double(m));
      out.kind = Rigor::heuristic;
      return out;
    }
  }
}

BoundedValue theta_star_transform(const GeneratorMatrix& GT, const SampledTransform& khat, double t, bool even) {
  if (!(t > 0.0)) throw DomainError("theta_star_transform: t must be positive");
  const int n = GT.dim();
  const Mat P = GT.power(t);
  const Mat Pinv = GT.power(1.0 / t);
  const double s = Pinv.norm() > 0 ? Eigen::JacobiSVD<Mat>(Pinv).singularValues()(0) : 0.0;
  const double Y = khat.band();
  const double F = khat.far_limit();
  const double tau = khat.decay_order();
  const long K = std::max(2L, long(std::ceil(s * F)) + 1);
  std::vector<double> vals;
  double oob = 0.0;
  double n_in = 0.0;
  const double mult = even ? 2.0 : 1.0;
  for (long m = 1; m <= K; ++m) {
    for_each_shell_point(n, m, even, [&](const Vec& w) {
      Vec y = P * w;
      double r = y.norm();
      if (r <= Y) {
        vals.push_back(khat.evaluate(y));
        n_in += mult;
      } else {
        if (r <= F) vals.push_back(khat.evaluate(y));
        oob += mult * khat.oob_bound(r);
      }
    });
  }
  // Beyond the cube: |P w| >= |w| / s >= m / s.
  double beyond = 0.0;
  if (tau > n) {
    const long extra = 2000;
    for (long m = K + 1; m <= K + extra; ++m) beyond += shell_count(n, m) * khat.oob_bound(double(m) / s);
    double X = double(K + extra);
    beyond += 2.0 * n * std::pow(3.0, n - 1) * khat.decay_constant() * std::pow(s, tau) * std::pow(X, n - tau) /
              (tau - n);
  } else {
    beyond = INFINITY;
  }
  BoundedValue out;
  out.value = mult * pairwise_sum(vals.data(), vals.size());
  out.error = n_in * khat.in_band_error() + oob + beyond;
  out.kind = Rigor::heuristic;
  return out;
}

BoundedValue theta_phi(const HomogeneousFunction& phi, cplx w, const ThetaOptions& opt) {
  if (!(w.real() > 0.0)) throw DomainError("theta_phi: Re w must be positive");
  const int n = phi.dim();
  const auto& gb = phi.growth();
  const bool half = opt.allow_half && phi.even();
  const double rw = w.real();
  TailTable tail = build_tail(n, [&](long m) {
    double r = double(m);
    double lo = r >= 1.0 ? gb.c3 * std::pow(r, 1.0 / gb.beta) : std::min(gb.c1 * std::pow(r, 1.0 / gb.gamma), gb.c3);
    return std::exp(-rw * lo);
  });
  KahanSum re, im;
  std::vector<double> br, bi;
  BoundedValue out;
  for (long m = 1;; ++m) {
    br.clear();
    bi.clear();
    for_each_shell_point(n, m, half, [&](const Vec& x) {
      cplx v = std::exp(-w * phi.evaluate(x));
      br.push_back(v.real());
      bi.push_back(v.imag());
    });
    double sr = pairwise_sum(br.data(), br.size()), si = pairwise_sum(bi.data(), bi.size());
    if (half) sr *= 2.0, si *= 2.0;
    re.add(sr);
    im.add(si);
    cplx sum(1.0 + re.value(), im.value());
    double target = std::max({opt.abs_target, opt.rel_target * std::abs(sum), 1e-300});
    double T = tail.at(m + 1);
    if (T <= target || m >= opt.max_shell) {
      out.value = sum;
      out.error = T;
      out.kind = T <= target ? Rigor::rigorous : Rigor::heuristic;
      return out;
    }
  }
}

JacobiResidual jacobi_residual(const GeneratorMatrix& G, const Kernel& k, const SampledTransform& khat, double t) {
  if (!(t > 0.0)) throw DomainError("jacobi_residual: t must be positive");
  auto lhs_star = theta_star_matrix(G, k, 1.0 / t);
  GeneratorMatrix GT = G.transpose();
  auto rhs_star = theta_star_transform(GT, khat, t, k.base().even());
  const double ta = std::pow(t, G.alpha());
  JacobiResidual r;
  r.lhs = k.value_at_origin() + lhs_star.real();
  r.rhs = ta * (khat.value_at_zero() + rhs_star.real());
  r.residual = std::fabs(r.lhs - r.rhs);
  r.bound = lhs_star.error + ta * (khat.in_band_error() + rhs_star.error);
  r.kind = weakest(lhs_star.kind, rhs_star.kind);
  return r;
}

}  // namespace azeta
