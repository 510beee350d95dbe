#include "azeta/homog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "azeta/errors.hpp"
#include "azeta/parallel.hpp"

namespace azeta {

namespace {

int default_resolution(int n) { return n == 1 ? 2 : (n == 2 ? 1024 : 1200); }

int dense_count(int n) { return n == 1 ? 2 : (n == 2 ? 2048 : 3000); }

std::vector<double> periodic_spline(const std::vector<double>& f) {
  const int M = int(f.size());
  const double h = 2.0 * M_PI / M;
  std::vector<double> rhs(M), m(M, 0.0);
  for (int j = 0; j < M; ++j) rhs[j] = 6.0 * (f[(j + 1) % M] - 2.0 * f[j] + f[(j + M - 1) % M]) / (h * h);
  // m_{j-1} + 4 m_j + m_{j+1} = rhs_j; strictly diagonally dominant, Gauss-Seidel contracts by 1/2.
  for (int sweep = 0; sweep < 200; ++sweep) {
    double change = 0.0, size = 0.0;
    for (int j = 0; j < M; ++j) {
      double v = 0.25 * (rhs[j] - m[(j + M - 1) % M] - m[(j + 1) % M]);
      change = std::max(change, std::fabs(v - m[j]));
      size = std::max(size, std::fabs(v));
      m[j] = v;
    }
    if (change <= 1e-17 * std::max(1.0, size)) break;
  }
  return m;
}

double wendland(double d, double rho) {
  if (d >= rho) return 0.0;
  double q = 1.0 - d / rho;
  return q * q * q * q * (4.0 * d / rho + 1.0);
}

}  // namespace

std::vector<Vec> sl_samples(const GeneratorMatrix& G, int count) {
  auto dirs = sphere_samples(G.dim(), count);
  for (auto& u : dirs) u = G.lyapunov_isqrt() * u;
  return dirs;
}

HomogeneousFunction::HomogeneousFunction(GeneratorPtr G, Variant v, double scale)
    : G_(std::move(G)), variant_(std::move(v)), scale_(scale) {
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw DomainError("scale factor must be positive");
}

PhiPtr HomogeneousFunction::quadratic(const Mat& Q, double scale) {
  if (Q.rows() != Q.cols() || Q.rows() < 1) throw DomainError("quadratic form must be square");
  if ((Q - Q.transpose()).norm() > 1e-12 * Q.norm()) throw DomainError("quadratic form must be symmetric");
  Eigen::LLT<Mat> llt(Q);
  if (llt.info() != Eigen::Success) throw DomainError("quadratic form must be positive definite");
  const int n = int(Q.rows());
  auto G = std::make_shared<GeneratorMatrix>(0.5 * Mat::Identity(n, n));
  auto p = PhiPtr(new HomogeneousFunction(G, QuadraticForm{Q}, scale));
  const_cast<HomogeneousFunction&>(*p).finalize();
  return p;
}

PhiPtr HomogeneousFunction::polynomial(int n, int degree, std::vector<Monomial> terms, double scale) {
  if (n < 1) throw DomainError("polynomial dimension must be positive");
  if (degree < 2 || degree % 2 != 0) throw DomainError("polynomial degree must be even and at least 2");
  if (terms.empty()) throw DomainError("polynomial needs at least one term");
  for (const auto& t : terms) {
    if (int(t.exps.size()) != n) throw DomainError("monomial exponent count must equal dimension");
    int d = 0;
    for (int e : t.exps) {
      if (e < 0) throw DomainError("negative monomial exponent");
      d += e;
    }
    if (d != degree) throw DomainError("polynomial must be homogeneous of the stated degree");
  }
  auto G = std::make_shared<GeneratorMatrix>(Mat::Identity(n, n) / double(degree));
  auto p = PhiPtr(new HomogeneousFunction(G, HomogeneousPolynomial{degree, std::move(terms)}, scale));
  const_cast<HomogeneousFunction&>(*p).finalize();
  return p;
}

PhiPtr HomogeneousFunction::pnorm(int n, double p, double scale) {
  if (n < 1) throw DomainError("p-norm dimension must be positive");
  if (!(p >= 1.0)) throw DomainError("p-norm exponent must be at least 1");
  auto G = std::make_shared<GeneratorMatrix>(Mat::Identity(n, n));
  auto f = PhiPtr(new HomogeneousFunction(G, PNorm{p}, scale));
  const_cast<HomogeneousFunction&>(*f).finalize();
  return f;
}

PhiPtr HomogeneousFunction::superellipse(std::vector<double> m, double q, double scale) {
  const int n = int(m.size());
  if (n < 1) throw DomainError("superellipse needs at least one exponent");
  if (!(q > 0.0)) throw DomainError("superellipse outer power must be positive");
  Mat A = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (!(m[i] > 0.0)) throw DomainError("superellipse exponents must be positive");
    A(i, i) = q / m[i];
  }
  auto G = std::make_shared<GeneratorMatrix>(A);
  auto f = PhiPtr(new HomogeneousFunction(G, AnisotropicSuperellipse{std::move(m), q}, scale));
  // Exponent bookkeeping check: phi(t^A x) = t phi(x).
  CounterRng rng{0xabcdefULL};
  for (int k = 0; k < 16; ++k) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = 4.0 * rng.uniform(2 * k * n + i) - 2.0;
    double t = std::exp(4.0 * rng.uniform(1000 + k) - 2.0);
    double lhs = f->raw(G->power(t) * x);
    double rhs = t * f->raw(x);
    if (std::fabs(lhs - rhs) > 1e-9 * (1.0 + std::fabs(rhs)))
      throw InternalError("superellipse generator does not satisfy homogeneity");
  }
  const_cast<HomogeneousFunction&>(*f).finalize();
  return f;
}

PhiPtr HomogeneousFunction::profile_values(GeneratorPtr G, std::vector<Vec> nodes, std::vector<double> values) {
  const int n = G->dim();
  if (nodes.size() != values.size() || nodes.empty()) throw DomainError("profile nodes and values differ in size");
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("profile values must be positive");
  Profile pr;
  pr.nodes = std::move(nodes);
  pr.values = std::move(values);
  if (n == 2) pr.spline_m = periodic_spline(pr.values);
  if (n >= 3) pr.radius = 3.0 * std::sqrt(4.0 * M_PI / double(pr.values.size()));
  auto f = PhiPtr(new HomogeneousFunction(std::move(G), std::move(pr), 1.0));
  const_cast<HomogeneousFunction&>(*f).finalize();
  return f;
}

PhiPtr HomogeneousFunction::profile(GeneratorPtr G, const std::function<double(const Vec&)>& f_on_SL,
                                    int resolution) {
  const int n = G->dim();
  if (n > 3) throw DomainError("profile variant supports n <= 3");
  if (resolution <= 0) resolution = default_resolution(n);
  auto nodes = sphere_samples(n, resolution);
  std::vector<double> values;
  values.reserve(nodes.size());
  for (const auto& u : nodes) values.push_back(f_on_SL(G->lyapunov_isqrt() * u));
  return profile_values(std::move(G), std::move(nodes), std::move(values));
}

PhiPtr HomogeneousFunction::profile_from(const HomogeneousFunction& phi, int resolution) {
  return profile(phi.generator_ptr(), [&](const Vec& xb) { return phi.on_sphere(xb); }, resolution);
}

PhiPtr HomogeneousFunction::scaled(double a) const {
  auto f = PhiPtr(new HomogeneousFunction(G_, variant_, scale_ * a));
  const_cast<HomogeneousFunction&>(*f).finalize();
  return f;
}

double HomogeneousFunction::raw(const Vec& x) const {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, QuadraticForm>) {
          return x.dot(v.Q * x);
        } else if constexpr (std::is_same_v<T, HomogeneousPolynomial>) {
          double s = 0.0;
          for (const auto& t : v.terms) {
            double m = t.coef;
            for (std::size_t i = 0; i < t.exps.size(); ++i)
              if (t.exps[i]) m *= std::pow(x(i), t.exps[i]);
            s += m;
          }
          return s;
        } else if constexpr (std::is_same_v<T, PNorm>) {
          if (std::isinf(v.p)) return x.cwiseAbs().maxCoeff();
          if (v.p == 1.0) return x.cwiseAbs().sum();
          if (v.p == 2.0) return x.norm();
          double mx = x.cwiseAbs().maxCoeff();
          if (mx == 0.0) return 0.0;
          double s = 0.0;
          for (int i = 0; i < x.size(); ++i) s += std::pow(std::fabs(x(i)) / mx, v.p);
          return mx * std::pow(s, 1.0 / v.p);
        } else if constexpr (std::is_same_v<T, AnisotropicSuperellipse>) {
          double s = 0.0;
          for (int i = 0; i < x.size(); ++i) s += std::pow(std::fabs(x(i)), v.m[i]);
          return std::pow(s, 1.0 / v.q);
        } else {
          if (x.isZero(0.0)) return 0.0;
          Polar p = polar_decompose(*G_, x);
          return p.t * profile_raw(p.xbar);
        }
      },
      variant_);
}

double HomogeneousFunction::profile_raw(const Vec& xbar) const {
  const auto& pr = std::get<Profile>(variant_);
  const int n = dim();
  Vec u = G_->lyapunov_sqrt() * xbar;
  if (n == 1) return u(0) > 0.0 ? pr.values[0] : pr.values[1];
  if (n == 2) {
    const int M = int(pr.values.size());
    const double h = 2.0 * M_PI / M;
    double th = std::atan2(u(1), u(0));
    if (th < 0.0) th += 2.0 * M_PI;
    double pos = th / h;
    int j = int(std::floor(pos));
    double s = pos - j;
    j %= M;
    int j1 = (j + 1) % M;
    double r = 1.0 - s;
    return r * pr.values[j] + s * pr.values[j1] +
           h * h / 6.0 * ((r * r * r - r) * pr.spline_m[j] + (s * s * s - s) * pr.spline_m[j1]);
  }
  u /= u.norm();
  double num = 0.0, den = 0.0;
  double best = INFINITY;
  double nearest = pr.values[0];
  for (std::size_t j = 0; j < pr.nodes.size(); ++j) {
    double d = (u - pr.nodes[j]).norm();
    if (d < best) {
      best = d;
      nearest = pr.values[j];
    }
    double w = wendland(d, pr.radius);
    num += w * pr.values[j];
    den += w;
  }
  return den > 0.0 ? num / den : nearest;
}

double HomogeneousFunction::on_sphere(const Vec& xbar) const {
  if (is_profile()) return scale_ * profile_raw(xbar);
  return scale_ * raw(xbar);
}

double HomogeneousFunction::evaluate(const Vec& x) const {
  if (x.size() != dim()) throw DomainError("evaluate: dimension mismatch");
  if (x.isZero(0.0)) return 0.0;
  return scale_ * raw(x);
}

void HomogeneousFunction::finalize() {
  const int n = dim();
  auto pts = sl_samples(*G_, dense_count(n));
  double mn = INFINITY;
  for (const auto& xb : pts) mn = std::min(mn, on_sphere(xb));
  if (!(mn > 0.0)) throw DomainError("phi is not positive on S_L");
  min_on_sphere_ = mn;
  if (is_profile()) {
    even_ = true;
    for (const auto& xb : pts) {
      double a = on_sphere(xb), b = on_sphere(-xb);
      if (std::fabs(a - b) > 1e-12 * std::max(a, b)) {
        even_ = false;
        break;
      }
    }
  }
  growth_ = growth_bounds(*this);
}

std::string HomogeneousFunction::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, QuadraticForm>) {
          os << "quadratic";
        } else if constexpr (std::is_same_v<T, HomogeneousPolynomial>) {
          os << "polynomial(d=" << v.degree << ")";
        } else if constexpr (std::is_same_v<T, PNorm>) {
          os << "pnorm(p=" << v.p << ")";
        } else if constexpr (std::is_same_v<T, AnisotropicSuperellipse>) {
          os << "superellipse(q=" << v.q << ")";
        } else {
          os << "profile(" << v.values.size() << ")";
        }
      },
      variant_);
  if (scale_ != 1.0) os << "*" << scale_;
  return os.str();
}

bool unit_ball_membership(const HomogeneousFunction& phi, const Vec& x, double r) {
  if (!(r > 0.0)) throw DomainError("ball radius must be positive");
  return phi.evaluate(x) < r;
}

GrowthBounds growth_bounds(const HomogeneousFunction& phi) {
  const auto& G = phi.generator();
  const int n = G.dim();
  const double g = G.gamma(), b = G.beta();
  auto pts = sl_samples(G, n == 1 ? 2 : (n == 2 ? 720 : 1500));
  std::vector<double> fvals;
  fvals.reserve(pts.size());
  for (const auto& xb : pts) fvals.push_back(phi.on_sphere(xb));
  double lo1 = INFINITY, hi1 = 0.0, lo2 = INFINITY, hi2 = 0.0;
  double lo3 = INFINITY, hi3 = 0.0, lo4 = INFINITY, hi4 = 0.0;
  const int nt = 320;
  for (int k = 0; k <= nt; ++k) {
    double t = std::exp(std::log(1e8) * (2.0 * k / nt - 1.0));
    Mat P = G.power(t);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      double r = (P * pts[j]).norm();
      double v = t * fvals[j];
      if (r <= 1.0) {
        double q1 = v / std::pow(r, 1.0 / g), q2 = v / std::pow(r, 1.0 / b);
        lo1 = std::min(lo1, q1), hi1 = std::max(hi1, q1);
        lo2 = std::min(lo2, q2), hi2 = std::max(hi2, q2);
      }
      if (r >= 1.0) {
        double q3 = v / std::pow(r, 1.0 / b), q4 = v / std::pow(r, 1.0 / g);
        lo3 = std::min(lo3, q3), hi3 = std::max(hi3, q3);
        lo4 = std::min(lo4, q4), hi4 = std::max(hi4, q4);
      }
    }
  }
  // A constant ratio is exact; otherwise sampled extremes get a 10% margin.
  auto lower = [](double lo, double hi) { return (hi - lo) <= 1e-12 * hi ? lo : 0.9 * lo; };
  auto upper = [](double lo, double hi) { return (hi - lo) <= 1e-12 * hi ? hi : 1.1 * hi; };
  GrowthBounds gb;
  gb.c1 = lower(lo1, hi1);
  gb.c2 = upper(lo2, hi2);
  gb.c3 = lower(lo3, hi3);
  gb.c4 = upper(lo4, hi4);
  gb.gamma = g;
  gb.beta = b;
  return gb;
}

Sandwich sandwich_smooth(const HomogeneousFunction& phi, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("sandwich: eps must lie in (0, 1)");
  if (!phi.is_profile() || phi.dim() == 1) {
    auto lo = phi.scaled(1.0 - 0.5 * eps);
    auto hi = phi.scaled(1.0 + 0.5 * eps);
    return {lo, hi, (1.0 + 0.5 * eps) / (1.0 - 0.5 * eps)};
  }
  const auto& pr = std::get<Profile>(phi.variant());
  const auto& G = phi.generator();
  const int n = phi.dim();
  const int M = int(pr.values.size());
  std::vector<Vec> xb(M);
  std::vector<double> f(M);
  for (int j = 0; j < M; ++j) {
    xb[j] = G.lyapunov_isqrt() * pr.nodes[j];
    f[j] = phi.on_sphere(xb[j]);
  }
  auto bump = [](double q) { return q < 1.0 ? std::exp(-1.0 / (1.0 - q * q)) : 0.0; };
  auto try_width = [&](double width) -> std::vector<double> {
    std::vector<double> s(M);
    if (n == 2) {
      int K = int(width);
      std::vector<double> w(2 * K + 1);
      double tot = 0.0;
      for (int k = -K; k <= K; ++k) tot += (w[k + K] = bump(double(k) / (K + 1)));
      for (int j = 0; j < M; ++j) {
        double acc = 0.0;
        for (int k = -K; k <= K; ++k) acc += w[k + K] * f[((j + k) % M + M) % M];
        s[j] = acc / tot;
      }
    } else {
      for (int j = 0; j < M; ++j) {
        double acc = 0.0, tot = 0.0;
        for (int k = 0; k < M; ++k) {
          double w = bump((pr.nodes[j] - pr.nodes[k]).norm() / width);
          acc += w * f[k];
          tot += w;
        }
        s[j] = acc / tot;
      }
    }
    return s;
  };
  double width = n == 2 ? M / 8.0 : 1.0;
  const double min_width = n == 2 ? 0.0 : 0.5 * pr.radius;
  for (;;) {
    auto s = try_width(width);
    auto smooth = HomogeneousFunction::profile_values(phi.generator_ptr(), pr.nodes, s);
    double a1 = INFINITY, a2 = 0.0;
    for (int j = 0; j < M; ++j) {
      double q = f[j] / smooth->on_sphere(xb[j]);
      a1 = std::min(a1, q);
      a2 = std::max(a2, q);
    }
    if (a2 <= (1.0 + eps) * a1 || width <= min_width) {
      if (a2 > (1.0 + eps) * a1) throw InternalError("sandwich: no admissible mollifier width");
      return {smooth->scaled(a1), smooth->scaled(a2), a2 / a1};
    }
    width = n == 2 ? std::floor(width / 2.0) : width / 2.0;
  }
}

}  // namespace azeta
