#include <fftw3.h>

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <mutex>

#include "azeta/errors.hpp"
#include "azeta/kernel.hpp"
#include "azeta/parallel.hpp"

namespace azeta {

namespace {

// FFTW planning is not thread-safe.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

constexpr double kOversample = 2.0;

// Axis extents of B_psi(level) from boundary points (level/psi(xbar))^{A_k} xbar.
std::vector<double> level_extent(const Kernel& k, double level, const std::vector<Vec>& pts,
                                 const std::vector<double>& pv) {
  const auto& G = k.natural_generator();
  const int n = G.dim();
  std::vector<double> ext(n, 0.0);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    Vec p = G.power(level / pv[j]) * pts[j];
    for (int d = 0; d < n; ++d) ext[d] = std::max(ext[d], std::fabs(p(d)));
  }
  return ext;
}

// Even part of ghat at y > 0 for n = 1. On each half line psi is c |x|^{1/a}, so the
// integral can be turned onto the ray x = v e^{-i theta}, where the oscillation decays.
double ghat_ray(const Kernel& k, double y) {
  static thread_local boost::math::quadrature::exp_sinh<double> es;
  const double a = k.natural_generator().entries()(0, 0);
  const double th = std::min(M_PI / 4.0, a * M_PI / 4.0);
  const double pp = k.psi(Vec::Constant(1, 1.0)), pm = k.psi(Vec::Constant(1, -1.0));
  const bool power = k.form() == KernelForm::PowerExp && k.param() != 0.0;
  const double c = k.param();
  const cplx rot = std::polar(1.0, -th), arg = std::polar(1.0, -th / a);
  const double w = 2.0 * M_PI * y;
  auto prof = [&](cplx u) { return power ? std::exp(c * std::log(u) - u) : std::exp(-u); };
  auto f = [&](double v) -> cplx {
    if (v <= 0.0) return 0.0;
    cplx u = std::pow(v, 1.0 / a) * arg;
    cplx h = prof(pp * u) + prof(pm * u);
    if (!std::isfinite(h.real()) || !std::isfinite(h.imag())) return 0.0;
    return h * std::exp(cplx(0.0, -w) * (v * rot)) * rot;
  };
  double err = 0.0;
  cplx I = es.integrate(f, 1e-14, &err);
  return I.real();
}

}  // namespace

double SampledTransform::Far::eval(double r, double tau) const {
  // barycentric Chebyshev interpolation in u = log r
  const double u = std::log(r);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    double d = u - nodes[j];
    if (d == 0.0) return values[j] * std::pow(r, -tau);
    double q = weights[j] / d;
    num += q * values[j];
    den += q;
  }
  return num / den * std::pow(r, -tau);
}

double SampledTransform::oob_bound(double r) const {
  if (far_ && r <= far_->hi) return far_->error * std::pow(r, -tau_);
  return D_ * std::pow(r, -tau_);
}

double SampledTransform::Grid::eval(const Vec& y) const {
  const int S = 2 * spread;
  double wbuf[3][64];
  std::int64_t ibuf[3][64];
  double norm = 1.0;
  for (int d = 0; d < n; ++d) {
    const double dphi = 2.0 * M_PI / Mr[d];
    double th = 2.0 * M_PI * h * y(d);
    th -= 2.0 * M_PI * std::floor(th / (2.0 * M_PI));
    std::int64_t m0 = std::int64_t(std::floor(th / dphi));
    const double inv4t = 1.0 / (4.0 * tau[d]);
    for (int k = 0; k < S; ++k) {
      std::int64_t m = m0 - spread + 1 + k;
      double diff = th - dphi * double(m);
      wbuf[d][k] = std::exp(-diff * diff * inv4t);
      std::int64_t idx = m % Mr[d];
      if (idx < 0) idx += Mr[d];
      ibuf[d][k] = idx;
    }
    norm /= Mr[d];
  }
  std::complex<double> acc = 0.0;
  if (n == 1) {
    for (int k = 0; k < S; ++k) acc += wbuf[0][k] * H[ibuf[0][k]];
  } else if (n == 2) {
    for (int a = 0; a < S; ++a) {
      std::complex<double> row = 0.0;
      const std::complex<double>* base = H.data() + ibuf[0][a] * Mr[1];
      for (int b = 0; b < S; ++b) row += wbuf[1][b] * base[ibuf[1][b]];
      acc += wbuf[0][a] * row;
    }
  } else {
    for (int a = 0; a < S; ++a) {
      std::complex<double> plane = 0.0;
      for (int b = 0; b < S; ++b) {
        std::complex<double> row = 0.0;
        const std::complex<double>* base = H.data() + (ibuf[0][a] * Mr[1] + ibuf[1][b]) * Mr[2];
        for (int c = 0; c < S; ++c) row += wbuf[2][c] * base[ibuf[2][c]];
        plane += wbuf[1][b] * row;
      }
      acc += wbuf[0][a] * plane;
    }
  }
  return (acc * norm).real();
}

double SampledTransform::evaluate_raw(const Vec& y) const { return grid_->eval(y); }

double SampledTransform::evaluate(const Vec& y) const {
  double r = y.norm();
  if (r > band_) return far_ && r <= far_->hi ? far_->eval(r, tau_) : 0.0;
  return grid_->eval(y);
}

double SampledTransform::error_at(const Vec& y) const {
  double r = y.norm();
  if (r <= band_) return in_band_error();
  return oob_bound(r);
}

SampledTransform fourier_transform(const Kernel& k, const TransformOptions& opt) {
  const auto& G = k.natural_generator();
  const int n = G.dim();
  if (n > 3) throw BudgetExceeded("fourier_transform: dimension above 3", INFINITY);
  const double target = opt.target;
  const double band_req = opt.band > 0.0 ? opt.band : (n == 1 ? 100.0 : (n == 2 ? 12.0 : 4.0));
  const int spread = opt.spread > 0 ? std::min(opt.spread, 32) : (n <= 2 ? 16 : 12);

  auto pts = sl_samples(G, n == 1 ? 2 : (n == 2 ? 2048 : 3000));
  std::vector<double> pv;
  for (const auto& xb : pts) pv.push_back(k.psi_on_sphere(xb));

  // Tail outside B_psi(u) is at most alpha_k |B_psi| * int_u^inf |G| v^{alpha_k - 1}.
  const double alpha_k = G.alpha();
  double vol_bound = 1.0;
  for (double e : level_extent(k, 1.0, pts, pv)) vol_bound *= 2.1 * e;
  auto tail = [&](double u) { return alpha_k * vol_bound * k.profile_tail_moment(alpha_k, u); };
  double u = std::max(1.0, k.form() == KernelForm::PowerExp ? k.param() : 0.0);
  while (tail(u) > 0.5 * target && u < 1e4) u *= 1.1;
  const double tail_err = tail(u);
  std::vector<double> R = level_extent(k, u, pts, pv);
  for (auto& r : R) r *= 1.02;

  SampledTransform out;
  out.n_ = n;
  out.tail_error_ = tail_err;

  double hf = 1.0 / (4.0 * band_req);
  std::shared_ptr<SampledTransform::Grid> fine;
  double quad_err = INFINITY;
  std::vector<double> samples;
  std::vector<int> Mf;
  for (int attempt = 0;; ++attempt) {
    std::vector<int> M(n);
    double total = 1.0;
    for (int d = 0; d < n; ++d) {
      M[d] = 2 * int(std::ceil(R[d] / hf)) + 4;
      total *= kOversample * M[d];
    }
    if (total > opt.max_points) {
      if (!fine && hf < 0.125) {
        // wide kernels: start from a coarser grid, the resolved band shrinks accordingly
        hf *= 1.25;
        --attempt;
        continue;
      }
      if (!fine) throw BudgetExceeded("fourier_transform: grid exceeds point budget", INFINITY);
      if (opt.strict) throw BudgetExceeded("fourier_transform: accuracy target unreachable", quad_err);
      out.target_met_ = false;
      break;
    }
    // g on the fine grid, row-major, index j_d + M_d/2.
    std::int64_t count = 1;
    for (int d = 0; d < n; ++d) count *= M[d];
    std::vector<double> vals(count);
    std::int64_t inner = count / M[0];
    parallel_for(M[0], [&](std::int64_t i0) {
      Vec x(n);
      std::vector<int> j(n);
      for (std::int64_t r = 0; r < inner; ++r) {
        std::int64_t lin = i0 * inner + r;
        std::int64_t rem = lin;
        for (int d = n - 1; d >= 0; --d) {
          j[d] = int(rem % M[d]) - M[d] / 2;
          rem /= M[d];
        }
        for (int d = 0; d < n; ++d) x(d) = j[d] * hf;
        vals[lin] = k.evaluate(x);
      }
    });

    auto build = [&](double h, const std::vector<int>& Mg, int stride) {
      auto g = std::make_shared<SampledTransform::Grid>();
      g->n = n;
      g->h = h;
      g->M = Mg;
      g->spread = spread;
      std::int64_t tot = 1;
      for (int d = 0; d < n; ++d) {
        g->Mr.push_back(int(kOversample * Mg[d]));
        g->tau.push_back(M_PI * spread / (double(Mg[d]) * Mg[d] * kOversample * (kOversample - 0.5)));
        tot *= g->Mr[d];
      }
      g->H.assign(tot, 0.0);
      std::int64_t cnt = 1;
      for (int d = 0; d < n; ++d) cnt *= Mg[d];
      double hn = std::pow(h, n);
      double abs_sum = 0.0;
      std::vector<int> j(n);
      for (std::int64_t lin = 0; lin < cnt; ++lin) {
        std::int64_t rem = lin;
        for (int d = n - 1; d >= 0; --d) {
          j[d] = int(rem % Mg[d]) - Mg[d] / 2;
          rem /= Mg[d];
        }
        // position in the fine sample array
        std::int64_t src = 0;
        for (int d = 0; d < n; ++d) src = src * M[d] + (j[d] * stride + M[d] / 2);
        double a = hn * vals[src];
        abs_sum += std::fabs(a);
        double fac = 1.0;
        std::int64_t dst = 0;
        for (int d = 0; d < n; ++d) {
          fac *= std::exp(double(j[d]) * j[d] * g->tau[d]) * std::sqrt(M_PI / g->tau[d]);
          int m = j[d] % g->Mr[d];
          if (m < 0) m += g->Mr[d];
          dst = dst * g->Mr[d] + m;
        }
        g->H[dst] = a * fac;
      }
      g->abs_sum = abs_sum;
      std::vector<int> dims(g->Mr.begin(), g->Mr.end());
      fftw_plan plan;
      {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        plan = fftw_plan_dft(n, dims.data(), reinterpret_cast<fftw_complex*>(g->H.data()),
                             reinterpret_cast<fftw_complex*>(g->H.data()), FFTW_FORWARD, FFTW_ESTIMATE);
      }
      fftw_execute(plan);
      {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(plan);
      }
      return g;
    };

    auto gf = build(hf, M, 1);
    std::vector<int> Mc(n);
    for (int d = 0; d < n; ++d) Mc[d] = M[d] / 2;
    auto gc = build(2.0 * hf, Mc, 2);

    // Richardson-style comparison on the coarse band.
    const double Yc = 1.0 / (4.0 * 2.0 * hf);
    std::vector<Vec> probes;
    probes.push_back(Vec::Zero(n));
    for (int d = 0; d < n; ++d)
      for (double f : {0.1, 0.25, 0.5, 0.75, 1.0}) {
        Vec y = Vec::Zero(n);
        y(d) = f * Yc;
        probes.push_back(y);
      }
    CounterRng rng{0x7a11ULL + std::uint64_t(attempt)};
    for (int p = 0; p < 40; ++p) {
      Vec y(n);
      for (int d = 0; d < n; ++d) y(d) = (2.0 * rng.uniform(p * n + d) - 1.0) * Yc / std::sqrt(double(n));
      probes.push_back(y);
    }
    double diff = 0.0;
    for (const auto& y : probes) diff = std::max(diff, std::fabs(gf->eval(y) - gc->eval(y)));
    fine = gf;
    quad_err = diff;
    samples = std::move(vals);
    Mf = M;
    out.h_ = hf;
    // Below ~1e-15 of the L1 mass the comparison only sees rounding.
    const double goal = std::max(target, 1e-15 * gf->abs_sum);
    if (diff <= 0.5 * goal || attempt >= 6) {
      out.target_met_ = diff <= 0.5 * goal;
      if (!out.target_met_ && opt.strict)
        throw BudgetExceeded("fourier_transform: accuracy target unreachable", diff);
      break;
    }
    hf *= 0.5;
  }

  // Spot-check the interpolation against the direct trapezoid sum.
  double nufft_diff = 0.0;
  {
    const double Yf = 1.0 / (4.0 * out.h_);
    CounterRng rng{0xd1ff7ULL};
    std::int64_t count = std::int64_t(samples.size());
    double hn = std::pow(out.h_, n);
    for (int p = 0; p < 6; ++p) {
      Vec y(n);
      for (int d = 0; d < n; ++d) y(d) = p == 0 ? 0.0 : (2.0 * rng.uniform(p * n + d) - 1.0) * Yf / std::sqrt(double(n));
      std::vector<double> part(64, 0.0);
      parallel_for(64, [&](std::int64_t b) {
        std::int64_t lo = count * b / 64, hi = count * (b + 1) / 64;
        // Extended precision keeps the phase j h y accurate for large |j|.
        long double s = 0.0L;
        std::vector<int> j(n);
        for (std::int64_t lin = lo; lin < hi; ++lin) {
          std::int64_t rem = lin;
          long double ph = 0.0L;
          for (int d = n - 1; d >= 0; --d) {
            j[d] = int(rem % Mf[d]) - Mf[d] / 2;
            rem /= Mf[d];
            ph += (long double)j[d] * (long double)out.h_ * (long double)y(d);
          }
          ph -= std::floor(ph);
          s += (long double)samples[lin] * std::cos(2.0L * 3.141592653589793238462643383279503L * ph);
        }
        part[b] = double(s);
      });
      double direct = 0.0;
      for (double s : part) direct += s;
      direct *= hn;
      nufft_diff = std::max(nufft_diff, std::fabs(direct - fine->eval(y)));
    }
  }
  out.grid_ = fine;
  out.quad_error_ = quad_err;
  out.nufft_error_ = std::max(2.0 * nufft_diff, 4e-16 * fine->abs_sum);
  out.R_.resize(n);
  for (int d = 0; d < n; ++d) out.R_[d] = 0.5 * Mf[d] * out.h_;
  out.grid_band_ = 1.0 / (4.0 * out.h_);
  out.value_at_zero_ = fine->eval(Vec::Zero(n));

  // Resolved band: stop where the transform sinks into the error floor.
  const double noise = out.in_band_error();
  const double threshold = 100.0 * noise;
  auto dirs = sphere_samples(n, n == 1 ? 2 : (n == 2 ? 32 : 64));
  const int nr = 64;
  std::vector<double> env(nr + 1, 0.0);
  for (int i = 1; i <= nr; ++i) {
    double r = out.grid_band_ * i / nr;
    for (const auto& u : dirs) env[i] = std::max(env[i], std::fabs(fine->eval(r * u)));
  }
  int last = 0;
  for (int i = 1; i <= nr; ++i)
    if (env[i] >= threshold) last = i;
  int bi = std::max(1, std::min(nr, last + 1));
  out.band_ = out.grid_band_ * bi / nr;
  out.tau_ = k.transform_decay_order();
  double D = 0.0;
  for (int i = 1; i <= nr; ++i) {
    double r = out.grid_band_ * i / nr;
    if (r < 0.5 * out.band_ || r > out.band_) continue;
    D = std::max(D, 2.0 * env[i] * std::pow(r, out.tau_));
  }
  D = std::max(D, threshold * std::pow(out.band_, out.tau_));
  out.D_ = D;

  if (n == 1) {
    // The grid floor hides the tail beyond the band; tabulate it on the rotated ray.
    auto far = std::make_shared<SampledTransform::Far>();
    far->lo = out.band_;
    far->hi = 64.0 * out.band_;
    const int N = 48;
    const double u0 = std::log(far->lo), u1 = std::log(far->hi);
    far->nodes.resize(N);
    far->values.resize(N);
    far->weights.resize(N);
    std::vector<double> check(N - 1), exact(N - 1);
    for (int j = 0; j < N; ++j) {
      double x = std::cos(M_PI * (j + 0.5) / N);
      far->nodes[j] = 0.5 * (u0 + u1) + 0.5 * (u1 - u0) * x;
      far->weights[j] = (j % 2 ? -1.0 : 1.0) * std::sin(M_PI * (j + 0.5) / N);
    }
    for (int j = 0; j + 1 < N; ++j) check[j] = 0.5 * (far->nodes[j] + far->nodes[j + 1]);
    parallel_for(2 * N - 1, [&](std::int64_t i) {
      if (i < N) {
        double r = std::exp(far->nodes[i]);
        far->values[i] = ghat_ray(k, r) * std::pow(r, out.tau_);
      } else {
        double r = std::exp(check[i - N]);
        exact[i - N] = ghat_ray(k, r) * std::pow(r, out.tau_);
      }
    });
    double dev = 0.0, peak = 0.0;
    for (int j = 0; j + 1 < N; ++j) {
      double r = std::exp(check[j]);
      dev = std::max(dev, std::fabs(far->eval(r, out.tau_) * std::pow(r, out.tau_) - exact[j]));
    }
    for (double v : far->values) peak = std::max(peak, std::fabs(v));
    far->error = 2.0 * dev + 1e-12 * peak;
    // Beyond the table: twice the largest scaled value near its end.
    double D2 = 0.0;
    for (int j = 0; j < N; ++j)
      if (far->nodes[j] >= u1 - 0.5) D2 = std::max(D2, 2.0 * std::fabs(far->values[j]));
    out.D_ = std::max(D2, far->error);
    out.far_ = far;
  }
  return out;
}

}  // namespace azeta
