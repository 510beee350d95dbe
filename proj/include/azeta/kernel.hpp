#pragma once

#include <memory>
#include <vector>

#include "azeta/homog.hpp"
#include "azeta/types.hpp"

namespace azeta {

enum class KernelForm { ExpPower, PowerExp };

// g = G(psi(x)) where psi is homogeneous for the kernel's natural generator:
//   ExpPower(b): psi = phi^b, G(u) = e^{-u}, generator A/b
//   PowerExp(c): psi = phi,   G(u) = u^c e^{-u}, generator A
class Kernel {
 public:
  static Kernel exp_power(PhiPtr phi, double b);
  static Kernel power_exp(PhiPtr phi, double c);

  double evaluate(const Vec& x) const;
  double value_at_origin() const;

  KernelForm form() const { return form_; }
  double param() const { return param_; }
  const HomogeneousFunction& base() const { return *phi_; }
  PhiPtr base_ptr() const { return phi_; }

  double profile(double u) const;
  // sup over v >= u of |G(v)|
  double profile_sup(double u) const;
  // integral over [u, inf) of |G(v)| v^{a-1}
  double profile_tail_moment(double a, double u) const;
  // integral over (0, inf) of G(v) v^{a-1}
  double profile_moment(double a) const;
  double psi(const Vec& x) const;
  double psi_on_sphere(const Vec& xbar) const;

  const GeneratorMatrix& natural_generator() const { return *Gk_; }
  GeneratorPtr natural_generator_ptr() const { return Gk_; }
  // Growth constants of psi relative to the natural generator.
  const GrowthBounds& psi_growth() const { return psi_growth_; }
  // Lower bound for psi over all x with |x| >= r.
  double psi_lower(double r) const;

  // Largest sigma with sup |g|(1 + |x|^sigma) finite, confirmed by sampling.
  double decay_sigma() const { return sigma_; }
  // Sampled ||g||_sigma with a 10% margin.
  double decay_norm(double sigma) const;
  // Fourier decay order of the singular part: (alpha + p) / beta.
  double transform_decay_order() const;
  std::string describe() const;

 private:
  Kernel(PhiPtr phi, KernelForm form, double param);
  PhiPtr phi_;
  KernelForm form_;
  double param_;
  GeneratorPtr Gk_;
  GrowthBounds psi_growth_{};
  double sigma_ = 0.0;
};

// a^{-alpha} Gamma(alpha+1) |B_phi| with |B_phi| supplied or taken from volume_exp_integral.
double ghat_zero_closed_form(const HomogeneousFunction& phi, double a);
double ghat_zero_closed_form(const HomogeneousFunction& phi, double a, double volume);
// Integral of g by real-space quadrature.
BoundedValue ghat_zero_direct(const Kernel& k);

struct TransformOptions {
  double target = 1e-13;      // absolute accuracy goal for tail and quadrature
  double band = 0.0;          // requested resolved band; 0 picks a dimension default
  double max_points = 1 << 23;  // cap on oversampled grid size
  int spread = 0;             // Gaussian spreading half-width; 0 picks a default
  bool strict = false;        // throw BudgetExceeded instead of returning a weaker result
};

// Numerical Fourier transform ghat(y) = integral g(x) e^{-2 pi i <x,y>} dx.
class SampledTransform {
 public:
  int dim() const { return n_; }
  double spacing() const { return h_; }
  const std::vector<double>& extent() const { return R_; }
  double band() const { return band_; }
  double grid_band() const { return grid_band_; }
  double tail_error() const { return tail_error_; }
  double quad_error() const { return quad_error_; }
  double nufft_error() const { return nufft_error_; }
  double in_band_error() const { return tail_error_ + quad_error_ + nufft_error_; }
  double value_at_zero() const { return value_at_zero_; }
  double decay_order() const { return tau_; }
  double decay_constant() const { return D_; }
  bool target_met() const { return target_met_; }

  bool in_band(const Vec& y) const { return y.norm() <= band_; }
  // Radius up to which values beyond the band are still tabulated (n = 1 only).
  double far_limit() const { return far_ ? far_->hi : band_; }
  // Interpolated transform; zero outside the band and the far table.
  double evaluate(const Vec& y) const;
  // Grid transform regardless of the band (for diagnostics).
  double evaluate_raw(const Vec& y) const;
  double error_at(const Vec& y) const;
  // Error of evaluate() beyond the band.
  double oob_bound(double r) const;

 private:
  friend SampledTransform fourier_transform(const Kernel& k, const TransformOptions& opt);
  struct Grid {
    int n = 0;
    double h = 0.0;
    std::vector<int> M, Mr;
    std::vector<double> tau;
    int spread = 0;
    std::vector<std::complex<double>> H;
    double abs_sum = 0.0;
    double eval(const Vec& y) const;
  };
  // Chebyshev table of r^tau ghat(r) in log r on [band, hi].
  struct Far {
    double lo = 0.0, hi = 0.0;
    std::vector<double> nodes, values, weights;
    double error = 0.0;  // bound on |r^tau (table - ghat)|
    double eval(double r, double tau) const;
  };
  int n_ = 0;
  double h_ = 0.0;
  std::vector<double> R_;
  double band_ = 0.0, grid_band_ = 0.0;
  double tail_error_ = 0.0, quad_error_ = 0.0, nufft_error_ = 0.0;
  double value_at_zero_ = 0.0;
  double tau_ = 0.0, D_ = 0.0;
  bool target_met_ = true;
  std::shared_ptr<const Grid> grid_;
  std::shared_ptr<const Far> far_;
};

SampledTransform fourier_transform(const Kernel& k, const TransformOptions& opt = {});

}  // namespace azeta
