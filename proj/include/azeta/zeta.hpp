#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "azeta/homog.hpp"
#include "azeta/kernel.hpp"
#include "azeta/theta.hpp"
#include "azeta/types.hpp"

namespace azeta {

struct PoleInfo {
  double location = 0.0;
  double distance = 0.0;
  double residue = 0.0;
  cplx constant{0.0, 0.0};  // limit of zeta(s) - residue / (s - alpha)
};

struct MeromorphicValue {
  cplx s{0.0, 0.0};
  cplx value{0.0, 0.0};
  double error = 0.0;
  Rigor kind = Rigor::heuristic;
  std::optional<PoleInfo> near_pole;
  std::string method;
};

struct ZetaOptions {
  double c = 0.0;            // PowerExp exponent; 0 picks max(beta n + 1, alpha + k_max + 2), rounded up to even
  int k_max = 5;             // deepest negative integer the default c must reach
  double b = 0.0;            // ExpPower exponent for the s = 0 evaluation; 0 picks a smooth choice
  double rel_target = 1e-12;  // quadrature goal relative to |Gamma(s + c)|
  double band = 0.0;         // transform band; 0 picks the dimension default
  double direct_budget = 0.0;  // lattice points for the direct sum; 0 picks the dimension default
};

double default_power_exp(const HomogeneousFunction& phi, int k_max);
double default_exp_power(const HomogeneousFunction& phi);

// Half-open interval of Re s (in the variable of zeta(phi, s)) where both xi+ terms are certified.
struct Strip {
  double lo, hi;
};

struct FunctionalResidual {
  cplx lhs, rhs;
  double residual = 0.0;
  double bound = 0.0;
  Rigor kind = Rigor::heuristic;
};

// Holds the kernel, its sampled transform and theta caches for one phi; safe to
// share between threads.
class ZetaEngine {
 public:
  explicit ZetaEngine(PhiPtr phi, ZetaOptions opt = {}, KernelForm form = KernelForm::PowerExp);

  const HomogeneousFunction& phi() const { return *phi_; }
  const Kernel& kernel() const { return kernel_; }
  const ZetaOptions& options() const { return opt_; }
  const SampledTransform& transform() const;
  // integral of g by real-space quadrature
  const BoundedValue& ghat_zero() const;
  const BoundedValue& volume() const;
  Strip strip() const;

  MeromorphicValue direct(cplx s) const;
  MeromorphicValue continued(cplx s) const;

  // In the kernel variable: g-side integral over [1, inf) and the dual one.
  BoundedValue xi_plus(cplx s) const;
  BoundedValue xi_plus_dual(cplx s) const;
  BoundedValue theta_star(double t) const;
  BoundedValue theta_star_dual(double t) const;

  // Both sides of xi(g, s) = xi_T(ghat, alpha - s), each assembled from a split at t0
  // and the opposite split at 1 / t0 (kernel variable).
  FunctionalResidual functional_equation(cplx s, double t0 = 0.25) const;

 private:
  struct DirectPoint {
    double phi;
    long sup;
  };
  std::shared_ptr<const std::vector<DirectPoint>> direct_points(double rmax) const;
  BoundedValue mellin_tail(bool dual, cplx p, double L, double tol) const;
  cplx smoothing_integral(cplx s) const;
  cplx s_kernel(cplx s) const;
  double alpha_k() const;
  cplx gamma_factor_inv(cplx sk) const;
  void check_strip(cplx s) const;

  PhiPtr phi_;
  ZetaOptions opt_;
  Kernel kernel_;
  std::unique_ptr<PsiShells> shells_;
  GeneratorMatrix dual_;

  mutable std::once_flag transform_once_, ghat_once_, vol_once_;
  mutable std::unique_ptr<SampledTransform> khat_;
  mutable BoundedValue ghat0_, vol_;
  mutable std::mutex theta_mu_, dual_mu_, direct_mu_;
  mutable std::map<double, BoundedValue> theta_cache_, dual_cache_;
  mutable std::shared_ptr<const std::vector<DirectPoint>> direct_cache_;
  mutable double direct_r_ = 0.0;
};

MeromorphicValue zeta_direct(const HomogeneousFunction& phi, cplx s);
MeromorphicValue zeta_direct(PhiPtr phi, cplx s);
MeromorphicValue zeta_continued(PhiPtr phi, cplx s, const ZetaOptions& opt = {});
// integral over [1, inf) of theta*_G(g, t) t^{s-1} dt
BoundedValue xi_plus(const GeneratorMatrix& G, const Kernel& k, cplx s, double abs_tol = 1e-12);
// Average of the ExpPower continuation at s = +-1e-3.
MeromorphicValue zeta_at_zero(PhiPtr phi, double b = 0.0);
MeromorphicValue zeta_at_zero(const ZetaEngine& exp_power_engine);
// ghat(0) / Gamma(alpha + c) for PowerExp(c), by real-space quadrature.
BoundedValue residue_at_alpha(const HomogeneousFunction& phi, double c = 0.0);
MeromorphicValue zeta_negative_integers(PhiPtr phi, int k);

struct GrowthRow {
  cplx s;
  double modulus;  // |Gamma(s) zeta(phi, s)|
  double error;
};

struct GrowthReport {
  double re_s = 0.0;
  double eps = 0.0;
  std::vector<GrowthRow> rows;
  double rate = 0.0;  // fitted decay rate of log|Gamma zeta| in |Im s|
  double required = 0.0;
  bool pass = false;
};

// Evaluates on Re s = re_s at the given heights (|Im s| >= 1), by the direct sum
// when re_s > alpha and the continuation otherwise.
GrowthReport growth_scan(const ZetaEngine& eng, double re_s, const std::vector<double>& heights, double eps);

}  // namespace azeta
