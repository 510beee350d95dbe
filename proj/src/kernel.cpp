#include "azeta/kernel.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <sstream>

#include "azeta/errors.hpp"
#include "azeta/volume.hpp"

namespace azeta {

Kernel::Kernel(PhiPtr phi, KernelForm form, double param) : phi_(std::move(phi)), form_(form), param_(param) {
  const auto& gb = phi_->growth();
  if (form_ == KernelForm::ExpPower && param_ != 1.0) {
    Gk_ = std::make_shared<GeneratorMatrix>(phi_->generator().scaled(1.0 / param_));
    double b = param_;
    psi_growth_ = {std::pow(gb.c1, b), std::pow(gb.c2, b), std::pow(gb.c3, b),
                   std::pow(gb.c4, b), gb.gamma / b,        gb.beta / b};
  } else {
    Gk_ = phi_->generator_ptr();
    psi_growth_ = gb;
  }
  const int n = phi_->dim();
  for (double s : {64.0, 32.0, 16.0, double(2 * n + 4)}) {
    if (std::isfinite(decay_norm(s))) {
      sigma_ = s;
      break;
    }
  }
  if (sigma_ == 0.0) throw DomainError("kernel decay could not be certified");
}

Kernel Kernel::exp_power(PhiPtr phi, double b) {
  if (!(b > 0.0)) throw DomainError("ExpPower exponent b must be positive");
  return Kernel(std::move(phi), KernelForm::ExpPower, b);
}

Kernel Kernel::power_exp(PhiPtr phi, double c) {
  if (!(c >= 0.0)) throw DomainError("PowerExp exponent c must be nonnegative");
  return Kernel(std::move(phi), KernelForm::PowerExp, c);
}

double Kernel::profile(double u) const {
  if (form_ == KernelForm::ExpPower) return std::exp(-u);
  if (param_ == 0.0) return std::exp(-u);
  if (u <= 0.0) return 0.0;
  if (!std::isfinite(u)) return 0.0;
  return std::exp(param_ * std::log(u) - u);
}

double Kernel::profile_sup(double u) const {
  if (form_ == KernelForm::PowerExp && u < param_) return profile(param_);
  return profile(std::max(u, 0.0));
}

double Kernel::profile_tail_moment(double a, double u) const {
  double s = form_ == KernelForm::PowerExp ? a + param_ : a;
  if (u <= 0.0) return std::tgamma(s);
  return boost::math::tgamma(s, u);
}

double Kernel::profile_moment(double a) const {
  return std::tgamma(form_ == KernelForm::PowerExp ? a + param_ : a);
}

double Kernel::psi(const Vec& x) const {
  double v = phi_->evaluate(x);
  return form_ == KernelForm::ExpPower && param_ != 1.0 ? std::pow(v, param_) : v;
}

double Kernel::psi_on_sphere(const Vec& xbar) const {
  double v = phi_->on_sphere(xbar);
  return form_ == KernelForm::ExpPower && param_ != 1.0 ? std::pow(v, param_) : v;
}

double Kernel::evaluate(const Vec& x) const { return profile(psi(x)); }

double Kernel::value_at_origin() const { return profile(0.0); }

double Kernel::psi_lower(double r) const {
  const auto& g = psi_growth_;
  if (r >= 1.0) return g.c3 * std::pow(r, 1.0 / g.beta);
  return std::min(g.c1 * std::pow(r, 1.0 / g.gamma), g.c3);
}

double Kernel::decay_norm(double sigma) const {
  const auto& G = *Gk_;
  const int n = G.dim();
  auto pts = sl_samples(G, n == 1 ? 2 : (n == 2 ? 256 : 500));
  std::vector<double> pv;
  for (const auto& xb : pts) pv.push_back(psi_on_sphere(xb));
  // t range chosen so that t * psi covers [1e-4, 1e6] on every sample
  double pmin = *std::min_element(pv.begin(), pv.end()), pmax = *std::max_element(pv.begin(), pv.end());
  if (!(pmin > 0.0)) return INFINITY;
  const double lt0 = std::log(1e-4 / pmax), lt1 = std::log(1e6 / pmin);
  const int nt = 400 + int(20.0 * std::log(pmax / pmin));
  double best = 0.0;
  int best_k = 0;
  for (int k = 0; k <= nt; ++k) {
    double t = std::exp(lt0 + (lt1 - lt0) * k / nt);
    Mat P = G.power(t);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      double r = (P * pts[j]).norm();
      double gv = std::fabs(profile(t * pv[j]));
      if (gv == 0.0) continue;
      double v = gv + std::exp(std::log(gv) + sigma * std::log(r));
      if (v > best) best = v, best_k = k;
    }
  }
  if (best_k >= nt - 4 || !std::isfinite(best)) return INFINITY;
  return 1.1 * best;
}

double Kernel::transform_decay_order() const {
  const auto& G = phi_->generator();
  return (G.alpha() + param_) / G.beta();
}

std::string Kernel::describe() const {
  std::ostringstream os;
  os << (form_ == KernelForm::ExpPower ? "exp_power(b=" : "power_exp(c=") << param_ << ")";
  return os.str();
}

double ghat_zero_closed_form(const HomogeneousFunction& phi, double a, double volume) {
  if (!(a > 0.0)) throw DomainError("ghat_zero_closed_form: a must be positive");
  double al = phi.alpha();
  return std::pow(a, -al) * std::tgamma(al + 1.0) * volume;
}

double ghat_zero_closed_form(const HomogeneousFunction& phi, double a) {
  return ghat_zero_closed_form(phi, a, volume_exp_integral(phi).real());
}

BoundedValue ghat_zero_direct(const Kernel& k) {
  if (k.form() == KernelForm::ExpPower) {
    double b = k.param();
    return integrate_composed(k.base(), [b](double u) { return std::exp(-std::pow(u, b)); });
  }
  return integrate_composed(k.base(), [&k](double u) { return k.profile(u); });
}

}  // namespace azeta
