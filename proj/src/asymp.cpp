#include "azeta/asymp.hpp"

#include <algorithm>
#include <cmath>

#include "azeta/errors.hpp"
#include "azeta/parallel.hpp"
#include "azeta/special.hpp"
#include "azeta/theta.hpp"

namespace azeta {

ExpansionTable expansion_table(const ZetaEngine& eng, int N) {
  if (N < 0) throw DomainError("expansion order must be nonnegative");
  ExpansionTable tab;
  tab.alpha = eng.phi().alpha();
  tab.volume = eng.volume();
  tab.zeta_neg.resize(N);
  parallel_for(N, [&](std::int64_t i) { tab.zeta_neg[i] = eng.continued(cplx(-double(i + 1), 0.0)); });
  return tab;
}

Expansion theta_expansion(const ExpansionTable& tab, cplx w, int N) {
  if (!(w.real() > 0.0)) throw DomainError("theta_expansion: Re w must be positive");
  if (N > int(tab.zeta_neg.size())) throw DomainError("theta_expansion: table too short for N");
  Expansion e;
  const double g = std::tgamma(tab.alpha + 1.0);
  cplx wa = std::pow(w, -tab.alpha);
  e.leading = g * tab.volume.value * wa;
  e.value = e.leading;
  e.error = g * tab.volume.error * std::abs(wa);
  double fact = 1.0;
  cplx wk = 1.0;
  for (int k = 1; k <= N; ++k) {
    fact *= k;
    wk *= w;
    const auto& z = tab.zeta_neg[k - 1];
    double sign = (k % 2) ? -1.0 : 1.0;
    cplx t = sign * z.value / fact * wk;
    e.terms.push_back(t);
    e.value += t;
    e.error += z.error / fact * std::abs(wk);
  }
  return e;
}

Expansion theta_expansion(const ZetaEngine& eng, cplx w, int N) {
  return theta_expansion(expansion_table(eng, N), w, N);
}

RemainderReport remainder_check(const ZetaEngine& eng, double angle, int N, double eps,
                                const std::vector<double>& moduli, double delta) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("remainder_check: eps must lie in (0, 1)");
  if (!(delta > 0.0 && delta < M_PI / 2.0)) throw DomainError("remainder_check: delta must lie in (0, pi/2)");
  if (std::fabs(angle) > M_PI / 2.0 - delta) throw DomainError("remainder_check: ray angle outside the sector");
  if (moduli.size() < 3) throw DomainError("remainder_check: need at least three moduli");
  RemainderReport rep;
  rep.angle = angle;
  rep.N = N;
  rep.eps = eps;
  rep.required = N + 1 - eps - 0.15;
  auto tab = expansion_table(eng, N);
  rep.rows.resize(moduli.size());
  parallel_for(std::int64_t(moduli.size()), [&](std::int64_t i) {
    cplx w = std::polar(moduli[i], angle);
    auto th = theta_phi(eng.phi(), w);
    auto ex = theta_expansion(tab, w, N);
    rep.rows[i] = {moduli[i], w, th.value, ex.value, std::abs(th.value - ex.value), th.error + ex.error};
  });
  std::vector<RemainderRow> sorted = rep.rows;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.modulus < b.modulus; });
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < 3; ++i) {
    double x = std::log(sorted[i].modulus), y = std::log(std::max(sorted[i].remainder, 1e-300));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  rep.slope = (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
  rep.pass = rep.slope >= rep.required;
  return rep;
}

BernoulliReport bernoulli_identity_check(int k_max) {
  if (k_max < 1) throw DomainError("bernoulli_identity_check: k_max must be positive");
  ZetaOptions opt;
  opt.k_max = k_max;
  ZetaEngine eng(HomogeneousFunction::pnorm(1, 1.0), opt);
  auto B = bernoulli_numbers(k_max + 1);
  BernoulliReport rep;
  rep.rows.resize(k_max);
  parallel_for(k_max, [&](std::int64_t i) {
    int k = int(i) + 1;
    auto z = eng.continued(cplx(-double(k), 0.0));
    double v = -(k + 1) * z.value.real() / 2.0;
    rep.rows[i] = {k, v, B[k + 1], std::fabs(v - B[k + 1]), (k + 1) * z.error / 2.0};
  });
  for (const auto& r : rep.rows) rep.max_deviation = std::max(rep.max_deviation, r.deviation);
  return rep;
}

}  // namespace azeta
