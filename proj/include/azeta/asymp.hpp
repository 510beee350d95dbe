#pragma once

#include <vector>

#include "azeta/zeta.hpp"

namespace azeta {

// Coefficients of the small-w expansion of theta(phi, iw).
struct ExpansionTable {
  double alpha = 0.0;
  BoundedValue volume;
  std::vector<MeromorphicValue> zeta_neg;  // zeta(phi, -k), k = 1..N
};

ExpansionTable expansion_table(const ZetaEngine& eng, int N);

struct Expansion {
  cplx value{0.0, 0.0};
  double error = 0.0;
  cplx leading{0.0, 0.0};
  std::vector<cplx> terms;  // k = 1..N
};

// Gamma(alpha+1)|B| w^{-alpha} + sum_{k<=N} (-1)^k zeta(phi,-k)/k! w^k, principal branch.
Expansion theta_expansion(const ExpansionTable& tab, cplx w, int N);
Expansion theta_expansion(const ZetaEngine& eng, cplx w, int N);

struct RemainderRow {
  double modulus;
  cplx w;
  cplx theta;
  cplx expansion;
  double remainder;
  double error;
};

struct RemainderReport {
  double angle = 0.0;
  int N = 0;
  double eps = 0.0;
  std::vector<RemainderRow> rows;
  double slope = 0.0;  // fitted on the three smallest |w|
  double required = 0.0;
  bool pass = false;
};

RemainderReport remainder_check(const ZetaEngine& eng, double angle, int N, double eps,
                                const std::vector<double>& moduli, double delta = M_PI / 12.0);

struct BernoulliRow {
  int k;
  double computed;  // -(k+1) zeta(|x|, -k) / 2
  double bernoulli;
  double deviation;
  double error;
};

struct BernoulliReport {
  std::vector<BernoulliRow> rows;
  double max_deviation = 0.0;
};

BernoulliReport bernoulli_identity_check(int k_max);

}  // namespace azeta
