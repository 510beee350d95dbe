#pragma once

#include <vector>

#include "azeta/types.hpp"

namespace azeta {

// Lanczos approximation (g = 7, nine terms) with reflection for Re z < 1/2.
cplx gamma(cplx z);
cplx log_gamma(cplx z);
// 1/Gamma, entire; exact zeros at the nonpositive integers.
cplx rgamma(cplx z);

// B_0..B_m from sum_{j<=m} C(m+1, j) B_j = 0 (convention B_1 = -1/2).
std::vector<double> bernoulli_numbers(int m);

// Pairwise summation over a contiguous range; deterministic in the order given.
double pairwise_sum(const double* x, std::size_t n);
cplx pairwise_sum(const cplx* x, std::size_t n);

// Neumaier compensated accumulator.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v);
  double value() const { return sum + comp; }
};

}  // namespace azeta
