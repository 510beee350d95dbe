#include "azeta/special.hpp"

#include <cmath>

#include "azeta/errors.hpp"

namespace azeta {

namespace {

constexpr double kG = 7.0;
constexpr double kCoef[9] = {0.99999999999980993,  676.5203681218851,
                             -1259.1392167224028,  771.32342877765313,
                             -176.61502916214059,  12.507343278686905,
                             -0.13857109526572012, 9.9843695780195716e-6,
                             1.5056327351493116e-7};
const double kHalfLog2Pi = 0.5 * std::log(2.0 * M_PI);

// log Gamma(z) for Re z >= 1/2.
cplx log_gamma_right(cplx z) {
  z -= 1.0;
  cplx a = kCoef[0];
  for (int i = 1; i < 9; ++i) a += kCoef[i] / (z + double(i));
  cplx t = z + kG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(a);
}

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// sin(pi z) with exact zeros at integers and reduced argument.
cplx sin_pi(cplx z) {
  double re = z.real();
  double n = std::round(re);
  double r = re - n;
  cplx w(r, z.imag());
  cplx s = std::sin(M_PI * w);
  return (std::fmod(std::fabs(n), 2.0) == 1.0) ? -s : s;
}

}  // namespace

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z)) throw DomainError("log_gamma: pole at nonpositive integer");
  if (z.real() < 0.5) {
    // log Gamma(z) = log pi - log sin(pi z) - log Gamma(1-z); branch is not continuous.
    return std::log(M_PI) - std::log(sin_pi(z)) - log_gamma_right(1.0 - z);
  }
  return log_gamma_right(z);
}

cplx gamma(cplx z) {
  if (is_nonpositive_integer(z)) throw DomainError("gamma: pole at nonpositive integer");
  if (z.real() < 0.5) return M_PI / (sin_pi(z) * gamma(1.0 - z));
  return std::exp(log_gamma_right(z));
}

cplx rgamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.real() < 0.5) return sin_pi(z) * gamma(1.0 - z) / M_PI;
  return std::exp(-log_gamma_right(z));
}

std::vector<double> bernoulli_numbers(int m) {
  if (m < 0) throw DomainError("bernoulli_numbers: negative order");
  std::vector<double> b(m + 1, 0.0);
  b[0] = 1.0;
  for (int k = 1; k <= m; ++k) {
    // binomial C(k+1, j) built incrementally
    double binom = 1.0;
    double acc = 0.0;
    for (int j = 0; j < k; ++j) {
      acc += binom * b[j];
      binom = binom * double(k + 1 - j) / double(j + 1);
    }
    b[k] = -acc / double(k + 1);
  }
  return b;
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

cplx pairwise_sum(const cplx* x, std::size_t n) {
  if (n <= 16) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

void KahanSum::add(double v) {
  double t = sum + v;
  if (std::fabs(sum) >= std::fabs(v))
    comp += (sum - t) + v;
  else
    comp += (v - t) + sum;
  sum = t;
}

}  // namespace azeta
