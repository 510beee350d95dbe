#include <cmath>

#include "azeta/errors.hpp"
#include "azeta/kernel.hpp"
#include "doctest.h"

using namespace azeta;

namespace {

Vec v1(double y) { return Vec::Constant(1, y); }

}  // namespace

TEST_CASE("kernel evaluation") {
  auto abs1 = HomogeneousFunction::pnorm(1, 1.0);
  CHECK(Kernel::exp_power(abs1, 1.0).evaluate(v1(0.0)) == 1.0);
  CHECK(Kernel::power_exp(abs1, 2.0).evaluate(v1(0.0)) == 0.0);
  CHECK(Kernel::exp_power(abs1, 2.0).evaluate(v1(1.0)) == doctest::Approx(0.3678794).epsilon(1e-7));
  CHECK(Kernel::power_exp(abs1, 2.0).evaluate(v1(-3.0)) == doctest::Approx(9.0 * std::exp(-3.0)));
  CHECK_THROWS_AS(Kernel::exp_power(abs1, 0.0), DomainError);
  CHECK_THROWS_AS(Kernel::power_exp(abs1, -1.0), DomainError);
}

TEST_CASE("decay certificate") {
  auto se = HomogeneousFunction::superellipse({12.0, 18.0}, 6.0);
  for (double b : {1.0, 2.0, 6.0}) CHECK(Kernel::exp_power(se, b).decay_sigma() >= 8.0);
  CHECK(Kernel::power_exp(se, 8.0).decay_sigma() >= 8.0);
}

TEST_CASE("Gaussian is its own transform") {
  auto phi = HomogeneousFunction::quadratic(M_PI * Mat::Identity(1, 1));
  auto kh = fourier_transform(Kernel::exp_power(phi, 1.0));
  double worst = 0.0;
  for (double y = -3.0; y <= 3.0; y += 0.01) worst = std::max(worst, std::fabs(kh.evaluate(v1(y)) - std::exp(-M_PI * y * y)));
  CHECK(worst <= 1e-8);
  // Plancherel: integral of ghat^2 equals integral of g^2 = 1/sqrt(2)
  double h = 1e-3, l2 = 0.0;
  for (double y = -6.0; y <= 6.0; y += h) l2 += kh.evaluate(v1(y)) * kh.evaluate(v1(y)) * h;
  CHECK(std::fabs(l2 - 1.0 / std::sqrt(2.0)) <= 1e-6);
}

TEST_CASE("transform of |x|^8 e^{-|x|} in and beyond the band") {
  auto k = Kernel::power_exp(HomogeneousFunction::pnorm(1, 1.0), 8.0);
  auto kh = fourier_transform(k);
  CHECK(kh.far_limit() > kh.band());
  for (double y : {0.0, 0.3, 1.0, 2.5, 0.9 * kh.band(), 1.1 * kh.band(), 10.0, 50.0, 0.99 * kh.far_limit()}) {
    double exact = (2.0 * std::tgamma(9.0) / std::pow(cplx(1.0, 2.0 * M_PI * y), 9)).real();
    CHECK(std::fabs(kh.evaluate(v1(y)) - exact) <= kh.error_at(v1(y)) + 1e-15 * std::fabs(exact));
  }
  CHECK(kh.evaluate(v1(2.0 * kh.far_limit())) == 0.0);
}

TEST_CASE("transform at zero") {
  auto k1 = Kernel::exp_power(HomogeneousFunction::pnorm(1, 1.0), 1.0);
  auto t1 = fourier_transform(k1);
  CHECK(std::fabs(t1.value_at_zero() - 2.0) <= t1.in_band_error() + 1e-12);
  auto k2 = Kernel::exp_power(HomogeneousFunction::quadratic(Mat::Identity(2, 2)), 1.0);
  auto t2 = fourier_transform(k2);
  CHECK(std::fabs(t2.value_at_zero() - M_PI) <= t2.in_band_error() + 1e-12);
  // even kernel: even transform
  Vec y(2);
  y << 0.3, -0.7;
  CHECK(t2.evaluate(y) == doctest::Approx(t2.evaluate(-y)).epsilon(1e-12));
}

TEST_CASE("closed form of the integral of e^{-a phi}") {
  auto abs1 = HomogeneousFunction::pnorm(1, 1.0);
  CHECK(ghat_zero_closed_form(*abs1, 1.0, 2.0) == doctest::Approx(2.0));
  CHECK(ghat_zero_closed_form(*abs1, 2.0, 2.0) == doctest::Approx(1.0));
  CHECK(ghat_zero_closed_form(*HomogeneousFunction::quadratic(Mat::Identity(2, 2)), 1.0, M_PI) ==
        doctest::Approx(M_PI));
  auto direct = ghat_zero_direct(Kernel::exp_power(abs1, 1.0));
  CHECK(std::fabs(direct.real() - 2.0) <= 1e-12);
}

TEST_CASE("transform beyond three dimensions is refused") {
  auto k = Kernel::exp_power(HomogeneousFunction::quadratic(Mat::Identity(4, 4)), 1.0);
  CHECK_THROWS_AS(fourier_transform(k), BudgetExceeded);
}
