#include <cmath>

#include "azeta/errors.hpp"
#include "azeta/theta.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace azeta;

TEST_CASE("shell enumeration") {
  for (int n : {1, 2, 3})
    for (long m : {1L, 2L, 5L}) {
      long full = 0, half = 0;
      for_each_shell_point(n, m, false, [&](const Vec& w) {
        CHECK(w.cwiseAbs().maxCoeff() == doctest::Approx(double(m)));
        ++full;
      });
      for_each_shell_point(n, m, true, [&](const Vec&) { ++half; });
      CHECK(double(full) == shell_count(n, m));
      CHECK(2 * half == full);
    }
}

TEST_CASE("theta star for e^{-|x|}") {
  auto k = Kernel::exp_power(HomogeneousFunction::pnorm(1, 1.0), 1.0);
  auto v = theta_star_matrix(k.natural_generator(), k, 1.0);
  double exact = 2.0 * std::exp(-1.0) / (1.0 - std::exp(-1.0));
  CHECK(exact == doctest::Approx(1.1639534).epsilon(1e-7));
  CHECK(std::abs(v.value - exact) <= v.error + 1e-15);
  CHECK(v.kind == Rigor::rigorous);
  for (double t : {0.05, 0.3, 7.0}) {
    auto w = theta_star_matrix(k.natural_generator(), k, t);
    double q = std::exp(-t);
    CHECK(std::abs(w.value - 2.0 * q / (1.0 - q)) <= w.error + 1e-14 * (2.0 * q / (1.0 - q)));
  }
}

TEST_CASE("theta star for e^{-x^2} at t = 4") {
  auto k = Kernel::exp_power(HomogeneousFunction::quadratic(Mat::Identity(1, 1)), 1.0);
  auto v = theta_star_matrix(k.natural_generator(), k, 4.0);
  double exact = 0.0;
  for (int m = 1; m < 20; ++m) exact += 2.0 * std::exp(-4.0 * m * m);
  CHECK(std::abs(v.value - exact) <= v.error + 1e-16);
}

TEST_CASE("theta star vanishes for a kernel far out of reach") {
  auto k = Kernel::exp_power(HomogeneousFunction::pnorm(1, 1.0, 1e3), 1.0);
  auto v = theta_star_matrix(k.natural_generator(), k, 10.0);
  CHECK(std::abs(v.value) <= 1e-300);
}

TEST_CASE("theta of phi") {
  auto abs1 = HomogeneousFunction::pnorm(1, 1.0);
  auto v = theta_phi(*abs1, cplx(1.0, 0.0));
  CHECK(v.value.real() == doctest::Approx(2.1639534).epsilon(1e-7));
  for (cplx w : {cplx(0.3, 0.0), cplx(0.1, 2.0), cplx(2.0, -5.0)}) {
    auto t = theta_phi(*abs1, w);
    CHECK(std::abs(t.value - oracle::theta_abs(w)) <= t.error + 1e-13 * std::abs(t.value));
  }
  auto sq = HomogeneousFunction::quadratic(Mat::Identity(1, 1));
  auto t = theta_phi(*sq, cplx(0.1, 0.0));
  CHECK(t.value.real() == doctest::Approx(std::sqrt(M_PI / 0.1)).epsilon(1e-9));
  CHECK(std::abs(t.value.real() - oracle::theta_sq(0.1)) <= t.error + 1e-12);
  CHECK(theta_phi(*abs1, cplx(60.0, 0.0)).value.real() == doctest::Approx(1.0).epsilon(1e-20));
  CHECK_THROWS_AS(theta_phi(*abs1, cplx(0.0, 1.0)), DomainError);
}

TEST_CASE("half lattice matches the full lattice") {
  auto k = Kernel::power_exp(HomogeneousFunction::quadratic(Mat::Identity(2, 2)), 4.0);
  ThetaOptions full, half;
  full.allow_half = false;
  for (double t : {0.5, 2.0}) {
    auto a = theta_star_matrix(k.natural_generator(), k, t, full);
    auto b = theta_star_matrix(k.natural_generator(), k, t, half);
    CHECK(std::abs(a.value - b.value) <= 1e-14 * std::abs(a.value));
  }
}

TEST_CASE("Jacobi identity for the self-dual Gaussian") {
  auto k = Kernel::exp_power(HomogeneousFunction::quadratic(M_PI * Mat::Identity(1, 1)), 1.0);
  auto kh = fourier_transform(k);
  for (double t : {1.0, 2.0, 5.0}) {
    auto r = jacobi_residual(k.natural_generator(), k, kh, t);
    CHECK(r.residual <= 1e-8);
    // both sides against direct sums
    double lhs = 0.0;
    for (int m = -40; m <= 40; ++m) lhs += std::exp(-M_PI * m * m / t);
    CHECK(r.lhs == doctest::Approx(lhs).epsilon(1e-12));
  }
}

TEST_CASE("Jacobi identity with a numerical transform") {
  auto k = Kernel::power_exp(HomogeneousFunction::superellipse({12.0, 18.0}, 6.0), 8.0);
  auto kh = fourier_transform(k);
  for (double t : {0.7, 1.0, 1.5}) {
    auto r = jacobi_residual(k.natural_generator(), k, kh, t);
    CHECK(r.residual <= r.bound);
  }
}
