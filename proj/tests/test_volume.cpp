#include <chrono>
#include <cmath>

#include "azeta/errors.hpp"
#include "azeta/volume.hpp"
#include "doctest.h"

using namespace azeta;

namespace {

// area of {|x|^a + |y|^b < 1}
double superellipse_area(double a, double b) {
  return 4.0 * std::tgamma(1.0 + 1.0 / a) * std::tgamma(1.0 + 1.0 / b) / std::tgamma(1.0 + 1.0 / a + 1.0 / b);
}

}  // namespace

TEST_CASE("exp-integral volumes against closed forms") {
  auto a = volume_exp_integral(*HomogeneousFunction::pnorm(1, 1.0));
  CHECK(std::fabs(a.real() - 2.0) <= 1e-12);
  auto d = volume_exp_integral(*HomogeneousFunction::quadratic(Mat::Identity(2, 2)));
  CHECK(std::fabs(d.real() - M_PI) <= 1e-10);
  auto p4 = volume_exp_integral(*HomogeneousFunction::pnorm(2, 4.0));
  CHECK(std::fabs(p4.real() - superellipse_area(4.0, 4.0)) <= 1e-9);
  // (x^12 + y^18)^{1/6} < 1 is the same set as x^12 + y^18 < 1
  auto se = volume_exp_integral(*HomogeneousFunction::superellipse({12.0, 18.0}, 6.0));
  CHECK(std::fabs(se.real() - superellipse_area(12.0, 18.0)) <= 1e-8);
  CHECK(se.error <= 1e-8);
}

TEST_CASE("Monte Carlo volumes") {
  auto a = volume_monte_carlo(*HomogeneousFunction::pnorm(1, 1.0), 1000000, 3);
  CHECK(std::fabs(a.estimate - 2.0) <= 0.01);
  auto d = volume_monte_carlo(*HomogeneousFunction::quadratic(Mat::Identity(2, 2)), 1000000, 3);
  CHECK(std::fabs(d.estimate - M_PI) <= 0.02);
  auto se = volume_monte_carlo(*HomogeneousFunction::superellipse({12.0, 18.0}, 6.0), 1000000, 5);
  CHECK(std::fabs(se.estimate - superellipse_area(12.0, 18.0)) <= 3.0 * se.std_error);
  CHECK_THROWS(volume_monte_carlo(*HomogeneousFunction::pnorm(1, 1.0), 0, 3));
}

TEST_CASE("Monte Carlo is reproducible per seed") {
  auto phi = HomogeneousFunction::quadratic(Mat::Identity(2, 2));
  auto a = volume_monte_carlo(*phi, 200000, 11), b = volume_monte_carlo(*phi, 200000, 11);
  CHECK(a.hits == b.hits);
}

TEST_CASE("lattice counts") {
  auto disc = HomogeneousFunction::quadratic(Mat::Identity(2, 2));
  CHECK(lattice_count(*disc, 2.0) == 5);
  CHECK(lattice_count(*disc, 0.5) == 1);
  CHECK(lattice_count(*HomogeneousFunction::pnorm(1, 1.0), 3.5) == 7);
  CHECK(lattice_count(*HomogeneousFunction::pnorm(1, 1.0), 1e4) == 19999);

  // brute force over a box for an anisotropic phi
  auto se = HomogeneousFunction::superellipse({12.0, 18.0}, 6.0);
  for (double r : {3.0, 40.0, 700.0}) {
    std::uint64_t brute = 0;
    for (int x = -40; x <= 40; ++x)
      for (int y = -40; y <= 40; ++y) {
        Vec w(2);
        w << x, y;
        if (se->evaluate(w) < r) ++brute;
      }
    CHECK(lattice_count(*se, r) == brute);
  }
  CHECK_THROWS_AS(lattice_count(*disc, 1e12, 1e6), BudgetExceeded);
}

TEST_CASE("Gauss circle at r = 1e6") {
  auto disc = HomogeneousFunction::quadratic(Mat::Identity(2, 2));
  auto t0 = std::chrono::steady_clock::now();
  auto c = lattice_count(*disc, 1e6, 1e7);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(std::fabs(double(c) / 1e6 - M_PI) < 0.01);
  CHECK(secs < 60.0);
}

TEST_CASE("counting scan and pole rows") {
  auto se = HomogeneousFunction::superellipse({12.0, 18.0}, 6.0);
  auto rep = counting_limit_scan(*se, {1e4}, 1e8, false);
  REQUIRE(rep.rows.size() == 1);
  auto mc = volume_monte_carlo(*se, 1000000, 9);
  CHECK(std::fabs(rep.rows[0].ratio - mc.estimate) / mc.estimate <= 0.02);

  auto disc = HomogeneousFunction::quadratic(Mat::Identity(2, 2));
  auto pr = counting_limit_scan(*disc, {10.0}, 1e8, true);
  REQUIRE(pr.pole.size() >= 3);
  for (std::size_t i = 1; i < pr.pole.size(); ++i)
    if (pr.pole[i].sigma < pr.pole[i - 1].sigma) CHECK(pr.pole[i].deviation < pr.pole[i - 1].deviation);
}
