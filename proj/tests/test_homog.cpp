#include <cmath>

#include "azeta/errors.hpp"
#include "azeta/homog.hpp"
#include "doctest.h"

using namespace azeta;

namespace {

Vec v2(double a, double b) {
  Vec x(2);
  x << a, b;
  return x;
}

}  // namespace

TEST_CASE("closed-form evaluation") {
  auto q = HomogeneousFunction::quadratic(Mat::Identity(2, 2));
  CHECK(q->evaluate(v2(3.0, 4.0)) == doctest::Approx(25.0));
  CHECK(q->evaluate(Vec::Zero(2)) == 0.0);
  CHECK(q->alpha() == doctest::Approx(1.0));

  auto se = HomogeneousFunction::superellipse({12.0, 18.0}, 6.0);
  CHECK(se->evaluate(v2(1.0, 0.0)) == doctest::Approx(1.0));
  CHECK(se->alpha() == doctest::Approx(5.0 / 6.0));
  double direct = std::pow(std::pow(std::sqrt(2.0), 12) + std::pow(std::cbrt(2.0), 18), 1.0 / 6.0);
  CHECK(se->evaluate(v2(std::sqrt(2.0), std::cbrt(2.0))) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(direct == doctest::Approx(2.0 * std::pow(2.0, 1.0 / 6.0)).epsilon(1e-14));

  auto p3 = HomogeneousFunction::pnorm(2, 3.0);
  CHECK(p3->evaluate(v2(1.0, -2.0)) == doctest::Approx(std::cbrt(9.0)));
  auto pinf = HomogeneousFunction::pnorm(2, INFINITY);
  CHECK(pinf->evaluate(v2(1.0, -2.0)) == doctest::Approx(2.0));

  std::vector<Monomial> t = {{1.0, {4, 0}}, {1.0, {2, 2}}, {1.0, {0, 4}}};
  auto poly = HomogeneousFunction::polynomial(2, 4, t);
  CHECK(poly->evaluate(v2(1.0, 2.0)) == doctest::Approx(1.0 + 4.0 + 16.0));
  CHECK(poly->alpha() == doctest::Approx(0.5));
}

TEST_CASE("homogeneity under the flow") {
  std::vector<PhiPtr> phis = {HomogeneousFunction::quadratic(Mat::Identity(2, 2)),
                              HomogeneousFunction::superellipse({12.0, 18.0}, 6.0),
                              HomogeneousFunction::pnorm(2, 3.0)};
  for (const auto& phi : phis) {
    for (double t : {0.01, 0.7, 3.0, 250.0}) {
      Vec x = v2(0.37, -1.21);
      double lhs = phi->evaluate(phi->generator().power(t) * x);
      CHECK(lhs == doctest::Approx(t * phi->evaluate(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("invalid inputs") {
  Mat Q(2, 2);
  Q << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(HomogeneousFunction::quadratic(Q), DomainError);
  CHECK_THROWS_AS(HomogeneousFunction::pnorm(2, 0.5), DomainError);
  std::vector<Monomial> odd = {{1.0, {3, 0}}, {1.0, {0, 3}}};
  CHECK_THROWS(HomogeneousFunction::polynomial(2, 3, odd));
}

TEST_CASE("profile reproduces a closed form") {
  auto se = HomogeneousFunction::superellipse({12.0, 18.0}, 6.0);
  auto prof = HomogeneousFunction::profile_from(*se);
  CHECK(prof->is_profile());
  double worst = 0.0;
  for (double th = 0.05; th < 2.0 * M_PI; th += 0.37) {
    Vec x = v2(0.8 * std::cos(th), 1.3 * std::sin(th));
    worst = std::max(worst, std::fabs(prof->evaluate(x) - se->evaluate(x)) / se->evaluate(x));
  }
  CHECK(worst <= 1e-3);
  CHECK(prof->evaluate(Vec::Zero(2)) == 0.0);
}

TEST_CASE("ball membership is strict") {
  auto eu = HomogeneousFunction::pnorm(2, 2.0);
  CHECK(unit_ball_membership(*eu, Vec::Zero(2), 1.0));
  CHECK_FALSE(unit_ball_membership(*eu, v2(1.0, 0.0), 1.0));
  auto q = HomogeneousFunction::quadratic(Mat::Identity(2, 2));
  CHECK(unit_ball_membership(*q, v2(3.0, 4.0), 26.0));
  CHECK_FALSE(unit_ball_membership(*q, v2(3.0, 4.0), 25.0));
}

TEST_CASE("growth bounds") {
  SUBCASE("Euclidean norm") {
    auto g = HomogeneousFunction::pnorm(2, 2.0)->growth();
    CHECK(g.c1 == doctest::Approx(1.0));
    CHECK(g.c2 == doctest::Approx(1.0));
    CHECK(g.c3 == doctest::Approx(1.0));
    CHECK(g.c4 == doctest::Approx(1.0));
  }
  SUBCASE("scaled norm") {
    auto g = HomogeneousFunction::pnorm(2, 2.0, 2.0)->growth();
    CHECK(g.c1 == doctest::Approx(2.0));
    CHECK(g.c4 == doctest::Approx(2.0));
  }
  SUBCASE("anisotropic sampling finds no violation") {
    auto se = HomogeneousFunction::superellipse({12.0, 18.0}, 6.0);
    const auto& g = se->growth();
    int bad = 0;
    for (int i = 0; i < 4000; ++i) {
      double th = 0.7 * i, r = std::exp(-6.0 + 12.0 * ((i * 37) % 4000) / 4000.0);
      Vec x = r * v2(std::cos(th), std::sin(th));
      double f = se->evaluate(x);
      double lo = r <= 1.0 ? g.c1 * std::pow(r, 1.0 / g.gamma) : g.c3 * std::pow(r, 1.0 / g.beta);
      double hi = r <= 1.0 ? g.c2 * std::pow(r, 1.0 / g.beta) : g.c4 * std::pow(r, 1.0 / g.gamma);
      if (f < lo * (1 - 1e-12) || f > hi * (1 + 1e-12)) ++bad;
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("sandwich") {
  SUBCASE("smooth fallback is a pure rescaling") {
    auto q = HomogeneousFunction::quadratic(Mat::Identity(2, 2));
    auto sw = sandwich_smooth(*q, 0.1);
    Vec x = v2(0.3, 2.0);
    CHECK(sw.lower->evaluate(x) == doctest::Approx(0.95 * q->evaluate(x)));
    CHECK(sw.upper->evaluate(x) == doctest::Approx(1.05 * q->evaluate(x)));
  }
  SUBCASE("max norm is mollified and still sandwiched") {
    auto mx = HomogeneousFunction::pnorm(2, INFINITY);
    auto sw = sandwich_smooth(*mx, 0.1);
    CHECK(sw.width <= 1.1 / 0.9 + 1e-12);
    for (double th = 0.0; th < 2.0 * M_PI; th += 0.013) {
      Vec x = v2(std::cos(th), std::sin(th));
      CHECK(sw.lower->evaluate(x) <= mx->evaluate(x) * (1 + 1e-12));
      CHECK(sw.upper->evaluate(x) >= mx->evaluate(x) * (1 - 1e-12));
    }
  }
}

TEST_CASE("scaling") {
  auto se = HomogeneousFunction::superellipse({12.0, 18.0}, 6.0);
  auto s3 = se->scaled(3.0);
  Vec x = v2(0.4, -0.9);
  CHECK(s3->evaluate(x) == doctest::Approx(3.0 * se->evaluate(x)).epsilon(1e-14));
  CHECK_THROWS_AS(se->scaled(-1.0), DomainError);
}
