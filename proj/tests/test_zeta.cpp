#include <cmath>

#include "azeta/errors.hpp"
#include "azeta/zeta.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace azeta;

namespace {

PhiPtr abs1() { return HomogeneousFunction::pnorm(1, 1.0); }
PhiPtr square1() { return HomogeneousFunction::quadratic(Mat::Identity(1, 1)); }
PhiPtr disc() { return HomogeneousFunction::quadratic(Mat::Identity(2, 2)); }

const double kEulerGamma = 0.57721566490153286061;

}  // namespace

TEST_CASE("direct sums") {
  auto z = zeta_direct(abs1(), cplx(2.0, 0.0));
  CHECK(std::abs(z.value - M_PI * M_PI / 3.0) <= 1e-8);
  CHECK(z.error <= 1e-8);
  auto zc = zeta_direct(abs1(), cplx(1.5, 4.0));
  CHECK(std::abs(zc.value - 2.0 * oracle::riemann_zeta(cplx(1.5, 4.0))) <= 1e-8);
  // 4 zeta(3) beta(3) with beta(3) = pi^3 / 32
  auto zd = zeta_direct(disc(), cplx(3.0, 0.0));
  double expect = 4.0 * oracle::riemann_zeta(3.0).real() * std::pow(M_PI, 3) / 32.0;
  CHECK(std::abs(zd.value - expect) <= 1e-8);
  auto z2 = zeta_direct(HomogeneousFunction::pnorm(1, 1.0, 2.0), cplx(2.0, 0.0));
  CHECK(std::abs(z2.value - M_PI * M_PI / 12.0) <= 1e-8);
  CHECK_THROWS_AS(zeta_direct(abs1(), cplx(1.0, 3.0)), DivergenceError);
}

TEST_CASE("continuation of 2 zeta(s) for |x|") {
  ZetaEngine eng(abs1());
  for (cplx s : {cplx(3.0, 0.0), cplx(0.5, 0.0), cplx(-1.0, 0.0), cplx(0.3, 7.0), cplx(-2.5, -1.0)}) {
    auto z = eng.continued(s);
    auto ref = 2.0 * oracle::riemann_zeta(s);
    CHECK(std::abs(z.value - ref) <= std::max(1e-9, z.error));
  }
  // first nontrivial zero
  auto zz = eng.continued(cplx(0.5, 14.134725141734693));
  CHECK(std::abs(zz.value) <= 1e-8);
  CHECK(std::abs(eng.continued(cplx(-1.0, 0.0)).value + 1.0 / 6.0) <= 1e-9);
  CHECK(std::abs(eng.continued(cplx(3.0, 0.0)).value - eng.direct(cplx(3.0, 0.0)).value) <= 1e-8);
}

TEST_CASE("continuation of 2 zeta(2s) for x^2") {
  ZetaEngine eng(square1());
  for (cplx s : {cplx(1.0, 0.0), cplx(0.25, 2.0), cplx(-0.75, 0.5)}) {
    auto z = eng.continued(s);
    CHECK(std::abs(z.value - 2.0 * oracle::riemann_zeta(2.0 * s)) <= std::max(1e-9, z.error));
  }
  auto z1 = zeta_negative_integers(square1(), 1);
  CHECK(std::abs(z1.value) <= 1e-9);
}

TEST_CASE("negative integers for |x|") {
  CHECK(std::abs(zeta_negative_integers(abs1(), 1).value + 1.0 / 6.0) <= 1e-9);
  CHECK(std::abs(zeta_negative_integers(abs1(), 3).value - 1.0 / 60.0) <= 1e-8);
}

TEST_CASE("pole at alpha") {
  ZetaEngine eng(abs1());
  auto z = eng.continued(cplx(1.0 + 1e-9, 0.0));
  REQUIRE(z.near_pole.has_value());
  CHECK(z.near_pole->residue == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(std::abs(z.near_pole->constant - 2.0 * kEulerGamma) <= 1e-5);
  CHECK(residue_at_alpha(*abs1()).real() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(residue_at_alpha(*disc()).real() == doctest::Approx(M_PI).epsilon(1e-10));
  // scaling by a multiplies the residue by a^{-alpha}
  CHECK(residue_at_alpha(*disc()->scaled(3.0)).real() == doctest::Approx(M_PI / 3.0).epsilon(1e-10));
}

TEST_CASE("value at zero") {
  CHECK(std::abs(zeta_at_zero(abs1()).value + 1.0) <= 1e-4);
  CHECK(std::abs(zeta_at_zero(disc()).value + 1.0) <= 1e-4);
}

TEST_CASE("strip and argument checks") {
  ZetaEngine eng(abs1());
  auto st = eng.strip();
  CHECK(st.lo < -5.0);
  CHECK(st.hi > 3.0);
  CHECK_THROWS_AS(eng.continued(cplx(st.lo - 1.0, 0.0)), DomainError);
  ZetaOptions o;
  o.c = 2.0;
  ZetaEngine low(abs1(), o);
  // s + c = 0 hits a pole of the Gamma factor
  CHECK_THROWS_AS(low.continued(cplx(-2.0, 0.0)), DomainError);
}

TEST_CASE("kernel choice does not change the continuation") {
  ZetaOptions a, b;
  a.c = 8.0;
  b.c = 9.0;
  ZetaEngine ea(disc(), a), eb(disc(), b);
  for (cplx s : {cplx(0.4, 1.0), cplx(-0.5, 0.0), cplx(2.5, 3.0)}) {
    auto za = ea.continued(s), zb = eb.continued(s);
    CHECK(std::abs(za.value - zb.value) <= za.error + zb.error + 1e-12);
  }
}

TEST_CASE("functional equation on the disc") {
  ZetaEngine eng(disc());
  for (cplx s : {cplx(0.5, 0.0), cplx(0.2, 4.0), cplx(2.0, -1.0)}) {
    auto f = eng.functional_equation(s);
    CHECK(f.residual <= f.bound);
  }
}

TEST_CASE("growth scan on the line Re s = 2 for |x|") {
  ZetaEngine eng(abs1());
  std::vector<double> h;
  for (double y = 10.0; y <= 30.0; y += 4.0) h.push_back(y);
  auto rep = growth_scan(eng, 2.0, h, 0.1);
  CHECK(rep.rate >= M_PI / 2.0 - 0.2);
  CHECK(rep.rate <= M_PI / 2.0 + 0.05);
  CHECK_THROWS_AS(growth_scan(eng, 2.0, {0.5, 2.0}, 0.1), DomainError);
}
