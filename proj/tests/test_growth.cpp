#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "l1tv/growth.hpp"
#include "l1tv/numerics.hpp"

using namespace l1tv;

namespace {

// quadrature oracle for the primitive
double G_quad(const GrowthSpec& g, double s) {
  if (s == 0) return 0.0;
  return integrate([&](double x) { return g.g(x); }, 0.0, s, 1e-13);
}

}  // namespace

TEST_CASE("primitive closed forms") {
  auto r1 = GrowthSpec::rational1();
  CHECK(r1.G(1.0) == Catch::Approx(std::log(2.0)).epsilon(1e-14));
  auto r2 = GrowthSpec::rational2();
  CHECK(r2.G(1.0) == Catch::Approx(M_PI / 4.0).epsilon(1e-14));
  CHECK(r2.G_infinity() == Catch::Approx(M_PI / 2.0).epsilon(1e-15));
  auto id = GrowthSpec::constant(1.0);
  CHECK(id.G(0.7) == 0.7);

  for (const auto& g :
       {GrowthSpec::affine_plus(1.0, 2.0), GrowthSpec::hinge_plus(1.0),
        GrowthSpec::trapezoid(1.0, 2.0),
        GrowthSpec::piecewise_linear({{0.0, 2.0}, {1.0, 0.5}, {2.0, 0.5}}, 0.25)})
    for (double s : {0.3, 0.9, 1.5, 2.7, 6.0})
      CHECK(g.G(s) == Catch::Approx(G_quad(g, s)).epsilon(1e-10));
}

TEST_CASE("primitive is monotone, zero at zero") {
  for (const auto& g :
       {GrowthSpec::rational1(), GrowthSpec::rational2(0.3),
        GrowthSpec::trapezoid(0.5, 3.0),
        GrowthSpec::piecewise_linear({{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.0}}, 0.5)}) {
    CHECK(g.G(0.0) == 0.0);
    double prev = 0.0;
    for (int i = 1; i <= 60; ++i) {
      const double v = g.G(0.1 * i);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("inverse round trips on the strictly increasing range") {
  const auto cases = {GrowthSpec::constant(2.0), GrowthSpec::affine_plus(1.0, 3.0),
                      GrowthSpec::rational1(),   GrowthSpec::rational1(0.2),
                      GrowthSpec::rational2(),   GrowthSpec::rational2(0.1),
                      GrowthSpec::hinge_plus(1.0), GrowthSpec::trapezoid(1.0, 2.0),
                      GrowthSpec::piecewise_linear({{0.0, 1.0}, {1.0, 0.2}}, 0.7)};
  for (const auto& g : cases) {
    for (double t : {1e-3, 0.1, 0.4, 1.0, 2.5}) {
      if (t >= g.G_infinity()) continue;
      const auto inv = g.inverse_G(t);
      if (inv.is_interval()) continue;
      CHECK(g.G(inv.lo) == Catch::Approx(t).margin(1e-10));
    }
  }
}

TEST_CASE("inverse closed-form values") {
  CHECK(GrowthSpec::rational1().inverse_G(1.0).lo ==
        Catch::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK(GrowthSpec::constant(1.0).inverse_G(0.7).lo == Catch::Approx(0.7));
  CHECK(GrowthSpec::rational2().inverse_G(1.0).lo ==
        Catch::Approx(std::tan(1.0)).epsilon(1e-14));
}

TEST_CASE("flat intervals of the inverse match the zero set of g") {
  auto trap = GrowthSpec::trapezoid(1.0, 2.0);
  const auto iv = trap.inverse_G(0.5);  // G value on the flat stretch
  CHECK(iv.is_interval());
  CHECK(iv.lo == Catch::Approx(1.0).margin(1e-12));
  CHECK(iv.hi == Catch::Approx(2.0).margin(1e-12));
  // quadrature confirms G really is flat there
  CHECK(G_quad(trap, 1.0) == Catch::Approx(G_quad(trap, 2.0)).margin(1e-12));
  CHECK(iv.select(Branch::Minimal) == iv.lo);
  CHECK(iv.select(Branch::Upper) == iv.hi);

  auto hinge = GrowthSpec::hinge_plus(1.5);
  const auto z = hinge.inverse_G(0.0);
  CHECK(z.is_interval());
  CHECK(z.lo == 0.0);
  CHECK(z.hi == Catch::Approx(1.5));

  // no flat interval when g stays positive
  CHECK_FALSE(GrowthSpec::affine_plus(0.5, 1.0).inverse_G(0.3).is_interval());
  CHECK(trap.zero_intervals().size() == 1);
  CHECK(GrowthSpec::rational1().zero_intervals().empty());
}

TEST_CASE("levels above the range are rejected") {
  auto r2 = GrowthSpec::rational2();
  CHECK_THROWS_AS(r2.inverse_G(2.0), std::domain_error);
  CHECK_THROWS_AS(r2.inverse_G(M_PI / 2.0), std::domain_error);  // unattained sup
  CHECK_THROWS_WITH(r2.inverse_G(2.0),
                    Catch::Matchers::ContainsSubstring("level above range"));
  CHECK_NOTHROW(r2.inverse_G(M_PI / 2.0 - 1e-9));
}

TEST_CASE("classification table") {
  CHECK(GrowthSpec::constant(1.0).classify().tag == GrowthTag::StandardBounded);
  CHECK(GrowthSpec::constant(1.0).classify().inf_g == 1.0);
  CHECK(GrowthSpec::affine_plus(1.0, 1.0).classify().tag ==
        GrowthTag::StandardUnbounded);
  CHECK(GrowthSpec::rational1().classify().tag ==
        GrowthTag::VanishesAtInfinityNonIntegrable);
  const auto r2c = GrowthSpec::rational2().classify();
  CHECK(r2c.tag == GrowthTag::Integrable);
  CHECK(r2c.G_infinity == Catch::Approx(M_PI / 2.0));
  const auto hc = GrowthSpec::hinge_plus(1.0).classify();
  CHECK(hc.tag == GrowthTag::VanishesNearZero);
  CHECK(hc.interval_hi == Catch::Approx(1.0));
  CHECK(hc.nonuniqueness_warning);
  const auto tc = GrowthSpec::trapezoid(1.0, 2.0).classify();
  CHECK(tc.tag == GrowthTag::VanishesOnInterval);
  CHECK(tc.interval_lo == Catch::Approx(1.0));
  CHECK(tc.interval_hi == Catch::Approx(2.0));
  // piecewise profile touching zero at one point only
  CHECK(GrowthSpec::piecewise_linear({{0.0, 1.0}, {1.0, 0.0}, {2.0, 1.0}}, 0.0)
            .classify()
            .tag == GrowthTag::TouchesAxisNonIntegrable);
}

TEST_CASE("pointwise shift is exact") {
  const double eps = 0.125;
  for (const auto& g :
       {GrowthSpec::constant(2.0), GrowthSpec::affine_plus(1.0, 1.0),
        GrowthSpec::rational1(), GrowthSpec::rational2(),
        GrowthSpec::hinge_plus(1.0), GrowthSpec::trapezoid(1.0, 2.0),
        GrowthSpec::piecewise_linear({{0.0, 0.5}, {2.0, 0.0}}, 0.3)}) {
    const auto gs = g.shifted(eps);
    for (double s : {0.0, 0.4, 1.0, 1.7, 3.0, 10.0})
      CHECK(gs.g(s) == Catch::Approx(g.g(s) + eps).margin(1e-13));
    CHECK(gs.zero_intervals().empty());
    CHECK(gs.G(3.0) == Catch::Approx(G_quad(gs, 3.0)).epsilon(1e-10));
  }
}

TEST_CASE("pointwise truncation is exact where representable") {
  for (const auto& g :
       {GrowthSpec::constant(2.0), GrowthSpec::affine_plus(1.0, 1.0),
        GrowthSpec::hinge_plus(1.0), GrowthSpec::trapezoid(3.0, 4.0),
        GrowthSpec::piecewise_linear({{0.0, 0.5}, {1.0, 4.0}, {2.0, 1.0}}, 2.0)}) {
    for (double k : {0.5, 1.5, 2.5}) {
      const auto gk = g.truncated(k);
      for (double s : {0.0, 0.3, 1.0, 2.1, 3.5, 8.0})
        CHECK(gk.g(s) == Catch::Approx(std::min(g.g(s), k)).margin(1e-13));
    }
  }
  // identity when the cap sits above the supremum
  const auto r1 = GrowthSpec::rational1();
  CHECK(r1.truncated(2.0).g(0.0) == 1.0);
  CHECK_THROWS_AS(r1.truncated(0.5), std::invalid_argument);
  CHECK_THROWS_AS(GrowthSpec::rational2().truncated(0.5), std::invalid_argument);
}

TEST_CASE("invalid growth parameters are rejected") {
  CHECK_THROWS_AS(GrowthSpec::affine_plus(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GrowthSpec::trapezoid(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GrowthSpec::piecewise_linear({{0.5, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(GrowthSpec::piecewise_linear({{0.0, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(GrowthSpec::rational1().inverse_G(-0.1), std::invalid_argument);
}
