#include <doctest.h>

#include <cmath>

#include "jrp/eoq.hpp"
#include "jrp/error.hpp"
#include "support.hpp"

using namespace jrp;
using jrp::test::commodity;
using jrp::test::R;

namespace {

// Golden-section minimiser on [lo, hi] used as an oracle for closed forms.
template <class F>
double golden_min(F f, double lo, double hi) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  for (int i = 0; i < 200 && b - a > 1e-14 * (std::abs(a) + std::abs(b)); ++i) {
    if (f(c) < f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - phi * (b - a);
    d = a + phi * (b - a);
  }
  return (a + b) / 2.0;
}

}  // namespace

TEST_CASE("standalone cost") {
  CHECK(standalone_cost(commodity("a", R(25), R(1), R(2)), R(5)) == R(10));
  CHECK(standalone_cost(commodity("a", R(8), R(1), R(1)), R(4)) == R(4));
  CHECK_THROWS_AS(standalone_cost(commodity("a", R(8), R(1), R(1)), R(0)), Error);
}

TEST_CASE("optimal cycle exact and inexact") {
  const auto a = optimal_cycle(commodity("a", R(25), R(1), R(2)));
  REQUIRE(a.cycle.is_exact());
  CHECK(*a.cycle.exact == R(5));
  CHECK(*a.cost.exact == R(10));
  const auto b = optimal_cycle(commodity("b", R(8), R(1), R(1)));
  CHECK(*b.cycle.exact == R(4));

  const auto c = optimal_cycle(commodity("c", R(13), R(1), R(1)));
  CHECK_FALSE(c.cycle.is_exact());
  CHECK(std::abs(c.cycle.approx / std::sqrt(26.0) - 1) < 1e-12);
  CHECK(std::abs(c.cost.approx / std::sqrt(26.0) - 1) < 1e-12);
}

TEST_CASE("eoq properties on random commodities") {
  test::Gen g(5);
  for (int i = 0; i < 200; ++i) {
    const auto c = commodity("c", g.positive_rational(500, 20), g.positive_rational(50, 20),
                             g.positive_rational(50, 20));
    const auto opt = optimal_cycle(c);
    if (opt.cycle.is_exact()) CHECK(standalone_cost(c, *opt.cycle.exact) == R(2) * c.setup / *opt.cycle.exact);

    // symmetry: h -> a h, lambda -> lambda / a
    const Rational scale = g.positive_rational(9, 9);
    auto d = c;
    d.holding = c.holding * scale;
    d.demand = c.demand / scale;
    CHECK(optimal_cycle(d).cycle.approx == doctest::Approx(opt.cycle.approx).epsilon(1e-15));

    // convexity at a midpoint
    const Rational t1 = g.positive_rational(100, 10);
    const Rational t3 = t1 + g.positive_rational(100, 10);
    const Rational t2 = (t1 + t3) / R(2);
    CHECK(standalone_cost(c, t2) * R(2) <= standalone_cost(c, t1) + standalone_cost(c, t3));

    // optimality against perturbations and a golden-section oracle
    const Rational ts = opt.cycle.exact ? *opt.cycle.exact : rationalize(opt.cycle.approx);
    const Rational g_star = standalone_cost(c, ts);
    for (const auto& eps : {R(1, 1000000), R(1, 1000), R(1, 10)}) {
      CHECK(g_star <= standalone_cost(c, ts * (R(1) + eps)));
      CHECK(g_star <= standalone_cost(c, ts * (R(1) - eps)));
    }
    const auto gd = [&](double t) { return standalone_cost(c, Rational::from_double(t)).to_double(); };
    const double oracle = golden_min(gd, opt.cycle.approx / 4, opt.cycle.approx * 4);
    CHECK(std::abs(oracle / opt.cycle.approx - 1) < 1e-7);
    CHECK(std::abs(gd(oracle) / opt.cost.approx - 1) < 1e-9);
  }
}

TEST_CASE("theta pair for a reduction-style constant") {
  // t* = 6, delta = 1/100
  const auto c = commodity("y", R(10000, 201), R(2500, 1809), R(2));
  const auto pair = theta_pair(c, R(1));
  REQUIRE(pair.lower.cycle.is_exact());
  REQUIRE(pair.upper.cycle.is_exact());
  CHECK(*pair.lower.cycle.exact == R(6));
  CHECK(*pair.upper.cycle.exact == R(303, 50));

  // t2 / t1 = 1 + delta for K = 1/(d^2 + 2d), h = K / t*^2, lambda = 2, K0 = 1
  test::Gen g(23);
  for (int i = 0; i < 100; ++i) {
    const Rational t = R(g.integer(1, 5000));
    const Rational delta(1, g.integer(2, 1000000));
    const Rational k = R(1) / (delta * delta + R(2) * delta);
    const auto p = theta_pair(commodity("y", k, k / (t * t), R(2)), R(1));
    REQUIRE(p.lower.cycle.is_exact());
    REQUIRE(p.upper.cycle.is_exact());
    CHECK(*p.lower.cycle.exact == t);
    CHECK(*p.upper.cycle.exact / *p.lower.cycle.exact == R(1) + delta);
    CHECK(pow(*p.upper.cycle.exact, 2) == pow(R(1) + delta, 2) * pow(t, 2));
  }

  // k0 -> 0: t2 -> t1
  const auto tiny = theta_pair(c, R(1, 1000000000));
  CHECK(tiny.upper.cycle.approx / tiny.lower.cycle.approx - 1 < 1e-8);
  CHECK_THROWS_AS(theta_pair(c, R(0)), Error);
}
