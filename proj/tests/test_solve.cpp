#include <doctest.h>

#include <cmath>

#include "jrp/error.hpp"
#include "jrp/eoq.hpp"
#include "jrp/generate.hpp"
#include "jrp/solve.hpp"
#include "support.hpp"

using namespace jrp;
using jrp::test::commodity;
using jrp::test::R;

namespace {

Instance single() {
  Instance inst;
  inst.commodities.push_back(commodity("a", R(25), R(1), R(2)));
  return inst;
}

template <class F>
double golden_min(F f, double lo, double hi) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  for (int i = 0; i < 300; ++i) {
    const double c = b - phi * (b - a), d = a + phi * (b - a);
    if (f(c) < f(d)) {
      b = d;
    } else {
      a = c;
    }
  }
  return (a + b) / 2.0;
}

std::vector<KBounds> uniform_bounds(const Instance& inst, std::int64_t hi) {
  return std::vector<KBounds>(inst.commodities.size(), KBounds{1, hi});
}

}  // namespace

TEST_CASE("choose_seed") {
  const auto sym = choose_seed({R(7, 3), R(7, 3)});
  CHECK(sym.exact);
  CHECK(sym.seed == R(1));
  CHECK(sym.squared_cost == R(4) * R(49, 9));

  const SeedCost c{R(26, 5), R(5)};
  const auto irr = choose_seed(c, SeedInterval{std::nullopt, std::nullopt});
  CHECK_FALSE(irr.exact);
  const double oracle = golden_min([&](double s) { return 26.0 / 5.0 / s + 5.0 * s; }, 0.1, 10.0);
  const auto f = [&](const Rational& s) { return (R(26, 5) / s + R(5) * s).to_double(); };
  CHECK(std::abs(f(irr.seed) / f(Rational::from_double(oracle)) - 1) < 1e-9);
  CHECK(std::abs(irr.seed.to_double() / oracle - 1) < 1e-7);
  CHECK(std::abs(std::sqrt(irr.squared_cost.to_double()) / (2 * std::sqrt(26.0)) - 1) < 1e-12);

  const Rational delta(1, 100);
  const auto clamped = choose_seed({R(1), R(4)}, SeedInterval{R(1), R(1) + delta});
  CHECK(clamped.clamped);
  CHECK(clamped.seed == R(1));
  CHECK(clamped.squared_cost == R(25));

  CHECK_THROWS_AS(choose_seed({R(1), R(0)}), Error);
}

TEST_CASE("optimize_seed is a minimum along the seed") {
  test::Gen g(53);
  for (int i = 0; i < 50; ++i) {
    std::mt19937_64 rng(g.integer(0, 1 << 30));
    const Instance inst = random_instance(rng, {3, 1, 10, 6});
    std::map<std::string, std::int64_t, std::less<>> prof;
    for (const auto& c : inst.commodities) prof[c.id] = g.integer(1, 10);
    const auto res = optimize_seed(inst, prof, SeedInterval{std::nullopt, std::nullopt});
    REQUIRE(res.profile);
    CHECK(res.cost.total == total_cost(inst, res.policy).total);
    const Rational beta = res.profile->seed;
    SeedProfile sp = *res.profile;
    for (const Rational& probe : {beta / R(2), beta * R(2), beta + R(1, 1000), beta - R(1, 1000)}) {
      sp.seed = probe;
      CHECK(res.cost.total <= total_cost(inst, expand_profile(sp)).total);
    }
  }
}

TEST_CASE("exhaustive search examples") {
  const auto joint = exhaustive_search(single(), uniform_bounds(single(), 10));
  const double t = joint.policy.cycles.at("a").to_double();
  CHECK(std::abs(t / std::sqrt(26.0) - 1) < 1e-9);
  CHECK(std::abs(joint.cost.total.to_double() / (2 * std::sqrt(26.0)) - 1) < 1e-9);
  CHECK(joint.profile->integer_profile.at("a") == 1);  // ties go to the smallest profile
  CHECK(joint.nodes_explored == 10);

  Instance nested;
  nested.commodities.push_back(commodity("a", R(16), R(1), R(2)));  // t* = 4
  nested.commodities.push_back(commodity("b", R(64), R(1), R(2)));  // t* = 8
  const auto res = exhaustive_search(nested, uniform_bounds(nested, 16), SeedInterval{R(1), R(1)});
  CHECK(res.profile->integer_profile.at("a") == 4);
  CHECK(res.profile->integer_profile.at("b") == 8);
  CHECK(res.cost.total == total_cost(nested, res.policy).total);

  const auto empty = exhaustive_search(Instance{}, {});
  CHECK(empty.policy.cycles.empty());
  CHECK(empty.cost.total == R(0));

  try {
    exhaustive_search(nested, uniform_bounds(nested, 2000));
    FAIL("expected cap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCapExceeded);
  }
}

TEST_CASE("exhaustive search matches a plain exact scan") {
  test::Gen g(59);
  for (int i = 0; i < 25; ++i) {
    std::mt19937_64 rng(g.integer(0, 1 << 30));
    const Instance inst = random_instance(rng, {2, 1, 6, 4});
    const SeedInterval iv{R(1), g.coin() ? std::optional<Rational>(R(3, 2)) : std::nullopt};
    const auto res = exhaustive_search(inst, uniform_bounds(inst, 9), iv);
    // plain scan, no floating-point screen
    std::optional<Rational> best;
    std::vector<std::int64_t> arg;
    for (std::int64_t a = 1; a <= 9; ++a) {
      for (std::int64_t b = 1; b <= 9; ++b) {
        SeedProfile sp;
        sp.integer_profile = {{inst.commodities[0].id, a}, {inst.commodities[1].id, b}};
        const auto key = choose_seed(seed_cost(inst, sp), iv).squared_cost;
        if (!best || key < *best) {
          best = key;
          arg = {a, b};
        }
      }
    }
    CHECK(res.profile->integer_profile.at(inst.commodities[0].id) == arg[0]);
    CHECK(res.profile->integer_profile.at(inst.commodities[1].id) == arg[1]);
  }
}

TEST_CASE("coordinate descent") {
  Instance inst;
  inst.commodities.push_back(commodity("a", R(16), R(1), R(2)));
  inst.commodities.push_back(commodity("b", R(121, 2), R(1), R(1)));
  const auto ex = exhaustive_search(inst, uniform_bounds(inst, 30));
  Policy at_opt;
  for (const auto& [id, k] : ex.profile->integer_profile) at_opt.cycles[id] = R(k);
  const auto fix = coordinate_descent(inst, at_opt);
  CHECK(fix.profile->integer_profile == ex.profile->integer_profile);

  Policy start;
  start.cycles = {{"a", R(7)}, {"b", R(11)}};
  const auto d = coordinate_descent(inst, start);
  CHECK(d.cost.total <= total_cost(inst, start).total);
  CHECK(d.cost.total == total_cost(inst, d.policy).total);

  int matches = 0;
  test::Gen g(61);
  for (int i = 0; i < 100; ++i) {
    std::mt19937_64 rng(g.integer(0, 1 << 30));
    const Instance r = random_instance(rng, {3, 1, 8, 6});
    const auto exhaustive = exhaustive_search(r, uniform_bounds(r, 16));
    const auto local = coordinate_descent(r, power_of_two(r).policy);
    CHECK(exhaustive.cost.total <= local.cost.total * R(1000001, 1000000));
    if (local.cost.total <= exhaustive.cost.total * R(1000001, 1000000)) ++matches;
  }
  MESSAGE("descent matched exhaustive on " << matches << "/100");
  CHECK(matches >= 80);
}

TEST_CASE("power of two") {
  CHECK(power_of_two_exponent(commodity("a", R(25), R(1), R(2)), R(1)) == 2);
  const auto fixed = power_of_two(single());
  CHECK(fixed.policy.cycles.at("a") == R(4));
  CHECK(standalone_cost(single().commodities[0], R(4)) == R(41, 4));
  CHECK(standalone_cost(single().commodities[0], R(8)) == R(89, 8));

  Instance exact;
  exact.commodities.push_back(commodity("a", R(64), R(1), R(2)));  // t* = 8
  CHECK(power_of_two(exact).policy.cycles.at("a") == R(8));
  CHECK(power_of_two(exact, {R(1, 4)}).policy.cycles.at("a") == R(8));
  // fractional standalone optimum below the base
  exact.commodities[0].setup = R(1, 100);
  CHECK(power_of_two_exponent(exact.commodities[0], R(1)) == -3);
  // the joint setup pulls the shared cycle up: tau^2 = (1/100 + 1) / 1
  CHECK(relaxed_cycles_squared(exact) == std::vector<Rational>{R(101, 100)});
  CHECK(power_of_two(exact).policy.cycles.at("a") == R(1));
}

TEST_CASE("power of two policies nest and their ratio to the exhaustive optimum") {
  test::Gen g(67);
  double worst_fixed = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::mt19937_64 rng(g.integer(0, 1 << 30));
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 3));
    const Instance inst = random_instance(rng, {n, 1, 8, 6});
    const auto pot = power_of_two(inst);
    const auto best = power_of_two(inst, {R(1), true});
    Rational shortest = pot.policy.cycles.begin()->second;
    for (const auto& [id, t] : pot.policy.cycles) shortest = std::min(shortest, t);
    CHECK(pot.cost.joint_frequency == shortest.inverse());
    for (const auto& [a, ta] : best.policy.cycles) {
      for (const auto& [b, tb] : best.policy.cycles) {
        CHECK(((ta / tb).is_integer() || (tb / ta).is_integer()));
      }
    }
    CHECK(best.cost.total <= pot.cost.total);
    const auto ex = exhaustive_search(inst, uniform_bounds(inst, 16));
    worst_fixed = std::max(worst_fixed, (pot.cost.total / ex.cost.total).to_double());
    CHECK((best.cost.total / ex.cost.total).to_double() <= 1.06);
  }
  MESSAGE("worst fixed-base ratio " << worst_fixed);
  CHECK(worst_fixed <= 1.06);
}
