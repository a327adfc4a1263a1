#include <doctest.h>

#include "jrp/error.hpp"
#include "jrp/sync.hpp"
#include "support.hpp"

using namespace jrp;
using jrp::test::R;

namespace {

using Families = std::vector<SeriesFamily>;

SeriesFamily F(std::vector<Rational> t) { return SeriesFamily::of(std::move(t)); }

// Random family: up to `max_series` integer multiples (<= 30) of a seed with
// denominator <= 50.
SeriesFamily random_family(test::Gen& g, int max_series) {
  const Rational seed = R(1) + Rational(g.integer(0, 49), g.integer(1, 50));
  std::vector<Rational> t;
  const int n = static_cast<int>(g.integer(1, max_series));
  for (int i = 0; i < n; ++i) t.push_back(seed * R(g.integer(1, 30)));
  return F(t);
}

}  // namespace

TEST_CASE("hyperperiod") {
  CHECK(hyperperiod(Families{F({R(2)}), F({R(3)})}) == R(6));
  CHECK(hyperperiod(Families{F({R(4)}), F({R(6)})}) == R(12));
  CHECK(hyperperiod(Families{F({R(3, 2)}), F({R(5, 2)})}) == R(15, 2));
  CHECK(lcm_rational(R(3, 2), R(5, 2)) == R(15, 2));
}

TEST_CASE("ujr examples") {
  CHECK(ujr(Families{F({R(2)}), F({R(3)})}) == R(2, 3));
  CHECK(ujr_enumerate(Families{F({R(2)}), F({R(3)})}) == R(2, 3));
  CHECK(ujr(Families{F({R(7, 3)})}) == R(3, 7));
  CHECK(ujr(Families{F({R(7, 3)}), F({R(7, 3)})}) == R(3, 7));
  CHECK(ujr_enumerate(Families{F({R(5)})}) == R(1, 5));
  CHECK(ujr_enumerate(Families{F({R(4)}), F({R(6)})}) == R(1, 3));
  CHECK(ujr(Families{}) == R(0));
  CHECK_THROWS_AS(ujr(Families{F({R(0)})}), Error);
}

TEST_CASE("only in-phase series are modeled") {
  SyncLimits shifted;
  shifted.assume_in_phase = false;
  const Families f{F({R(2)}), F({R(3)})};
  CHECK_THROWS_AS(ujr(f, shifted), Error);
  CHECK_THROWS_AS(ijr(f, shifted), Error);
  CHECK_THROWS_AS(ujr_enumerate(f, shifted), Error);
  CHECK_THROWS_AS(ijr_enumerate(f, shifted), Error);
}

TEST_CASE("ujr cap") {
  std::vector<Rational> primes;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73})
    primes.push_back(R(p));
  try {
    ujr(Families{F(primes)});
    FAIL("expected cap error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCapExceeded);
    CHECK(std::string(e.what()).find("ujr_enumerate") != std::string::npos);
  }
  // dominated series do not count towards the cap
  std::vector<Rational> multiples;
  for (int i = 1; i <= 40; ++i) multiples.push_back(R(2 * i));
  CHECK(ujr(Families{F(multiples)}) == R(1, 2));
  // a raised cap admits the prime set
  SyncLimits wide;
  wide.max_series = 21;
  primes.pop_back();
  CHECK(ujr(Families{F(primes)}, wide) > R(0));
}

TEST_CASE("ijr examples") {
  CHECK(ijr(Families{F({R(4)}), F({R(6)})}) == R(1, 12));
  CHECK(ijr(Families{F({R(9, 2)}), F({R(9, 2)})}) == R(2, 9));
  CHECK(ijr(Families{F({R(2)}), F({R(3)}), F({R(5)})}) == R(1, 30));
  CHECK(ijr_enumerate(Families{F({R(2)}), F({R(3)}), F({R(5)})}) == R(1, 30));
}

TEST_CASE("ijr between seeds") {
  auto a = ijr_cross_seed(R(1), R(101, 100));
  CHECK(a.q == 1);
  CHECK(a.r == 100);
  CHECK(a.value == R(1, 101));
  CHECK(ijr_enumerate(Families{F({R(1)}), F({R(101, 100)})}) == R(1, 101));

  auto b = ijr_cross_seed(R(1), R(1));
  CHECK(b.q == 0);
  CHECK(b.r == 1);
  CHECK(b.value == R(1));

  auto c = ijr_cross_seed(R(1), R(8, 7));
  CHECK(c.q == 1);
  CHECK(c.r == 7);
  CHECK(c.value == R(1, 8));
  CHECK(ijr_enumerate(Families{F({R(1)}), F({R(8, 7)})}) == R(1, 8));
  CHECK_THROWS_AS(ijr_cross_seed(R(0), R(1)), Error);
}

TEST_CASE("ijr between seeds agrees with enumeration") {
  test::Gen g(31);
  for (int i = 0; i < 200; ++i) {
    const Rational bi = R(1) + Rational(g.integer(0, 20), g.integer(1, 20));
    const Rational bj = bi * (R(1) + Rational(g.integer(0, 20), g.integer(1, 30)));
    const auto got = ijr_cross_seed(bi, bj);
    CHECK(got.value == ijr_enumerate(Families{F({bi}), F({bj})}));
    CHECK(got.value == ijr(Families{F({bi}), F({bj})}));
  }
}

TEST_CASE("ujr and ijr agree with enumeration (property)") {
  test::Gen g(2024);
  SyncLimits limits;
  limits.max_points = 200'000;
  int evaluated = 0;
  for (int i = 0; i < 5000 && evaluated < 500; ++i) {
    Families fam;
    const int families = static_cast<int>(g.integer(1, 3));
    int budget = 6;
    for (int f = 0; f < families && budget > 0; ++f) {
      fam.push_back(random_family(g, std::min(budget, 3)));
      budget -= static_cast<int>(fam.back().series.size());
    }
    try {
      const Rational u = ujr_enumerate(fam, limits);
      const Rational x = ijr_enumerate(fam, limits);
      CHECK(ujr(fam) == u);
      CHECK(ijr(fam) == x);
      ++evaluated;
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::kCapExceeded);
    }
  }
  CHECK(evaluated >= 500);
}

TEST_CASE("scaling all periods by a scales ujr and ijr by 1/a") {
  test::Gen g(77);
  for (int i = 0; i < 200; ++i) {
    Families fam{random_family(g, 3), random_family(g, 3)};
    const Rational a = g.positive_rational(40, 40);
    Families scaled = fam;
    for (auto& f : scaled)
      for (auto& s : f.series) s.period *= a;
    CHECK(ujr(scaled) == ujr(fam) / a);
    CHECK(ijr(scaled) == ijr(fam) / a);
  }
}

TEST_CASE("seed intersection is below delta") {
  // For 1 <= beta_i < beta_j <= 1 + delta with beta_j/beta_i = 1 + q/r:
  // value = 1/(beta_i (r+q)) <= 1/(r+q) <= 1/(a+1) < delta, a = floor(1/delta).
  int checked = 0;
  for (std::int64_t r = 1; r <= 200; ++r) {
    for (std::int64_t q = 1; q <= r; ++q) {
      if (std::gcd(q, r) != 1) continue;
      const Rational delta(q, r);
      const std::int64_t a = (Rational(1) / delta).floor().get_si();
      for (const Rational& bi : {R(1), R(1) + delta / R(3)}) {
        const Rational bj = bi * (R(1) + delta);
        if (bj > R(1) + delta && bi != R(1)) continue;
        const auto got = ijr_cross_seed(bi, bj);
        CHECK(got.q == q);
        CHECK(got.r == r);
        CHECK(got.value <= Rational(1, r + q));
        CHECK(Rational(1, r + q) <= Rational(1, a + 1));
        CHECK(Rational(1, a + 1) < delta);
        CHECK(got.value < delta);
        ++checked;
      }
    }
  }
  CHECK(checked > 10000);
}

TEST_CASE("cardinality identities") {
  const Families f23{F({R(2)}), F({R(3)})};
  auto one = check_cardinality_identities(f23, 1);
  CHECK(one.ok());
  CHECK(one.checks[0].lhs == R(2, 3));
  CHECK(one.checks[0].rhs == R(2, 3));

  const Families f235{F({R(2)}), F({R(3)}), F({R(5)})};
  auto two = check_cardinality_identities(f235, 2);
  CHECK(two.ok());
  CHECK(two.checks[0].lhs == R(1, 30));
  CHECK(two.checks[0].rhs == R(1, 6));
  CHECK(check_cardinality_identities(f235, 3).ok());

  const Families f4{F({R(4)}), F({R(6)}), F({R(4), R(5)}), F({R(6), R(7, 2)})};
  auto four = check_cardinality_identities(f4, 4);
  CHECK(four.checks[0].applicable);
  CHECK(four.ok());
  const Families not_contained{F({R(4)}), F({R(6)}), F({R(5)}), F({R(6)})};
  CHECK_FALSE(check_cardinality_identities(not_contained, 4).checks[0].applicable);
  CHECK_THROWS_AS(check_cardinality_identities(f23, 2), Error);

  test::Gen g(99);
  for (int i = 0; i < 300; ++i) {
    Families fam{random_family(g, 2), random_family(g, 2), random_family(g, 2)};
    SeriesFamily sup3 = fam[0];
    sup3.series.push_back(random_family(g, 1).series[0]);
    SeriesFamily sup4 = fam[1];
    sup4.series.push_back(random_family(g, 1).series[0]);
    Families quad{fam[0], fam[1], sup3, sup4};
    for (int which = 1; which <= 3; ++which) CHECK(check_cardinality_identities(fam, which).ok());
    const auto r4 = check_cardinality_identities(quad, 4);
    CHECK(r4.checks[0].applicable);
    CHECK(r4.ok());
  }
}
