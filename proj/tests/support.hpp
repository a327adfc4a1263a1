#pragma once

// Small helpers shared by the unit tests: a seeded generator and constructors
// for commodities written in one line.

#include <cstdint>
#include <random>
#include <string>

#include "jrp/model.hpp"

namespace jrp::test {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  Rational positive_rational(std::int64_t max_num, std::int64_t max_den) {
    return Rational(integer(1, max_num), integer(1, max_den));
  }
  bool coin() { return integer(0, 1) == 1; }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline Commodity commodity(std::string id, Rational k, Rational h, Rational lambda,
                           CommodityClass cls = CommodityClass::kGeneric) {
  Commodity c;
  c.id = std::move(id);
  c.cls = cls;
  c.setup = std::move(k);
  c.holding = std::move(h);
  c.demand = std::move(lambda);
  return c;
}

inline Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

}  // namespace jrp::test
