#pragma once

#include <cstdint>
#include <random>

#include "jrp/model.hpp"

namespace jrp {

struct GenOptions {
  std::size_t n = 3;
  std::int64_t k_lo = 1;  // standalone optimal cycles are drawn from [k_lo, k_hi]
  std::int64_t k_hi = 8;
  std::int64_t max_den = 8;  // denominators of h, lambda and K0
};

/// Random instance whose commodities have integer standalone optima t*:
/// h and lambda are random rationals in [1/max_den, 4] and K = h lambda t*^2 / 2.
/// K0 is drawn the same way. Draws use modulo reduction of the raw 64-bit
/// output so a seed gives the same instance on every platform.
Instance random_instance(std::mt19937_64& rng, const GenOptions& options = {});

}  // namespace jrp
