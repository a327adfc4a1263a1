#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jrp/cost.hpp"
#include "jrp/model.hpp"

namespace jrp {

enum class SolveMethod { kSeed, kExhaustive, kCoordinateDescent, kPowerOfTwo };

std::string_view to_string(SolveMethod method);

/// Closed interval of admissible seeds; a missing end is unbounded.
struct SeedInterval {
  std::optional<Rational> lo{Rational(1)};
  std::optional<Rational> hi;
};

struct SolveResult {
  Policy policy;
  CostBreakdown cost;  // total_cost(instance, policy), exact
  SolveMethod method = SolveMethod::kSeed;
  // What "optimal" refers to, e.g. "integer profiles within bounds x seed".
  std::string scope;
  std::uint64_t nodes_explored = 0;
  double wall_seconds = 0.0;
  std::optional<SeedProfile> profile;
  bool seed_exact = true;  // false when the seed is a rational approximation of an irrational optimum
};

struct SeedChoice {
  Rational seed;
  bool exact = true;
  bool clamped = false;
  // Square of the minimal value of a/s + b*s over the interval: 4ab when the
  // optimum is interior, the squared endpoint value when clamped. Exact, so
  // profiles can be ranked without rounding.
  Rational squared_cost;
};

/// Minimiser of a/s + b*s over the interval. Irrational optima are returned as
/// a rational within relative 1e-15. Throws kInvalidArgument when b = 0.
SeedChoice choose_seed(const SeedCost& cost, const SeedInterval& interval = {});

/// Best seed for a fixed integer profile (ids -> k_c).
SolveResult optimize_seed(const Instance& instance,
                          const std::map<std::string, std::int64_t, std::less<>>& integer_profile,
                          const SeedInterval& interval = {}, const SyncLimits& limits = {});

struct KBounds {
  std::int64_t lo = 1;
  std::int64_t hi = 1;
};

struct SearchLimits {
  std::uint64_t max_profiles = 1'000'000;
  std::size_t max_sweeps = 1000;
  SyncLimits sync;
};

/// Every integer profile with k_c in bounds[c] (instance order), each with
/// its best clamped seed. Ties go to the lexicographically smallest profile.
/// Throws kCapExceeded above limits.max_profiles.
SolveResult exhaustive_search(const Instance& instance, const std::vector<KBounds>& bounds,
                              const SeedInterval& interval = {}, const SearchLimits& limits = {});

/// Candidate integer cycles for commodity `index` given the current profile
/// (instance order).
using CandidateFn =
    std::function<std::vector<std::int64_t>(const Instance&, const std::vector<std::int64_t>&, std::size_t)>;

/// Multiples and divisors (factor <= 4) of the other entries, the integers
/// around the standalone optimum, and the current value.
std::vector<std::int64_t> default_candidates(const Instance& instance,
                                             const std::vector<std::int64_t>& profile,
                                             std::size_t index);

/// Best-response descent over integer profiles with the seed re-optimised at
/// every evaluation. Each sweep tries the candidates of every commodity in
/// turn, then rescales the whole profile by p/q (p, q <= 4). The start policy
/// is rounded to the nearest positive integer profile. Moves only on strict
/// improvement, so it terminates.
SolveResult coordinate_descent(const Instance& instance, const Policy& start,
                               const CandidateFn& candidates = default_candidates,
                               const SeedInterval& interval = {}, const SearchLimits& limits = {});

struct PowerOfTwoOptions {
  Rational base{1};
  bool optimize_base = false;
  int grid_per_octave = 64;
};

/// Squared cycle times of the relaxation
///   min K0/t0 + sum (K_c/t_c + lambda_c h_c t_c / 2)  subject to t_c >= t0,
/// in instance order. Commodities whose standalone optimum lies below the
/// shared cycle t0 are held at t0 and jointly carry K0; the rest keep their
/// standalone optimum. All values are exact rationals.
std::vector<Rational> relaxed_cycles_squared(const Instance& instance);

/// Integer m minimising |log2(2^m * base) - log2(tau)| given tau^2, ties to
/// the smaller m. For tau = t*_c this is the m minimising g_c(2^m * base).
std::int64_t power_of_two_exponent(const Rational& tau_squared, const Rational& base);

/// Exponent of the standalone rounding for one commodity.
std::int64_t power_of_two_exponent(const Commodity& c, const Rational& base);

/// t_c = 2^m_c * base with m_c rounding the relaxed cycle of commodity c. With
/// optimize_base, bases base * 2^(j/grid) for j < grid are scanned and each
/// resulting assignment is rescaled by its closed-form optimal factor.
SolveResult power_of_two(const Instance& instance, const PowerOfTwoOptions& options = {},
                         const SyncLimits& limits = {});

}  // namespace jrp
