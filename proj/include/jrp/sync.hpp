#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jrp/rational.hpp"

namespace jrp {

/// In-phase order series {t, 2t, 3t, ...}; every series orders at time 0.
struct OrderSeries {
  Rational period;
};

/// Union of order series, e.g. all commodities that share one seed.
struct SeriesFamily {
  std::vector<OrderSeries> series;
  std::string label;

  static SeriesFamily of(std::vector<Rational> periods, std::string label = {});
};

struct SyncLimits {
  std::size_t max_series = 20;             // inclusion-exclusion, after pruning
  std::uint64_t max_points = 10'000'000;   // explicit enumeration
  std::uint64_t max_intersection_terms = 1u << 22;
  // Every series orders at time 0. Only in-phase series are modeled; passing
  // false makes every rate function throw kInvalidArgument rather than
  // return a number that silently assumes phase 0.
  bool assume_in_phase = true;
};

/// Smallest positive rational that is an integer multiple of both a and b.
Rational lcm_rational(const Rational& a, const Rational& b);

/// Least common multiple of every period in every family.
Rational hyperperiod(std::span<const SeriesFamily> families);

/// Average joint orders per period of the union of the given in-phase
/// periods. Exact inclusion-exclusion over the periods left after removing
/// duplicates and periods that are multiples of another (their series are
/// subsets). Throws Error(kCapExceeded) when more than max_series remain.
Rational union_rate(std::span<const Rational> periods, const SyncLimits& limits = {});

/// |union of all series| / T.
Rational ujr(std::span<const SeriesFamily> families, const SyncLimits& limits = {});

/// Oracle for ujr: builds the explicit epoch set over one hyperperiod.
Rational ujr_enumerate(std::span<const SeriesFamily> families, const SyncLimits& limits = {});

/// |intersection over families of (union of the family's series)| / T.
/// The intersection of unions is the union, over one series picked from
/// each family, of the series at the lcm of the picks.
Rational ijr(std::span<const SeriesFamily> families, const SyncLimits& limits = {});

/// Oracle for ijr by explicit enumeration.
Rational ijr_enumerate(std::span<const SeriesFamily> families, const SyncLimits& limits = {});

struct CrossSeedIjr {
  Rational value;  // IJR(F_beta_i, F_beta_j) = 1 / (beta_i (r + q))
  BigInt q;        // beta_j / beta_i = 1 + q/r, irreducible
  BigInt r;
};

/// Requires 0 < beta_i <= beta_j.
CrossSeedIjr ijr_cross_seed(const Rational& beta_i, const Rational& beta_j);

struct IdentityCheck {
  int which = 0;
  std::string name;
  bool applicable = true;
  bool holds = false;
  Rational lhs;
  Rational rhs;
  std::string witness;
};

struct CardinalityReport {
  std::vector<IdentityCheck> checks;
  bool ok() const;
};

/// Evaluates one of the four union/intersection cardinality characteristics
/// on families[0..]:
///   1  UJR(F1,F2) = UJR(F1) + UJR(F2) - IJR(F1,F2)
///   2  IJR(F1,F2,F3) <= IJR(F1,F2)
///   3  IJR(F1, F2 u F3) = IJR(F1,F2) + IJR(F1,F3) - IJR(F1,F2,F3)
///   4  IJR(F1,F2) <= IJR(F3,F4) when F1 is contained in F3 and F2 in F4
CardinalityReport check_cardinality_identities(std::span<const SeriesFamily> families, int which,
                                               const SyncLimits& limits = {});

/// True when every series of `inner` is a subset of the union of `outer`.
bool family_contained_in(const SeriesFamily& inner, const SeriesFamily& outer);

}  // namespace jrp
