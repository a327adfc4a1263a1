#pragma once

// Property suites driven by `jrp-forge check` and the acceptance runner.

#include <cstdint>
#include <string>
#include <vector>

#include "jrp/model.hpp"
#include "jrp/solve.hpp"

namespace jrp {

struct LemmaCheck {
  std::string name;
  std::string subject;  // commodity id, family list or beta, whatever the check is about
  bool applicable = true;
  bool holds = false;
  std::string lhs;  // exact "num/den" when the quantity is exact, decimal otherwise
  std::string rhs;
  std::string detail;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;
  bool ok() const;
};

/// EOQ and theta-pair identities per commodity, the four cardinality
/// characteristics on families built from rounded standalone cycles, both
/// routes of the marginal joint frequency, and the cross-seed intersection
/// formula. Instances carrying reduction metadata also get the theta identity
/// (t*, (1 + delta) t*), the jr sandwich and the gap inequality.
LemmaReport lemma_suite(const Instance& instance, const SyncLimits& limits = {});

struct PotRatioOptions {
  std::size_t count = 100;
  std::size_t n_max = 5;      // each instance draws n uniformly from [1, n_max]
  std::int64_t k_lo = 1;      // standalone optima drawn from [k_lo, k_hi]
  std::int64_t k_hi = 6;
  std::int64_t max_den = 6;
  std::uint64_t rng_seed = 0;
  bool optimize_base = true;
  double threshold = 1.06;
  SearchLimits limits;
};

struct PotRatioRow {
  std::size_t index = 0;
  std::size_t n = 0;
  Rational pot_cost;
  Rational exhaustive_cost;
  double ratio = 0.0;
};

struct PotRatioReport {
  std::vector<PotRatioRow> rows;
  double max_ratio = 0.0;
  std::size_t worst_index = 0;
  bool ok = false;  // max_ratio <= threshold
};

/// Exhaustive bounds used as the oracle family: k_c in [1, 2 ceil(t*_c)].
std::vector<KBounds> oracle_bounds(const Instance& instance);

/// Ratio of the power-of-two cost to the exhaustive optimum over
/// oracle_bounds on random instances. Instance i uses a generator seeded with
/// rng_seed + i, so any row can be reproduced on its own.
PotRatioReport pot_ratio_suite(const PotRatioOptions& options = {});

}  // namespace jrp
