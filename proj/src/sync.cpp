#include "jrp/sync.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>

#include "jrp/error.hpp"

namespace jrp {

namespace {

void require_positive(const Rational& t) {
  if (t.sign() <= 0) {
    throw Error(ErrorCode::kNonPositive, "order series period must be positive, got " + t.str());
  }
}

void require_series(const SeriesFamily& f) {
  if (f.series.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "series family '" + f.label + "' must contain at least one series");
  }
  for (const auto& s : f.series) require_positive(s.period);
}

// Common denominator of a set of rationals.
BigInt common_denominator(std::span<const Rational> values) {
  BigInt d = 1;
  for (const auto& v : values) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.raw().get_den_mpz_t());
  return d;
}

std::vector<BigInt> scaled(std::span<const Rational> values, const BigInt& d) {
  std::vector<BigInt> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.raw().get_num() * (d / v.raw().get_den()));
  return out;
}

// Sorted, deduplicated, and with every value that is a multiple of another
// value removed.
std::vector<BigInt> prune_dominated(std::vector<BigInt> p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  std::vector<BigInt> kept;
  for (const auto& x : p) {
    bool dominated = false;
    for (const auto& y : kept) {
      if (mpz_divisible_p(x.get_mpz_t(), y.get_mpz_t()) != 0) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(x);
  }
  return kept;
}

// Density of positive integers divisible by at least one of `p`, as an exact
// rational. Inclusion-exclusion with subsets merged by their lcm.
Rational integer_union_density(const std::vector<BigInt>& p) {
  if (p.empty()) return Rational(0);
  std::map<BigInt, std::int64_t> terms;
  for (const auto& x : p) {
    std::map<BigInt, std::int64_t> added;
    for (const auto& [l, c] : terms) {
      BigInt m;
      mpz_lcm(m.get_mpz_t(), l.get_mpz_t(), x.get_mpz_t());
      added[m] -= c;
    }
    added[x] += 1;
    for (const auto& [l, c] : added) {
      auto it = terms.find(l);
      if (it == terms.end()) {
        if (c != 0) terms.emplace(l, c);
      } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
      }
    }
  }
  BigInt big_l = 1;
  for (const auto& x : p) mpz_lcm(big_l.get_mpz_t(), big_l.get_mpz_t(), x.get_mpz_t());
  BigInt sum = 0;
  for (const auto& [l, c] : terms) {
    sum += BigInt(static_cast<signed long>(c)) * (big_l / l);
  }
  return Rational(sum, big_l);
}

std::vector<Rational> flatten(std::span<const SeriesFamily> families) {
  std::vector<Rational> out;
  for (const auto& f : families) {
    require_series(f);
    for (const auto& s : f.series) out.push_back(s.period);
  }
  return out;
}

void require_in_phase(const SyncLimits& limits) {
  if (!limits.assume_in_phase) {
    throw Error(ErrorCode::kInvalidArgument, "only in-phase series (all ordering at time 0) are modeled");
  }
}

struct ScaledHorizon {
  BigInt denominator;  // periods * denominator are integers
  std::int64_t horizon = 0;  // hyperperiod * denominator
};

ScaledHorizon enumeration_horizon(std::span<const Rational> periods, const SyncLimits& limits) {
  ScaledHorizon h;
  h.denominator = common_denominator(periods);
  BigInt big_t = 1;
  for (const auto& p : scaled(periods, h.denominator)) {
    mpz_lcm(big_t.get_mpz_t(), big_t.get_mpz_t(), p.get_mpz_t());
  }
  if (!big_t.fits_slong_p()) {
    throw Error(ErrorCode::kCapExceeded, "hyperperiod too large for explicit enumeration");
  }
  h.horizon = big_t.get_si();
  BigInt points = 0;
  for (const auto& p : scaled(periods, h.denominator)) points += big_t / p;
  if (points > BigInt(static_cast<unsigned long>(limits.max_points))) {
    throw Error(ErrorCode::kCapExceeded,
                "enumeration needs " + points.get_str() + " epochs, cap is " +
                    std::to_string(limits.max_points));
  }
  return h;
}

std::vector<std::int64_t> epochs_of(const SeriesFamily& f, const ScaledHorizon& h) {
  std::vector<std::int64_t> out;
  for (const auto& s : f.series) {
    const BigInt p = s.period.raw().get_num() * (h.denominator / s.period.raw().get_den());
    const std::int64_t step = p.get_si();
    for (std::int64_t e = step; e <= h.horizon; e += step) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Epochs as cells of the grid of multiples of g = gcd of all scaled periods,
// used when that grid is at most a few times the epoch budget.
struct EpochGrid {
  ScaledHorizon h;
  std::int64_t g = 1;
  std::size_t cells = 0;

  std::int64_t step_of(const OrderSeries& s) const {
    const BigInt p = s.period.raw().get_num() * (h.denominator / s.period.raw().get_den());
    return p.get_si();
  }

  static std::optional<EpochGrid> make(std::span<const SeriesFamily> families, const ScaledHorizon& h,
                                       const SyncLimits& limits) {
    EpochGrid grid;
    grid.h = h;
    std::int64_t g = 0;
    for (const auto& f : families) {
      for (const auto& s : f.series) g = std::gcd(g, grid.step_of(s));
    }
    const std::int64_t cells = h.horizon / g;
    if (cells > static_cast<std::int64_t>(4 * limits.max_points) + 64) return std::nullopt;
    grid.g = g;
    grid.cells = static_cast<std::size_t>(cells);
    return grid;
  }

  // fn(family index, cell) for every epoch of every series, families in order
  template <class Fn>
  void for_each_epoch(std::span<const SeriesFamily> families, Fn&& fn) const {
    for (std::size_t fi = 0; fi < families.size(); ++fi) {
      for (const auto& s : families[fi].series) {
        const std::int64_t step = step_of(s);
        for (std::int64_t e = step; e <= h.horizon; e += step) fn(fi, static_cast<std::size_t>(e / g));
      }
    }
  }
};

}  // namespace

SeriesFamily SeriesFamily::of(std::vector<Rational> periods, std::string label) {
  SeriesFamily f;
  f.label = std::move(label);
  for (auto& p : periods) f.series.push_back({std::move(p)});
  return f;
}

Rational lcm_rational(const Rational& a, const Rational& b) { return lcm(a, b); }

Rational hyperperiod(std::span<const SeriesFamily> families) {
  const auto periods = flatten(families);
  if (periods.empty()) throw Error(ErrorCode::kInvalidArgument, "hyperperiod of no series");
  Rational t = periods.front();
  for (const auto& p : periods) t = lcm(t, p);
  return t;
}

Rational union_rate(std::span<const Rational> periods, const SyncLimits& limits) {
  require_in_phase(limits);
  for (const auto& t : periods) require_positive(t);
  if (periods.empty()) return Rational(0);
  const BigInt d = common_denominator(periods);
  const auto pruned = prune_dominated(scaled(periods, d));
  if (pruned.size() > limits.max_series) {
    throw Error(ErrorCode::kCapExceeded,
                std::to_string(pruned.size()) + " distinct series exceed the inclusion-exclusion cap of " +
                    std::to_string(limits.max_series) + "; use ujr_enumerate");
  }
  // Rate per integer time unit, rescaled to the original time base.
  return integer_union_density(pruned) * Rational(d);
}

Rational ujr(std::span<const SeriesFamily> families, const SyncLimits& limits) {
  const auto periods = flatten(families);
  return union_rate(periods, limits);
}

Rational ujr_enumerate(std::span<const SeriesFamily> families, const SyncLimits& limits) {
  require_in_phase(limits);
  const auto periods = flatten(families);
  if (periods.empty()) return Rational(0);
  const auto h = enumeration_horizon(periods, limits);
  std::size_t count = 0;
  if (auto grid = EpochGrid::make(families, h, limits)) {
    std::vector<std::uint8_t> seen(grid->cells + 1, 0);
    grid->for_each_epoch(families, [&](std::size_t, std::size_t cell) {
      count += seen[cell] == 0;
      seen[cell] = 1;
    });
  } else {
    std::vector<std::int64_t> all;
    for (const auto& f : families) {
      auto e = epochs_of(f, h);
      all.insert(all.end(), e.begin(), e.end());
    }
    std::sort(all.begin(), all.end());
    count = static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
  }
  // |set| / T with T = horizon / denominator
  return Rational(BigInt(static_cast<unsigned long>(count)) * h.denominator,
                  BigInt(static_cast<signed long>(h.horizon)));
}

Rational ijr(std::span<const SeriesFamily> families, const SyncLimits& limits) {
  require_in_phase(limits);
  const auto periods = flatten(families);
  if (periods.empty()) return Rational(0);
  const BigInt d = common_denominator(periods);
  std::vector<std::vector<BigInt>> groups;
  BigInt tuples = 1;
  for (const auto& f : families) {
    std::vector<Rational> own;
    for (const auto& s : f.series) own.push_back(s.period);
    groups.push_back(prune_dominated(scaled(own, d)));
    tuples *= static_cast<unsigned long>(groups.back().size());
  }
  if (tuples > BigInt(static_cast<unsigned long>(limits.max_intersection_terms))) {
    throw Error(ErrorCode::kCapExceeded, "intersection expansion has " + tuples.get_str() +
                                             " terms; use ijr_enumerate");
  }
  std::vector<BigInt> picks{BigInt(1)};
  for (const auto& g : groups) {
    std::vector<BigInt> next;
    next.reserve(picks.size() * g.size());
    for (const auto& a : picks) {
      for (const auto& b : g) {
        BigInt m;
        mpz_lcm(m.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        next.push_back(std::move(m));
      }
    }
    picks = prune_dominated(std::move(next));
  }
  if (picks.size() > limits.max_series) {
    throw Error(ErrorCode::kCapExceeded,
                std::to_string(picks.size()) +
                    " intersection series exceed the inclusion-exclusion cap of " +
                    std::to_string(limits.max_series) + "; use ijr_enumerate");
  }
  return integer_union_density(picks) * Rational(d);
}

Rational ijr_enumerate(std::span<const SeriesFamily> families, const SyncLimits& limits) {
  require_in_phase(limits);
  const auto periods = flatten(families);
  if (periods.empty()) return Rational(0);
  const auto h = enumeration_horizon(periods, limits);
  std::size_t count = 0;
  if (auto grid = EpochGrid::make(families, h, limits); grid && families.size() < 255) {
    // depth[cell] = number of leading families that order at the cell
    std::vector<std::uint8_t> depth(grid->cells + 1, 0);
    grid->for_each_epoch(families, [&](std::size_t family, std::size_t cell) {
      if (depth[cell] == family) depth[cell] = static_cast<std::uint8_t>(family + 1);
    });
    count = static_cast<std::size_t>(std::count(depth.begin(), depth.end(), families.size()));
  } else {
    std::vector<std::int64_t> common = epochs_of(families.front(), h);
    for (std::size_t i = 1; i < families.size(); ++i) {
      const auto e = epochs_of(families[i], h);
      std::vector<std::int64_t> next;
      std::set_intersection(common.begin(), common.end(), e.begin(), e.end(),
                            std::back_inserter(next));
      common = std::move(next);
    }
    count = common.size();
  }
  return Rational(BigInt(static_cast<unsigned long>(count)) * h.denominator,
                  BigInt(static_cast<signed long>(h.horizon)));
}

CrossSeedIjr ijr_cross_seed(const Rational& beta_i, const Rational& beta_j) {
  if (beta_i.sign() <= 0 || beta_j.sign() <= 0) {
    throw Error(ErrorCode::kNonPositive, "seeds must be positive");
  }
  if (beta_j < beta_i) {
    throw Error(ErrorCode::kInvalidArgument, "ijr_cross_seed expects beta_i <= beta_j");
  }
  const Rational excess = beta_j / beta_i - Rational(1);
  CrossSeedIjr out;
  out.q = excess.num();
  out.r = excess.den();
  out.value = Rational(1) / (beta_i * Rational(BigInt(out.r + out.q)));
  return out;
}

bool family_contained_in(const SeriesFamily& inner, const SeriesFamily& outer) {
  // F_t lies inside a union of in-phase series iff t itself does, i.e. t is
  // an integer multiple of one of the outer periods.
  for (const auto& s : inner.series) {
    bool covered = false;
    for (const auto& o : outer.series) {
      if ((s.period / o.period).is_integer()) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

bool CardinalityReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const IdentityCheck& c) { return !c.applicable || c.holds; });
}

CardinalityReport check_cardinality_identities(std::span<const SeriesFamily> families, int which,
                                               const SyncLimits& limits) {
  static constexpr std::size_t kNeeded[] = {0, 2, 3, 3, 4};
  if (which < 1 || which > 4) {
    throw Error(ErrorCode::kInvalidArgument, "cardinality identity must be 1..4");
  }
  if (families.size() < kNeeded[which]) {
    throw Error(ErrorCode::kInvalidArgument, "identity " + std::to_string(which) + " needs " +
                                                 std::to_string(kNeeded[which]) + " families");
  }
  for (const auto& f : families) require_series(f);

  auto sub = [&](std::initializer_list<std::size_t> idx) {
    std::vector<SeriesFamily> out;
    for (auto i : idx) out.push_back(families[i]);
    return out;
  };
  auto u = [&](std::initializer_list<std::size_t> idx) { return ujr(sub(idx), limits); };
  auto in = [&](std::initializer_list<std::size_t> idx) { return ijr(sub(idx), limits); };

  IdentityCheck check;
  check.which = which;
  switch (which) {
    case 1:
      check.name = "UJR(F1,F2) = UJR(F1) + UJR(F2) - IJR(F1,F2)";
      check.lhs = u({0, 1});
      check.rhs = u({0}) + u({1}) - in({0, 1});
      check.holds = check.lhs == check.rhs;
      break;
    case 2:
      check.name = "IJR(F1,F2,F3) <= IJR(F1,F2)";
      check.lhs = in({0, 1, 2});
      check.rhs = in({0, 1});
      check.holds = check.lhs <= check.rhs;
      break;
    case 3: {
      check.name = "IJR(F1, F2 u F3) = IJR(F1,F2) + IJR(F1,F3) - IJR(F1,F2,F3)";
      SeriesFamily merged = families[1];
      merged.label += "+" + families[2].label;
      merged.series.insert(merged.series.end(), families[2].series.begin(),
                           families[2].series.end());
      const std::vector<SeriesFamily> pair{families[0], merged};
      check.lhs = ijr(pair, limits);
      check.rhs = in({0, 1}) + in({0, 2}) - in({0, 1, 2});
      check.holds = check.lhs == check.rhs;
      break;
    }
    case 4:
      check.name = "IJR(F1,F2) <= IJR(F3,F4) for F1 in F3, F2 in F4";
      if (!family_contained_in(families[0], families[2]) ||
          !family_contained_in(families[1], families[3])) {
        check.applicable = false;
        check.witness = "precondition F1 in F3 and F2 in F4 does not hold";
        break;
      }
      check.lhs = in({0, 1});
      check.rhs = in({2, 3});
      check.holds = check.lhs <= check.rhs;
      break;
  }
  if (check.applicable && !check.holds) {
    check.witness = "lhs=" + check.lhs.str() + " rhs=" + check.rhs.str();
  }
  CardinalityReport report;
  report.checks.push_back(std::move(check));
  return report;
}

}  // namespace jrp
