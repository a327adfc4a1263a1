#include "jrp/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "jrp/eoq.hpp"
#include "jrp/error.hpp"
#include "jrp/parallel.hpp"

namespace jrp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

using Profile = std::map<std::string, std::int64_t, std::less<>>;

Profile to_profile(const Instance& instance, const std::vector<std::int64_t>& k) {
  Profile p;
  for (std::size_t i = 0; i < k.size(); ++i) p[instance.commodities[i].id] = k[i];
  return p;
}

SeedCost coefficients(const Instance& instance, const std::vector<std::int64_t>& k,
                      const SyncLimits& limits) {
  SeedProfile sp;
  sp.integer_profile = to_profile(instance, k);
  return seed_cost(instance, sp, limits);
}

SolveResult finish(const Instance& instance, const std::vector<std::int64_t>& k,
                   const SeedChoice& choice, SolveMethod method, const SyncLimits& limits) {
  SolveResult out;
  SeedProfile sp;
  sp.integer_profile = to_profile(instance, k);
  sp.seed = choice.seed;
  out.policy = expand_profile(sp);
  out.cost = total_cost(instance, out.policy, limits);
  out.method = method;
  out.profile = sp;
  out.seed_exact = choice.exact;
  return out;
}

// ---------------------------------------------------------------------------
// Floating-point screen for the exhaustive search. Each profile gets an
// approximate squared cost; only profiles within a relative 1e-9 of the best
// approximate value are re-ranked exactly, so rounding never decides a winner.

double approx_union(std::vector<std::int64_t> p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  std::vector<std::int64_t> kept;
  for (auto x : p) {
    if (std::none_of(kept.begin(), kept.end(), [x](std::int64_t y) { return x % y == 0; })) kept.push_back(x);
  }
  using Wide = unsigned __int128;
  constexpr Wide kHuge = Wide(1) << 100;  // terms beyond this are below double resolution
  double sum = 0.0;
  // depth-first over subsets, carrying the running lcm and sign
  auto visit = [&](auto&& self, std::size_t from, Wide l, int sign) -> void {
    for (std::size_t i = from; i < kept.size(); ++i) {
      const Wide x = static_cast<Wide>(kept[i]);
      Wide a = l, b = x;
      while (b != 0) {
        const Wide t = a % b;
        a = b;
        b = t;
      }
      const Wide m = l / a * x;
      sum += sign / static_cast<double>(m);
      if (m < kHuge) self(self, i + 1, m, -sign);
    }
  };
  visit(visit, 0, 1, 1);
  return sum;
}

struct ApproxModel {
  std::vector<double> setup;
  std::vector<double> half_holding;  // lambda h / 2
  double k0 = 0.0;
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();

  double squared_cost(const std::vector<std::int64_t>& k) const {
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
      a += setup[i] / static_cast<double>(k[i]);
      b += half_holding[i] * static_cast<double>(k[i]);
    }
    a += k0 * approx_union(k);
    double s = std::sqrt(a / b);
    if (s < lo) {
      s = lo;
    } else if (s > hi) {
      s = hi;
    } else {
      return 4.0 * a * b;
    }
    const double c = a / s + b * s;
    return c * c;
  }
};

class MixedRadix {
 public:
  explicit MixedRadix(const std::vector<KBounds>& bounds) : bounds_(bounds), k_(bounds.size()) {}

  void seek(std::uint64_t index) {
    for (std::size_t i = bounds_.size(); i-- > 0;) {
      const auto span = static_cast<std::uint64_t>(bounds_[i].hi - bounds_[i].lo + 1);
      k_[i] = bounds_[i].lo + static_cast<std::int64_t>(index % span);
      index /= span;
    }
  }
  void next() {
    for (std::size_t i = bounds_.size(); i-- > 0;) {
      if (k_[i] < bounds_[i].hi) {
        ++k_[i];
        return;
      }
      k_[i] = bounds_[i].lo;
    }
  }
  const std::vector<std::int64_t>& value() const { return k_; }

 private:
  const std::vector<KBounds>& bounds_;
  std::vector<std::int64_t> k_;
};

struct Ranked {
  Rational key;
  std::vector<std::int64_t> profile;
  SeedChoice choice;
};

// Strictly better: smaller exact key, then lexicographically smaller profile.
bool better(const Ranked& a, const std::optional<Ranked>& b) {
  if (!b) return true;
  if (a.key != b->key) return a.key < b->key;
  return a.profile < b->profile;
}

Ranked rank(const Instance& instance, const std::vector<std::int64_t>& k, const SeedInterval& interval,
            const SyncLimits& limits) {
  SeedChoice choice = choose_seed(coefficients(instance, k, limits), interval);
  Rational key = choice.squared_cost;
  return {std::move(key), k, std::move(choice)};
}

Rational squared(const Rational& x) { return x * x; }

// base * 2^m for any integer m
Rational times_pow2(const Rational& base, std::int64_t m) {
  const BigInt p = BigInt(1) << static_cast<mp_bitcnt_t>(m >= 0 ? m : -m);
  return m >= 0 ? base * Rational(p) : base / Rational(p);
}

}  // namespace

std::string_view to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::kSeed:
      return "seed";
    case SolveMethod::kExhaustive:
      return "exhaustive";
    case SolveMethod::kCoordinateDescent:
      return "descent";
    case SolveMethod::kPowerOfTwo:
      return "pot";
  }
  return "unknown";
}

SeedChoice choose_seed(const SeedCost& cost, const SeedInterval& interval) {
  if (cost.b.sign() <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "seed cost is degenerate: holding coefficient is zero");
  }
  if (interval.lo && interval.hi && *interval.hi < *interval.lo) {
    throw Error(ErrorCode::kInvalidArgument, "empty seed interval");
  }
  if (interval.lo && interval.lo->sign() <= 0) {
    throw Error(ErrorCode::kNonPositive, "seed interval must be positive");
  }
  const Rational ratio = cost.a / cost.b;  // s*^2
  SeedChoice out;
  if (interval.lo && ratio < squared(*interval.lo)) {
    out.seed = *interval.lo;
    out.clamped = true;
  } else if (interval.hi && ratio > squared(*interval.hi)) {
    out.seed = *interval.hi;
    out.clamped = true;
  } else if (ratio.is_zero()) {
    throw Error(ErrorCode::kInvalidArgument, "seed cost has no interior minimum and no lower bound");
  }
  if (out.clamped) {
    out.squared_cost = squared(cost.at(out.seed));
    return out;
  }
  Rational root;
  if (exact_sqrt(ratio, root)) {
    out.seed = root;
  } else {
    out.seed = sqrt_rational(ratio, 1e-15);
    out.exact = false;
    // keep the rounded seed inside the interval
    if (interval.lo && out.seed < *interval.lo) out.seed = *interval.lo;
    if (interval.hi && out.seed > *interval.hi) out.seed = *interval.hi;
  }
  out.squared_cost = Rational(4) * cost.a * cost.b;
  return out;
}

SolveResult optimize_seed(const Instance& instance, const Profile& integer_profile,
                          const SeedInterval& interval, const SyncLimits& limits) {
  const auto start = Clock::now();
  std::vector<std::int64_t> k;
  for (const auto& c : instance.commodities) {
    const auto it = integer_profile.find(c.id);
    if (it == integer_profile.end()) {
      throw Error(ErrorCode::kCoverageMismatch, "profile has no entry for '" + c.id + "'");
    }
    k.push_back(it->second);
  }
  if (integer_profile.size() != instance.commodities.size()) {
    throw Error(ErrorCode::kCoverageMismatch, "profile names commodities outside the instance");
  }
  const SeedChoice choice = choose_seed(coefficients(instance, k, limits), interval);
  SolveResult out = finish(instance, k, choice, SolveMethod::kSeed, limits);
  out.scope = "fixed integer profile x seed";
  out.nodes_explored = 1;
  out.wall_seconds = seconds_since(start);
  return out;
}

SolveResult exhaustive_search(const Instance& instance, const std::vector<KBounds>& bounds,
                              const SeedInterval& interval, const SearchLimits& limits) {
  const auto start = Clock::now();
  const std::size_t n = instance.commodities.size();
  if (bounds.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "need one k interval per commodity");
  }
  SolveResult out;
  out.method = SolveMethod::kExhaustive;
  out.scope = "integer profiles within bounds x seed";
  if (n == 0) {
    out.profile = SeedProfile{};
    return out;
  }
  BigInt total = 1;
  for (const auto& b : bounds) {
    if (b.lo < 1 || b.hi < b.lo) {
      throw Error(ErrorCode::kInvalidArgument, "k intervals must satisfy 1 <= lo <= hi");
    }
    total *= static_cast<unsigned long>(b.hi - b.lo + 1);
  }
  if (total > BigInt(static_cast<unsigned long>(limits.max_profiles))) {
    throw Error(ErrorCode::kCapExceeded, "search space has " + total.get_str() +
                                             " profiles, cap is " + std::to_string(limits.max_profiles));
  }
  const std::uint64_t count = total.get_ui();

  ApproxModel model;
  for (const auto& c : instance.commodities) {
    model.setup.push_back(c.setup.to_double());
    model.half_holding.push_back((c.demand * c.holding / Rational(2)).to_double());
  }
  model.k0 = instance.joint_setup.to_double();
  if (interval.lo) model.lo = interval.lo->to_double();
  if (interval.hi) model.hi = interval.hi->to_double();

  const unsigned workers = thread_count();
  std::vector<double> block_min(workers, std::numeric_limits<double>::infinity());
  parallel_blocks(
      count,
      [&](unsigned w, std::size_t begin, std::size_t end) {
        if (begin == end) return;
        MixedRadix it(bounds);
        it.seek(begin);
        for (std::size_t i = begin; i < end; ++i, it.next()) {
          block_min[w] = std::min(block_min[w], model.squared_cost(it.value()));
        }
      },
      workers);
  const double best_approx = *std::min_element(block_min.begin(), block_min.end());
  const double threshold = best_approx * (1.0 + 1e-9) + std::numeric_limits<double>::denorm_min();

  std::vector<std::optional<Ranked>> block_best(workers);
  parallel_blocks(
      count,
      [&](unsigned w, std::size_t begin, std::size_t end) {
        if (begin == end) return;
        MixedRadix it(bounds);
        it.seek(begin);
        for (std::size_t i = begin; i < end; ++i, it.next()) {
          if (!(model.squared_cost(it.value()) <= threshold)) continue;
          Ranked r = rank(instance, it.value(), interval, limits.sync);
          if (better(r, block_best[w])) block_best[w] = std::move(r);
        }
      },
      workers);
  std::optional<Ranked> best;
  for (auto& b : block_best) {
    if (b && better(*b, best)) best = std::move(b);
  }
  if (!best) throw std::logic_error("exhaustive search found no candidate");

  out = finish(instance, best->profile, best->choice, SolveMethod::kExhaustive, limits.sync);
  out.scope = "integer profiles within bounds x seed";
  out.nodes_explored = count;
  out.wall_seconds = seconds_since(start);
  return out;
}

std::vector<std::int64_t> default_candidates(const Instance& instance,
                                             const std::vector<std::int64_t>& profile,
                                             std::size_t index) {
  std::set<std::int64_t> out{profile[index]};
  for (std::size_t j = 0; j < profile.size(); ++j) {
    if (j == index) continue;
    for (std::int64_t m = 1; m <= 4; ++m) {
      out.insert(profile[j] * m);
      if (profile[j] % m == 0) out.insert(profile[j] / m);
    }
  }
  const double t = optimal_cycle(instance.commodities[index]).cycle.approx;
  const auto centre = static_cast<std::int64_t>(std::llround(std::min(t, 1e12)));
  for (std::int64_t d = -2; d <= 2; ++d) {
    if (centre + d >= 1) out.insert(centre + d);
  }
  return {out.begin(), out.end()};
}

SolveResult coordinate_descent(const Instance& instance, const Policy& start,
                               const CandidateFn& candidates, const SeedInterval& interval,
                               const SearchLimits& limits) {
  const auto t0 = Clock::now();
  const auto cycles = cycles_in_order(instance, start);
  std::vector<std::int64_t> k;
  for (const auto& t : cycles) {
    // nearest integer, halves rounded up, at least 1
    const BigInt rounded = (t + Rational(1, 2)).floor();
    k.push_back(std::max<std::int64_t>(1, rounded.get_si()));
  }
  SolveResult out;
  out.method = SolveMethod::kCoordinateDescent;
  if (k.empty()) {
    out.scope = "empty instance";
    return out;
  }
  Ranked current = rank(instance, k, interval, limits.sync);
  std::uint64_t evaluated = 1;
  for (std::size_t sweep = 0; sweep < limits.max_sweeps; ++sweep) {
    bool moved = false;
    for (std::size_t i = 0; i < k.size(); ++i) {
      std::optional<Ranked> best;
      for (const std::int64_t cand : candidates(instance, current.profile, i)) {
        if (cand < 1 || cand == current.profile[i]) continue;
        auto trial = current.profile;
        trial[i] = cand;
        Ranked r = rank(instance, trial, interval, limits.sync);
        ++evaluated;
        if (r.key < current.key && better(r, best)) best = std::move(r);
      }
      if (best) {
        current = std::move(*best);
        moved = true;
      }
    }
    // Joint move: rescale the whole profile by p/q and let the seed absorb
    // the change; single-coordinate moves cannot shift the common scale.
    std::optional<Ranked> best_scaled;
    for (std::int64_t num = 1; num <= 4; ++num) {
      for (std::int64_t den = 1; den <= 4; ++den) {
        if (num == den || std::gcd(num, den) != 1) continue;
        auto trial = current.profile;
        for (auto& x : trial) x = std::max<std::int64_t>(1, (2 * x * num + den) / (2 * den));
        if (trial == current.profile) continue;
        Ranked r = rank(instance, trial, interval, limits.sync);
        ++evaluated;
        if (r.key < current.key && better(r, best_scaled)) best_scaled = std::move(r);
      }
    }
    if (best_scaled) {
      current = std::move(*best_scaled);
      moved = true;
    }
    if (!moved) break;
  }
  out = finish(instance, current.profile, current.choice, SolveMethod::kCoordinateDescent, limits.sync);
  out.scope = "local optimum over candidate integer profiles x seed";
  out.nodes_explored = evaluated;
  out.wall_seconds = seconds_since(t0);
  return out;
}

std::vector<Rational> relaxed_cycles_squared(const Instance& instance) {
  const std::size_t n = instance.commodities.size();
  std::vector<Rational> out(n);
  std::vector<Rational> half_holding(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Commodity& c = instance.commodities[i];
    half_holding[i] = c.demand * c.holding / Rational(2);
    out[i] = c.setup / half_holding[i];  // t*^2
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return out[a] < out[b]; });
  // Grow the group sharing t0 while the next standalone optimum lies below it.
  Rational setup = instance.joint_setup;
  Rational holding;
  std::size_t grouped = 0;
  Rational t0_squared;
  while (grouped < n) {
    const std::size_t i = order[grouped];
    if (grouped > 0 && out[i] >= t0_squared) break;
    setup += instance.commodities[i].setup;
    holding += half_holding[i];
    t0_squared = setup / holding;
    ++grouped;
  }
  for (std::size_t j = 0; j < grouped; ++j) out[order[j]] = t0_squared;
  return out;
}

std::int64_t power_of_two_exponent(const Rational& tau_squared, const Rational& base) {
  if (base.sign() <= 0) throw Error(ErrorCode::kNonPositive, "power-of-two base must be positive");
  if (tau_squared.sign() <= 0) throw Error(ErrorCode::kNonPositive, "cycle must be positive");
  auto cycle = [&](std::int64_t m) { return times_pow2(base, m); };
  const double guess = std::log2(std::sqrt(tau_squared.to_double()) / base.to_double());
  std::int64_t m = std::isfinite(guess) ? static_cast<std::int64_t>(std::floor(guess)) : 0;
  // settle m so that (2^m b)^2 <= tau^2 < (2^(m+1) b)^2
  while (squared(cycle(m)) > tau_squared) --m;
  while (squared(cycle(m + 1)) <= tau_squared) ++m;
  // the log-space midpoint of [x, 2x] is sqrt(2) x
  return tau_squared > Rational(2) * squared(cycle(m)) ? m + 1 : m;
}

std::int64_t power_of_two_exponent(const Commodity& c, const Rational& base) {
  return power_of_two_exponent(Rational(2) * c.setup / (c.holding * c.demand), base);
}

SolveResult power_of_two(const Instance& instance, const PowerOfTwoOptions& options,
                         const SyncLimits& limits) {
  const auto start = Clock::now();
  if (options.base.sign() <= 0) throw Error(ErrorCode::kNonPositive, "power-of-two base must be positive");
  const auto tau_squared = relaxed_cycles_squared(instance);
  auto build = [&](const Rational& base) {
    Policy p;
    for (std::size_t i = 0; i < instance.commodities.size(); ++i) {
      p.cycles[instance.commodities[i].id] = times_pow2(base, power_of_two_exponent(tau_squared[i], base));
    }
    return p;
  };

  SolveResult out;
  out.method = SolveMethod::kPowerOfTwo;
  if (!options.optimize_base || instance.commodities.empty()) {
    out.policy = build(options.base);
    out.cost = total_cost(instance, out.policy, limits);
    out.scope = "power-of-two policies on a fixed base";
    out.nodes_explored = 1;
    out.wall_seconds = seconds_since(start);
    return out;
  }
  if (options.grid_per_octave < 1) throw Error(ErrorCode::kInvalidArgument, "grid must be positive");

  std::optional<std::pair<Rational, Policy>> best;
  bool best_exact = true;
  std::uint64_t explored = 0;
  auto consider = [&](Policy p, bool exact) {
    Rational c = total_cost(instance, p, limits).total;
    ++explored;
    if (!best || c < best->first) {
      best.emplace(std::move(c), std::move(p));
      best_exact = exact;
    }
  };
  for (int j = 0; j < options.grid_per_octave; ++j) {
    const Rational base =
        options.base * rationalize(std::exp2(static_cast<double>(j) / options.grid_per_octave), 1e-12);
    Policy p = build(base);
    // rescale the whole assignment by its optimal factor
    const SeedChoice s = choose_seed(scaling_coefficients(instance, p, limits), SeedInterval{std::nullopt, std::nullopt});
    Policy refined = p;
    for (auto& [id, t] : refined.cycles) t *= s.seed;
    consider(std::move(p), true);
    consider(std::move(refined), s.exact);
  }
  out.policy = std::move(best->second);
  out.cost = total_cost(instance, out.policy, limits);
  out.seed_exact = best_exact;
  out.scope = "power-of-two policies, base scanned and refined";
  out.nodes_explored = explored;
  out.wall_seconds = seconds_since(start);
  return out;
}

}  // namespace jrp
