#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jrp/cost.hpp"
#include "jrp/model.hpp"
#include "jrp/sat.hpp"
#include "jrp/sync.hpp"

namespace jrp {

/// Twin primes from here keep the clause penalty above the cost of flipping
/// variables for small formulas; starting lower (e.g. 11) can break the
/// roundtrip.
inline constexpr std::int64_t kDefaultPrimeStart = 41;

enum class ConstantsScheme {
  kPairProduct,  // one Constant per pair, t* = lower * upper
  kCyclic,       // t* = lower_i lower_{i+1}, upper_i upper_{i+1} (cyclic), plus t* = 1
  kNone,
};

std::string_view to_string(ConstantsScheme scheme);
ConstantsScheme parse_constants_scheme(std::string_view name);  // throws kInvalidArgument

struct ReductionConfig {
  std::int64_t prime_start = kDefaultPrimeStart;
  // Gap b_i for pair i; pairs beyond the list use the last entry, an empty
  // list means twin primes.
  std::vector<std::int64_t> gaps;
  ConstantsScheme constants = ConstantsScheme::kPairProduct;
  // alpha_v_bar is replaced by balanced_alpha_v_bar() unless set explicitly.
  ReductionConstants alpha;
  bool explicit_alpha_v_bar = false;
  Rational balance_epsilon{1, 1000000};
  SyncLimits sync;
};

bool is_prime(std::int64_t n);

/// n pairs (p, p + b_i), both prime, strictly increasing, each lower prime
/// above the previous upper one.
std::vector<PrimePair> select_prime_pairs(std::size_t n, std::int64_t start = kDefaultPrimeStart,
                                          const std::vector<std::int64_t>& gaps = {});

/// delta = 1 / (6 n upper_n^6).
Rational compute_delta(std::size_t n, const std::vector<PrimePair>& pairs);

/// lambda = 2, K = 1/(delta^2 + 2 delta), h = K / t*^2, so the optimum is t*
/// and the optimum with K0 = 1 added to K is (1 + delta) t*.
Commodity build_constant_commodity(std::string id, const BigInt& t_star, const Rational& delta,
                                   CommodityClass cls = CommodityClass::kConstant);

/// Product of the clause's literal primes: lower for a negative literal,
/// upper for a positive one. Throws kInvalidArgument on a literal out of range.
BigInt clause_target(const Clause& clause, const std::vector<PrimePair>& pairs);

Commodity build_clause_commodity(std::string id, const Clause& clause,
                                 const std::vector<PrimePair>& pairs, const Rational& delta);

/// h = a_c (p^2 - b^2) / (p (p + b/2) (b/2)),
/// K = h p (p + b) - ((p + b)/(p + b - 1)) a_c a_v_bar, lambda = 2.
/// Throws kConfigRejected when K <= 0 or the optimum leaves (p, p + b).
Commodity build_variable_commodity(std::string id, const PrimePair& pair,
                                   const ReductionConstants& constants);

/// Smallest a_v_bar that makes the lower prime the cheaper choice for every
/// variable whatever the others choose, times (1 + epsilon):
///   prod_j (1 - 1/upper_j) (1 + epsilon) / a_c.
/// The product is the largest joint-cost advantage of the upper prime
/// relative to the standalone advantage of the lower one, exact for the
/// pair-product and empty Constants schemes.
Rational balanced_alpha_v_bar(const std::vector<PrimePair>& pairs, const Rational& alpha_c,
                              const Rational& epsilon);

/// Constants' standalone optima under a scheme.
std::vector<BigInt> constant_targets(ConstantsScheme scheme, const std::vector<PrimePair>& pairs);

/// Builds the instance: Constants y1.., Variables x1.., Clauses z1.., K0 = 1,
/// lambda = 2 everywhere, metadata filled. Throws kNot3Sat, kConfigRejected.
Instance reduce(const CnfFormula& formula, const ReductionConfig& config = {});

/// Requires 1 <= beta <= 1 + delta (kInvalidArgument otherwise).
Policy assignment_to_policy(const Instance& reduction, const Assignment& a, const Rational& beta);

/// Inverse of assignment_to_policy; the seed is read off the first Constant,
/// or off the first Variable when there are no Constants.
Assignment policy_to_assignment(const Instance& reduction, const Policy& policy);

/// Seed of a policy built by assignment_to_policy.
Rational reduction_seed(const Instance& reduction, const Policy& policy);

/// True iff the cycle of some Variable of the clause divides the clause's cycle.
bool clause_synchronized(const Instance& reduction, const Policy& policy, std::size_t clause_index);

struct RoundtripReport {
  int num_vars = 0;
  std::size_t num_clauses = 0;
  Rational beta{1};
  std::optional<Assignment> sat_witness;  // brute_force_sat
  Assignment argmin;                      // cheapest assignment-policy, first in order on ties
  Rational min_cost;
  bool argmin_synchronizes_all = false;
  bool sync_iff_sat = false;
  std::optional<Rational> best_synchronized_cost;
  std::optional<Rational> best_unsynchronized_cost;
  std::optional<Rational> gap;  // unsynchronized - synchronized
  std::uint64_t policies_evaluated = 0;
  std::string scope;
};

inline constexpr int kRoundtripMaxVars = 10;
inline constexpr std::size_t kRoundtripMaxClauses = 15;

/// Reduces the formula and evaluates the 2^n assignment-policies at seed
/// beta exactly. Throws kCapExceeded beyond 10 variables or 15 clauses.
RoundtripReport verify_roundtrip(const CnfFormula& formula, const ReductionConfig& config = {},
                                 const Rational& beta = Rational(1));

struct VariableDirection {
  std::string variable_id;
  // max over the other variables' choices of cost(lower) - cost(upper) for
  // this variable, Variables' costs only; negative means lower is cheaper
  Rational worst_difference;
  bool holds = false;
};

struct GapReport {
  Rational beta;
  Rational tc_variables_low;   // all Variables at beta * lower
  Rational tc_variables_high;  // all Variables at beta * upper
  std::optional<Rational> clause_lower_bound;  // smallest marginal of an unsynchronized clause
  Rational margin;             // low - high + bound
  Rational target;             // 1/upper_n^6 at beta = 1, else 1/(4 upper_n^6)
  bool margin_positive = false;
  bool meets_target = false;
  bool direction_holds = false;  // tc_variables_low < tc_variables_high
  std::vector<VariableDirection> per_variable;
};

/// Requires reduction metadata and 1 <= beta <= 1 + delta.
GapReport check_gap_inequality(const Instance& reduction, const Rational& beta,
                               const SyncLimits& limits = {});

}  // namespace jrp
