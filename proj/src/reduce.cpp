#include "jrp/reduce.hpp"

#include <algorithm>
#include <set>

#include "jrp/error.hpp"
#include "jrp/parallel.hpp"

namespace jrp {

namespace {

const ReductionMeta& meta_of(const Instance& reduction) {
  if (!reduction.meta) {
    throw Error(ErrorCode::kMissingConstants, "instance carries no reduction metadata");
  }
  return *reduction.meta;
}

void require_seed(const ReductionMeta& meta, const Rational& beta) {
  if (beta < Rational(1) || beta > Rational(1) + meta.delta) {
    throw Error(ErrorCode::kInvalidArgument,
                "seed " + beta.str() + " outside [1, 1 + delta]");
  }
}

Rational rat(std::int64_t v) { return Rational(v); }

// Variables' share of the cost: standalone costs plus their marginal joint
// frequency over the Constants.
Rational variables_cost(const Instance& reduction, const std::vector<Rational>& constant_cycles,
                        const std::vector<Rational>& variable_cycles, const Rational& u_const,
                        const SyncLimits& limits) {
  const auto& meta = *reduction.meta;
  Rational total;
  for (std::size_t i = 0; i < variable_cycles.size(); ++i) {
    const Commodity& c = reduction.commodities[reduction.index_of(meta.variable_ids[i])];
    total += c.setup / variable_cycles[i] + c.demand * c.holding * variable_cycles[i] / Rational(2);
  }
  auto all = constant_cycles;
  all.insert(all.end(), variable_cycles.begin(), variable_cycles.end());
  return total + reduction.joint_setup * (union_rate(all, limits) - u_const);
}

std::vector<Rational> variable_cycles_for(const ReductionMeta& meta, const Assignment& a,
                                          const Rational& beta) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < meta.pairs.size(); ++i) {
    out.push_back(beta * rat(a[i] ? meta.pairs[i].upper() : meta.pairs[i].lower));
  }
  return out;
}

std::vector<Rational> constant_cycles_for(const ReductionMeta& meta, const Rational& beta) {
  std::vector<Rational> out;
  for (const auto& c : meta.constants) out.push_back(beta * Rational(c.t_star));
  return out;
}

bool literal_true(int lit, const Assignment& a) {
  const bool v = a.at(static_cast<std::size_t>(std::abs(lit)) - 1);
  return lit > 0 ? v : !v;
}

}  // namespace

std::string_view to_string(ConstantsScheme scheme) {
  switch (scheme) {
    case ConstantsScheme::kPairProduct:
      return "pair-product";
    case ConstantsScheme::kCyclic:
      return "cyclic";
    case ConstantsScheme::kNone:
      return "none";
  }
  return "unknown";
}

ConstantsScheme parse_constants_scheme(std::string_view name) {
  if (name == "pair-product") return ConstantsScheme::kPairProduct;
  if (name == "cyclic") return ConstantsScheme::kCyclic;
  if (name == "none") return ConstantsScheme::kNone;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown constants scheme '" + std::string(name) + "' (pair-product|cyclic|none)");
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<PrimePair> select_prime_pairs(std::size_t n, std::int64_t start,
                                          const std::vector<std::int64_t>& gaps) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "need at least one prime pair");
  for (const auto b : gaps) {
    if (b <= 0 || b % 2 != 0) {
      throw Error(ErrorCode::kInvalidArgument, "prime gaps must be positive and even");
    }
  }
  std::vector<PrimePair> out;
  std::int64_t p = std::max<std::int64_t>(start, 3);
  while (out.size() < n) {
    const std::int64_t b = gaps.empty() ? 2 : gaps[std::min(out.size(), gaps.size() - 1)];
    if (is_prime(p) && is_prime(p + b)) {
      out.push_back({p, b});
      p += b + 1;  // the next lower prime must exceed this upper one
    } else {
      ++p;
    }
  }
  return out;
}

Rational compute_delta(std::size_t n, const std::vector<PrimePair>& pairs) {
  if (pairs.empty() || n == 0) throw Error(ErrorCode::kInvalidArgument, "delta needs at least one pair");
  const BigInt upper = pairs.back().upper();
  BigInt sixth;
  mpz_pow_ui(sixth.get_mpz_t(), upper.get_mpz_t(), 6);
  return Rational(BigInt(1), BigInt(6) * BigInt(static_cast<unsigned long>(n)) * sixth);
}

Commodity build_constant_commodity(std::string id, const BigInt& t_star, const Rational& delta,
                                   CommodityClass cls) {
  if (t_star < 1) throw Error(ErrorCode::kNonPositive, "t* must be a positive integer");
  if (delta.sign() <= 0) throw Error(ErrorCode::kNonPositive, "delta must be positive");
  Commodity c;
  c.id = std::move(id);
  c.cls = cls;
  c.demand = Rational(2);
  c.setup = (delta * delta + Rational(2) * delta).inverse();
  c.holding = c.setup / Rational(t_star * t_star);
  return c;
}

BigInt clause_target(const Clause& clause, const std::vector<PrimePair>& pairs) {
  BigInt t = 1;
  for (const int lit : clause) {
    const auto var = static_cast<std::size_t>(std::abs(lit));
    if (lit == 0 || var > pairs.size()) {
      throw Error(ErrorCode::kInvalidArgument, "literal " + std::to_string(lit) + " has no prime pair");
    }
    const PrimePair& p = pairs[var - 1];
    t *= static_cast<long>(lit > 0 ? p.upper() : p.lower);
  }
  return t;
}

Commodity build_clause_commodity(std::string id, const Clause& clause,
                                 const std::vector<PrimePair>& pairs, const Rational& delta) {
  return build_constant_commodity(std::move(id), clause_target(clause, pairs), delta,
                                  CommodityClass::kClause);
}

Commodity build_variable_commodity(std::string id, const PrimePair& pair,
                                   const ReductionConstants& constants) {
  const std::string name = "(" + std::to_string(pair.lower) + ", " + std::to_string(pair.upper()) + ")";
  if (constants.alpha_c.sign() <= 0 || constants.alpha_v_bar.sign() < 0) {
    throw Error(ErrorCode::kConfigRejected, "pair " + name + ": alpha_c must be positive, alpha_v_bar >= 0");
  }
  const Rational p = rat(pair.lower);
  const Rational b = rat(pair.gap);
  const Rational half_b = b / Rational(2);
  Commodity c;
  c.id = std::move(id);
  c.cls = CommodityClass::kVariable;
  c.demand = Rational(2);
  c.holding = constants.alpha_c * (p * p - b * b) / (p * (p + half_b) * half_b);
  c.setup = c.holding * p * (p + b) -
            (p + b) / (p + b - Rational(1)) * constants.alpha_c * constants.alpha_v_bar;
  if (c.holding.sign() <= 0 || c.setup.sign() <= 0) {
    throw Error(ErrorCode::kConfigRejected,
                "pair " + name + ": constants give non-positive K = " + c.setup.decimal(6));
  }
  // t*^2 = K/h since lambda = 2
  const Rational t2 = c.setup / c.holding;
  if (!(t2 > p * p && t2 < (p + b) * (p + b))) {
    throw Error(ErrorCode::kConfigRejected,
                "pair " + name + ": standalone optimum sqrt(" + t2.decimal(8) + ") leaves the pair");
  }
  return c;
}

Rational balanced_alpha_v_bar(const std::vector<PrimePair>& pairs, const Rational& alpha_c,
                              const Rational& epsilon) {
  if (alpha_c.sign() <= 0) throw Error(ErrorCode::kConfigRejected, "alpha_c must be positive");
  Rational prod(1);
  for (const auto& p : pairs) prod *= Rational(1) - Rational(1, p.upper());
  return prod * (Rational(1) + epsilon) / alpha_c;
}

std::vector<BigInt> constant_targets(ConstantsScheme scheme, const std::vector<PrimePair>& pairs) {
  std::vector<BigInt> out;
  const std::size_t n = pairs.size();
  switch (scheme) {
    case ConstantsScheme::kPairProduct:
      for (const auto& p : pairs) out.push_back(BigInt(static_cast<long>(p.lower)) * p.upper());
      break;
    case ConstantsScheme::kCyclic: {
      std::set<BigInt> seen;
      for (std::size_t i = 0; i < n; ++i) {
        const auto& a = pairs[i];
        const auto& b = pairs[(i + 1) % n];
        for (const BigInt& t : {BigInt(BigInt(static_cast<long>(a.lower)) * b.lower),
                              BigInt(BigInt(static_cast<long>(a.upper())) * b.upper())}) {
          if (seen.insert(t).second) out.push_back(t);
        }
      }
      if (seen.insert(BigInt(1)).second) out.push_back(BigInt(1));
      break;
    }
    case ConstantsScheme::kNone:
      break;
  }
  return out;
}

Instance reduce(const CnfFormula& formula, const ReductionConfig& config) {
  validate_3sat(formula);
  if (formula.num_vars < 1) throw Error(ErrorCode::kNot3Sat, "formula has no variables");
  const auto n = static_cast<std::size_t>(formula.num_vars);

  ReductionMeta meta;
  meta.pairs = select_prime_pairs(n, config.prime_start, config.gaps);
  meta.delta = compute_delta(n, meta.pairs);
  meta.alpha = config.alpha;
  if (!config.explicit_alpha_v_bar) {
    meta.alpha.alpha_v_bar = balanced_alpha_v_bar(meta.pairs, config.alpha.alpha_c, config.balance_epsilon);
  }
  meta.constants_scheme = std::string(to_string(config.constants));

  Instance inst;
  inst.joint_setup = Rational(1);
  const auto targets = constant_targets(config.constants, meta.pairs);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const std::string id = "y" + std::to_string(i + 1);
    inst.commodities.push_back(build_constant_commodity(id, targets[i], meta.delta));
    meta.constants.push_back({id, targets[i]});
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = "x" + std::to_string(i + 1);
    inst.commodities.push_back(build_variable_commodity(id, meta.pairs[i], meta.alpha));
    meta.variable_ids.push_back(id);
  }
  for (std::size_t j = 0; j < formula.clauses.size(); ++j) {
    const std::string id = "z" + std::to_string(j + 1);
    const Clause& clause = formula.clauses[j];
    inst.commodities.push_back(build_clause_commodity(id, clause, meta.pairs, meta.delta));
    meta.clauses.push_back({id, {clause[0], clause[1], clause[2]}, clause_target(clause, meta.pairs)});
  }
  inst.meta = std::move(meta);
  const auto report = validate_instance(inst);
  if (!report.ok()) {
    throw std::logic_error("reduction produced an invalid instance: " + report.violations[0].message);
  }
  return inst;
}

Policy assignment_to_policy(const Instance& reduction, const Assignment& a, const Rational& beta) {
  const auto& meta = meta_of(reduction);
  require_seed(meta, beta);
  if (a.size() != meta.pairs.size()) {
    throw Error(ErrorCode::kInvalidArgument, "assignment has " + std::to_string(a.size()) +
                                                 " values for " + std::to_string(meta.pairs.size()) +
                                                 " variables");
  }
  Policy p;
  for (const auto& c : meta.constants) p.cycles[c.commodity_id] = beta * Rational(c.t_star);
  const auto vars = variable_cycles_for(meta, a, beta);
  for (std::size_t i = 0; i < vars.size(); ++i) p.cycles[meta.variable_ids[i]] = vars[i];
  for (const auto& z : meta.clauses) p.cycles[z.commodity_id] = beta * Rational(z.t_star);
  return p;
}

Rational reduction_seed(const Instance& reduction, const Policy& policy) {
  const auto& meta = meta_of(reduction);
  if (!meta.constants.empty()) return policy_seed(reduction, policy);
  if (meta.pairs.empty()) return Rational(1);
  // Without Constants the first Variable fixes the seed up to its choice;
  // the seed window is far narrower than the gap between the two primes.
  const Rational t = policy.cycles.at(meta.variable_ids.front());
  const Rational low = t / rat(meta.pairs.front().lower);
  return low <= Rational(1) + meta.delta ? low : t / rat(meta.pairs.front().upper());
}

Assignment policy_to_assignment(const Instance& reduction, const Policy& policy) {
  const auto& meta = meta_of(reduction);
  const Rational beta = reduction_seed(reduction, policy);
  Assignment a;
  for (std::size_t i = 0; i < meta.pairs.size(); ++i) {
    const auto it = policy.cycles.find(meta.variable_ids[i]);
    if (it == policy.cycles.end()) {
      throw Error(ErrorCode::kCoverageMismatch, "policy has no cycle for " + meta.variable_ids[i]);
    }
    const Rational k = it->second / beta;
    if (k == rat(meta.pairs[i].lower)) {
      a.push_back(false);
    } else if (k == rat(meta.pairs[i].upper())) {
      a.push_back(true);
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  meta.variable_ids[i] + " cycle " + it->second.str() + " is not seed times a pair prime");
    }
  }
  return a;
}

bool clause_synchronized(const Instance& reduction, const Policy& policy, std::size_t clause_index) {
  const auto& meta = meta_of(reduction);
  const auto& z = meta.clauses.at(clause_index);
  const Rational tz = policy.cycles.at(z.commodity_id);
  return std::any_of(z.literals.begin(), z.literals.end(), [&](int lit) {
    const Rational tx = policy.cycles.at(meta.variable_ids.at(static_cast<std::size_t>(std::abs(lit)) - 1));
    return (tz / tx).is_integer();
  });
}

RoundtripReport verify_roundtrip(const CnfFormula& formula, const ReductionConfig& config,
                                 const Rational& beta) {
  if (formula.num_vars > kRoundtripMaxVars || formula.clauses.size() > kRoundtripMaxClauses) {
    throw Error(ErrorCode::kCapExceeded, "roundtrip is limited to " + std::to_string(kRoundtripMaxVars) +
                                             " variables and " + std::to_string(kRoundtripMaxClauses) +
                                             " clauses");
  }
  const Instance inst = reduce(formula, config);
  const auto& meta = *inst.meta;
  require_seed(meta, beta);

  RoundtripReport report;
  report.num_vars = formula.num_vars;
  report.num_clauses = formula.clauses.size();
  report.beta = beta;
  report.sat_witness = brute_force_sat(formula);
  report.scope = "assignment-policies only (2^n), common seed " + beta.str();

  const std::uint64_t count = std::uint64_t{1} << formula.num_vars;
  std::vector<Rational> costs(count);
  std::vector<char> synced(count);
  parallel_blocks(count, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Assignment a = assignment_from_index(formula.num_vars, i);
      const Policy p = assignment_to_policy(inst, a, beta);
      costs[i] = total_cost(inst, p, config.sync).total;
      bool all = true;
      for (std::size_t j = 0; j < meta.clauses.size() && all; ++j) all = clause_synchronized(inst, p, j);
      synced[i] = all ? 1 : 0;
    }
  });
  report.policies_evaluated = count;
  std::size_t best = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (costs[i] < costs[best]) best = i;
    auto& slot = synced[i] ? report.best_synchronized_cost : report.best_unsynchronized_cost;
    if (!slot || costs[i] < *slot) slot = costs[i];
  }
  report.argmin = assignment_from_index(formula.num_vars, best);
  report.min_cost = costs[best];
  report.argmin_synchronizes_all = synced[best] != 0;
  report.sync_iff_sat = report.argmin_synchronizes_all == report.sat_witness.has_value();
  if (report.best_synchronized_cost && report.best_unsynchronized_cost) {
    report.gap = *report.best_unsynchronized_cost - *report.best_synchronized_cost;
  }
  return report;
}

GapReport check_gap_inequality(const Instance& reduction, const Rational& beta, const SyncLimits& limits) {
  const auto& meta = meta_of(reduction);
  require_seed(meta, beta);
  const std::size_t n = meta.pairs.size();
  if (n > static_cast<std::size_t>(kRoundtripMaxVars)) {
    throw Error(ErrorCode::kCapExceeded, "gap check enumerates 2^n assignments, n is capped at 10");
  }
  GapReport out;
  out.beta = beta;
  const auto constants = constant_cycles_for(meta, beta);
  const Rational u_const = union_rate(constants, limits);
  const auto tc_vars = [&](const Assignment& a) {
    return variables_cost(reduction, constants, variable_cycles_for(meta, a, beta), u_const, limits);
  };
  out.tc_variables_low = tc_vars(Assignment(n, false));
  out.tc_variables_high = tc_vars(Assignment(n, true));
  out.direction_holds = out.tc_variables_low < out.tc_variables_high;

  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<Rational> var_cost(count);
  for (std::uint64_t i = 0; i < count; ++i) var_cost[i] = tc_vars(assignment_from_index(static_cast<int>(n), i));
  for (std::size_t v = 0; v < n; ++v) {
    VariableDirection d;
    d.variable_id = meta.variable_ids[v];
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - v);
    bool first = true;
    for (std::uint64_t i = 0; i < count; ++i) {
      if (i & bit) continue;
      const Rational diff = var_cost[i] - var_cost[i | bit];
      if (first || diff > d.worst_difference) d.worst_difference = diff;
      first = false;
    }
    d.holds = d.worst_difference.sign() < 0;
    out.per_variable.push_back(std::move(d));
  }

  // smallest marginal joint frequency of a clause left unsynchronized
  for (std::uint64_t i = 0; i < count; ++i) {
    const Assignment a = assignment_from_index(static_cast<int>(n), i);
    auto base = constants;
    for (const auto& t : variable_cycles_for(meta, a, beta)) base.push_back(t);
    for (std::size_t j = 0; j < meta.clauses.size(); ++j) {
      const auto& z = meta.clauses[j];
      if (std::any_of(z.literals.begin(), z.literals.end(), [&](int lit) { return literal_true(lit, a); })) {
        continue;
      }
      auto others = base;
      for (std::size_t k = 0; k < meta.clauses.size(); ++k) {
        if (k != j) others.push_back(beta * Rational(meta.clauses[k].t_star));
      }
      auto with = others;
      with.push_back(beta * Rational(z.t_star));
      const Rational marginal = reduction.joint_setup * (union_rate(with, limits) - union_rate(others, limits));
      if (!out.clause_lower_bound || marginal < *out.clause_lower_bound) out.clause_lower_bound = marginal;
    }
  }

  out.margin = out.tc_variables_low - out.tc_variables_high +
               (out.clause_lower_bound ? *out.clause_lower_bound : Rational(0));
  BigInt sixth;
  const BigInt upper = meta.pairs.back().upper();
  mpz_pow_ui(sixth.get_mpz_t(), upper.get_mpz_t(), 6);
  out.target = beta == Rational(1) ? Rational(BigInt(1), sixth) : Rational(BigInt(1), BigInt(4) * sixth);
  out.margin_positive = out.margin.sign() > 0;
  out.meets_target = out.margin > out.target;
  return out;
}

}  // namespace jrp
