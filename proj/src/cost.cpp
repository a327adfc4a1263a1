#include "jrp/cost.hpp"

#include <sstream>
#include <stdexcept>

#include "jrp/eoq.hpp"
#include "jrp/error.hpp"

namespace jrp {

namespace {

Rational union_of(const std::vector<Rational>& periods, const SyncLimits& limits) {
  return union_rate(periods, limits);
}

std::vector<Rational> periods_where(const Instance& instance, const std::vector<Rational>& cycles,
                                    const CommodityFilter& keep) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < instance.commodities.size(); ++i) {
    if (keep(instance.commodities[i])) out.push_back(cycles[i]);
  }
  return out;
}

CommodityFilter of_class(CommodityClass cls) {
  return [cls](const Commodity& c) { return c.cls == cls; };
}

}  // namespace

CostBreakdown total_cost(const Instance& instance, const Policy& policy, const SyncLimits& limits) {
  const auto cycles = cycles_in_order(instance, policy);
  CostBreakdown out;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    out.standalone_total += standalone_cost(instance.commodities[i], cycles[i]);
  }
  out.joint_frequency = union_of(cycles, limits);
  out.joint_cost = instance.joint_setup * out.joint_frequency;
  out.total = out.standalone_total + out.joint_cost;
  return out;
}

CostBreakdown decompose(const Instance& instance, const Policy& policy, const SyncLimits& limits) {
  for (const auto& c : instance.commodities) {
    if (c.cls == CommodityClass::kGeneric) {
      throw Error(ErrorCode::kUnclassed,
                  "commodity '" + c.id + "' has no class; decomposition needs constant|variable|clause");
    }
  }
  CostBreakdown out = total_cost(instance, policy, limits);
  const auto cycles = cycles_in_order(instance, policy);

  auto standalone_of = [&](CommodityClass cls) {
    Rational sum;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      if (instance.commodities[i].cls == cls) sum += standalone_cost(instance.commodities[i], cycles[i]);
    }
    return sum;
  };
  const auto constants = periods_where(instance, cycles, of_class(CommodityClass::kConstant));
  auto with_vars = constants;
  for (const auto& t : periods_where(instance, cycles, of_class(CommodityClass::kVariable))) {
    with_vars.push_back(t);
  }
  const Rational u_const = union_of(constants, limits);
  const Rational u_vars = union_of(with_vars, limits);
  const Rational& k0 = instance.joint_setup;

  ClassCosts split;
  split.constants = standalone_of(CommodityClass::kConstant) + k0 * u_const;
  split.variables = standalone_of(CommodityClass::kVariable) + k0 * (u_vars - u_const);
  split.clauses = standalone_of(CommodityClass::kClause) + k0 * (out.joint_frequency - u_vars);
  out.per_class = split;
  return out;
}

Rational marginal_jr(const Instance& instance, const Policy& policy, std::string_view commodity_id,
                     const CommodityFilter& others, const SyncLimits& limits) {
  const auto cycles = cycles_in_order(instance, policy);
  const std::size_t self = instance.index_of(commodity_id);
  std::vector<Rational> rest;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    if (i != self && (!others || others(instance.commodities[i]))) rest.push_back(cycles[i]);
  }
  const Rational& t = cycles[self];
  auto with_self = rest;
  with_self.push_back(t);
  const Rational via_union = union_of(with_self, limits) - union_of(rest, limits);

  Rational via_intersection = t.inverse();
  if (!rest.empty()) {
    const std::vector<SeriesFamily> pair{SeriesFamily::of({t}), SeriesFamily::of(rest)};
    via_intersection -= ijr(pair, limits);
  }
  if (via_union != via_intersection) {
    throw std::logic_error("marginal jr formulas disagree for '" + std::string(commodity_id) +
                           "': " + via_union.str() + " vs " + via_intersection.str());
  }
  return via_union;
}

Rational policy_seed(const Instance& instance, const Policy& policy) {
  if (!instance.meta || instance.meta->constants.empty()) return Rational(1);
  const auto& first = instance.meta->constants.front();
  const auto it = policy.cycles.find(first.commodity_id);
  if (it == policy.cycles.end()) {
    throw Error(ErrorCode::kCoverageMismatch, "policy has no cycle for '" + first.commodity_id + "'");
  }
  return it->second / Rational(first.t_star);
}

JrBounds jr_bounds(const Instance& instance, const Policy& policy, std::string_view commodity_id,
                   const ReductionConstants* constants, const std::optional<Rational>& beta) {
  const ReductionConstants* alpha = constants;
  if (alpha == nullptr) {
    if (!instance.meta) {
      throw Error(ErrorCode::kMissingConstants,
                  "jr bounds need reduction constants; instance carries no reduction metadata");
    }
    alpha = &instance.meta->alpha;
  }
  const Commodity& c = instance.commodities[instance.index_of(commodity_id)];
  if (c.cls != CommodityClass::kVariable) {
    throw Error(ErrorCode::kInvalidArgument, "jr bounds apply to Variables only, '" + c.id + "' is " +
                                                 std::string(to_string(c.cls)));
  }
  const auto it = policy.cycles.find(commodity_id);
  if (it == policy.cycles.end()) {
    throw Error(ErrorCode::kCoverageMismatch, "policy has no cycle for '" + c.id + "'");
  }
  const Rational b = beta ? *beta : policy_seed(instance, policy);
  const Rational denom = b * it->second;
  return {instance.joint_setup * alpha->alpha_v * alpha->alpha_n / denom,
          instance.joint_setup * alpha->alpha_c / denom};
}

SandwichCheck check_jr_sandwich(const Instance& instance, const Policy& policy,
                                std::string_view commodity_id, const SyncLimits& limits) {
  if (!instance.meta) {
    throw Error(ErrorCode::kMissingConstants, "sandwich check needs reduction metadata");
  }
  const auto& meta = *instance.meta;
  SandwichCheck out;
  out.cycle = policy.cycles.at(std::string(commodity_id));
  const Rational beta = policy_seed(instance, policy);
  out.bounds = jr_bounds(instance, policy, commodity_id, nullptr, beta);
  out.jr = marginal_jr(instance, policy, commodity_id, of_class(CommodityClass::kConstant), limits);

  std::optional<PrimePair> pair;
  for (std::size_t i = 0; i < meta.variable_ids.size(); ++i) {
    if (meta.variable_ids[i] == commodity_id) pair = meta.pairs.at(i);
  }
  if (!pair) throw Error(ErrorCode::kInvalidArgument, "no prime pair for '" + std::string(commodity_id) + "'");
  const Rational low = beta * Rational(pair->lower);
  const Rational high = beta * Rational(pair->upper());
  out.lower_applies = out.cycle != low;
  out.upper_applies = out.cycle == low || out.cycle == high;
  out.holds = (!out.lower_applies || out.bounds.lower <= out.jr) &&
              (!out.upper_applies || out.jr <= out.bounds.upper);
  return out;
}

SeedCost scaling_coefficients(const Instance& instance, const Policy& base, const SyncLimits& limits) {
  const auto cycles = cycles_in_order(instance, base);
  SeedCost out;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const Commodity& c = instance.commodities[i];
    out.a += c.setup / cycles[i];
    out.b += c.demand * c.holding * cycles[i] / Rational(2);
  }
  out.a += instance.joint_setup * union_of(cycles, limits);
  return out;
}

SeedCost seed_cost(const Instance& instance, const SeedProfile& profile, const SyncLimits& limits) {
  SeedProfile unit = profile;
  unit.seed = Rational(1);
  for (const auto& [id, k] : unit.integer_profile) {
    if (k < 1) throw Error(ErrorCode::kNonPositive, "profile entry for '" + id + "' must be >= 1");
  }
  return scaling_coefficients(instance, expand_profile(unit), limits);
}

std::string cost_csv_header() {
  return "instance_id,policy_id,standalone,joint_freq,joint_cost,total,tc_const,tc_var,tc_clause,"
         "standalone_exact,joint_freq_exact,joint_cost_exact,total_exact,tc_const_exact,"
         "tc_var_exact,tc_clause_exact";
}

std::string cost_csv_row(std::string_view instance_id, std::string_view policy_id,
                         const CostBreakdown& cost, int digits) {
  const auto dec = [&](const Rational& r) { return r.decimal(digits); };
  std::ostringstream row;
  row << instance_id << ',' << policy_id << ',' << dec(cost.standalone_total) << ','
      << dec(cost.joint_frequency) << ',' << dec(cost.joint_cost) << ',' << dec(cost.total) << ',';
  if (cost.per_class) {
    row << dec(cost.per_class->constants) << ',' << dec(cost.per_class->variables) << ','
        << dec(cost.per_class->clauses);
  } else {
    row << ",,";
  }
  row << ',' << cost.standalone_total.str() << ',' << cost.joint_frequency.str() << ','
      << cost.joint_cost.str() << ',' << cost.total.str() << ',';
  if (cost.per_class) {
    row << cost.per_class->constants.str() << ',' << cost.per_class->variables.str() << ','
        << cost.per_class->clauses.str();
  } else {
    row << ",,";
  }
  return row.str();
}

}  // namespace jrp
