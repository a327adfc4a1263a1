#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "jrp/model.hpp"
#include "jrp/sync.hpp"

namespace jrp {

struct ClassCosts {
  Rational constants;
  Rational variables;
  Rational clauses;
};

struct CostBreakdown {
  Rational standalone_total;
  Rational joint_frequency;  // UJR of every commodity's series
  Rational joint_cost;       // K0 * joint_frequency
  Rational total;
  std::optional<ClassCosts> per_class;  // set by decompose() only
};

/// total = sum_c g_c(t_c) + K0 * UJR(all series). Throws kCoverageMismatch.
CostBreakdown total_cost(const Instance& instance, const Policy& policy,
                         const SyncLimits& limits = {});

/// total_cost plus the three-way split: Constants pay their whole joint
/// frequency, Variables the marginal over Constants, Clauses the marginal over
/// Constants and Variables. Throws kUnclassed if any commodity is Generic.
CostBreakdown decompose(const Instance& instance, const Policy& policy,
                        const SyncLimits& limits = {});

using CommodityFilter = std::function<bool(const Commodity&)>;

/// jr(t) = UJR(F_t, O) - UJR(O) where O are the other commodities accepted by
/// `others` (all by default). Also evaluates UJR(F_t) - IJR(F_t, O) and throws
/// std::logic_error if the two disagree.
Rational marginal_jr(const Instance& instance, const Policy& policy, std::string_view commodity_id,
                     const CommodityFilter& others = {}, const SyncLimits& limits = {});

struct JrBounds {
  Rational lower;  // K0 alpha_v alpha_n / (beta t)
  Rational upper;  // K0 alpha_c / (beta t)
};

/// Bounds on a Variable's marginal joint contribution. `constants` defaults
/// to the instance's reduction metadata (kMissingConstants when absent); the
/// seed defaults to the one read off the first Constant (1 without Constants).
JrBounds jr_bounds(const Instance& instance, const Policy& policy, std::string_view commodity_id,
                   const ReductionConstants* constants = nullptr,
                   const std::optional<Rational>& beta = std::nullopt);

/// Seed implied by a policy: t_y / t*_y of the first Constant in the metadata.
Rational policy_seed(const Instance& instance, const Policy& policy);

struct SandwichCheck {
  Rational cycle;
  Rational jr;  // marginal over the Constants
  JrBounds bounds;
  bool lower_applies = false;  // t != beta * lower prime
  bool upper_applies = false;  // t in {beta * lower, beta * upper}
  bool holds = true;
};

/// Evaluates lower <= jr <= upper where each bound applies, with jr taken as
/// the marginal over the Constants of the instance.
SandwichCheck check_jr_sandwich(const Instance& instance, const Policy& policy,
                                std::string_view commodity_id, const SyncLimits& limits = {});

/// cost(s) = a / s + b * s for the policy whose cycles are s times a base.
struct SeedCost {
  Rational a;
  Rational b;
  Rational at(const Rational& seed) const { return a / seed + b * seed; }
};

/// Coefficients for the integer profile k at seed beta:
///   a = sum K_c/k_c + K0 UJR(k), b = sum lambda_c h_c k_c / 2.
SeedCost seed_cost(const Instance& instance, const SeedProfile& profile,
                   const SyncLimits& limits = {});

/// Same decomposition for an arbitrary base policy scaled by s.
SeedCost scaling_coefficients(const Instance& instance, const Policy& base,
                              const SyncLimits& limits = {});

/// CSV rendering: header and one row per breakdown, exact and decimal columns.
std::string cost_csv_header();
std::string cost_csv_row(std::string_view instance_id, std::string_view policy_id,
                         const CostBreakdown& cost, int digits = 12);

}  // namespace jrp
