#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jrp/rational.hpp"

namespace jrp {

enum class CommodityClass { kConstant, kVariable, kClause, kGeneric };

std::string_view to_string(CommodityClass cls);
/// Throws Error(kUnknownClass) for anything but constant|variable|clause|generic.
CommodityClass parse_commodity_class(std::string_view tag);

struct Commodity {
  std::string id;
  CommodityClass cls = CommodityClass::kGeneric;
  Rational demand;   // lambda, units per period
  Rational holding;  // h, $ per unit per period
  Rational setup;    // K, $ per order

  friend bool operator==(const Commodity&, const Commodity&) = default;
};

// ---------------------------------------------------------------------------
// Reduction metadata. Produced by reduce.hpp, carried by Instance so a saved
// reduction can be reloaded and checked without the originating formula.

struct PrimePair {
  std::int64_t lower = 0;  // associated with x_i = false
  std::int64_t gap = 0;    // even, lower + gap is the next prime used
  std::int64_t upper() const { return lower + gap; }

  friend bool operator==(const PrimePair&, const PrimePair&) = default;
};

/// The four scalars of the variable-commodity cost formulas and of the
/// marginal joint-replenishment bounds.
struct ReductionConstants {
  Rational alpha_c{1};
  Rational alpha_v_bar{0};
  Rational alpha_v{1, 10};
  Rational alpha_n{1, 10};

  friend bool operator==(const ReductionConstants&, const ReductionConstants&) = default;
};

struct ConstantTarget {
  std::string commodity_id;
  BigInt t_star;

  friend bool operator==(const ConstantTarget&, const ConstantTarget&) = default;
};

struct ClauseTarget {
  std::string commodity_id;
  std::array<int, 3> literals{};
  BigInt t_star;

  friend bool operator==(const ClauseTarget&, const ClauseTarget&) = default;
};

struct ReductionMeta {
  Rational delta;
  std::vector<PrimePair> pairs;
  std::vector<std::string> variable_ids;  // variable i (1-based) -> variable_ids[i - 1]
  std::vector<ConstantTarget> constants;
  std::vector<ClauseTarget> clauses;
  std::string constants_scheme;
  ReductionConstants alpha;

  friend bool operator==(const ReductionMeta&, const ReductionMeta&) = default;
};

struct Instance {
  std::vector<Commodity> commodities;
  Rational joint_setup{1};  // K0
  std::optional<ReductionMeta> meta;

  const Commodity* find(std::string_view id) const;
  std::size_t index_of(std::string_view id) const;  // throws kCoverageMismatch

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct Policy {
  std::map<std::string, Rational, std::less<>> cycles;

  friend bool operator==(const Policy&, const Policy&) = default;
};

/// Integer cycle profile k_c scaled by one shared seed: t_c = seed * k_c.
struct SeedProfile {
  std::map<std::string, std::int64_t, std::less<>> integer_profile;
  Rational seed{1};

  friend bool operator==(const SeedProfile&, const SeedProfile&) = default;
};

struct Violation {
  std::string commodity_id;  // empty for instance-level violations
  std::string field;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_instance(const Instance& instance);

/// Cycle times in instance order. Throws Error(kCoverageMismatch) unless the
/// policy names every commodity exactly once, and kNonPositive on t <= 0.
std::vector<Rational> cycles_in_order(const Instance& instance, const Policy& policy);

Policy expand_profile(const SeedProfile& profile);

}  // namespace jrp
