#include "jrp/model.hpp"

#include <set>

#include "jrp/error.hpp"

namespace jrp {

std::string_view to_string(CommodityClass cls) {
  switch (cls) {
    case CommodityClass::kConstant: return "constant";
    case CommodityClass::kVariable: return "variable";
    case CommodityClass::kClause: return "clause";
    case CommodityClass::kGeneric: return "generic";
  }
  return "generic";
}

CommodityClass parse_commodity_class(std::string_view tag) {
  if (tag == "constant") return CommodityClass::kConstant;
  if (tag == "variable") return CommodityClass::kVariable;
  if (tag == "clause") return CommodityClass::kClause;
  if (tag == "generic") return CommodityClass::kGeneric;
  throw Error(ErrorCode::kUnknownClass, "unknown commodity class '" + std::string(tag) + "'");
}

const Commodity* Instance::find(std::string_view id) const {
  for (const auto& c : commodities) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::size_t Instance::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < commodities.size(); ++i) {
    if (commodities[i].id == id) return i;
  }
  throw Error(ErrorCode::kCoverageMismatch, "no commodity '" + std::string(id) + "'");
}

ValidationReport validate_instance(const Instance& instance) {
  ValidationReport report;
  if (instance.joint_setup.sign() <= 0) {
    report.violations.push_back({"", "k0", "joint setup cost must be positive, got " +
                                               instance.joint_setup.str()});
  }
  std::set<std::string, std::less<>> seen;
  for (const auto& c : instance.commodities) {
    if (!seen.insert(c.id).second) {
      report.violations.push_back({c.id, "id", "duplicate commodity id"});
    }
    auto positive = [&](const Rational& v, const char* field) {
      if (v.sign() <= 0) {
        report.violations.push_back({c.id, field, std::string(field) + " must be positive, got " +
                                                      v.str()});
      }
    };
    positive(c.demand, "lambda");
    positive(c.holding, "h");
    positive(c.setup, "k");
  }
  return report;
}

std::vector<Rational> cycles_in_order(const Instance& instance, const Policy& policy) {
  if (policy.cycles.size() != instance.commodities.size()) {
    throw Error(ErrorCode::kCoverageMismatch,
                "policy has " + std::to_string(policy.cycles.size()) + " cycle times for " +
                    std::to_string(instance.commodities.size()) + " commodities");
  }
  std::vector<Rational> out;
  out.reserve(instance.commodities.size());
  for (const auto& c : instance.commodities) {
    auto it = policy.cycles.find(c.id);
    if (it == policy.cycles.end()) {
      throw Error(ErrorCode::kCoverageMismatch, "policy has no cycle time for '" + c.id + "'");
    }
    if (it->second.sign() <= 0) {
      throw Error(ErrorCode::kNonPositive,
                  "cycle time of '" + c.id + "' must be positive, got " + it->second.str());
    }
    out.push_back(it->second);
  }
  return out;
}

Policy expand_profile(const SeedProfile& profile) {
  Policy policy;
  for (const auto& [id, k] : profile.integer_profile) {
    policy.cycles.emplace(id, profile.seed * Rational(k));
  }
  return policy;
}

}  // namespace jrp
