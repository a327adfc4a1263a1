#include "jrp/serialize.hpp"

#include <json.hpp>
#include <set>

#include "jrp/error.hpp"

namespace jrp {

namespace {

using Json = nlohmann::ordered_json;

Error malformed(const std::string& what) { return Error(ErrorCode::kMalformedDocument, what); }

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const Error& e) {
      throw malformed(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw malformed(where + ": expected a \"num/den\" string");
}

BigInt bigint_from(const Json& j, const std::string& where) {
  Rational r = rational_from(j, where);
  if (!r.is_integer()) throw malformed(where + ": expected an integer");
  return r.num();
}

std::int64_t int_from(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw malformed(where + ": expected an integer");
  return j.get<std::int64_t>();
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw malformed(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw malformed(where + ": missing field \"" + key + "\"");
  return *it;
}

std::string string_from(const Json& j, const std::string& where) {
  if (!j.is_string()) throw malformed(where + ": expected a string");
  return j.get<std::string>();
}

Rational positive_from(const Json& j, const std::string& where) {
  Rational r = rational_from(j, where);
  if (r.sign() <= 0) throw Error(ErrorCode::kNonPositive, where + " must be positive, got " + r.str());
  return r;
}

Json meta_to_json(const ReductionMeta& m) {
  Json out = Json::object();
  out["delta"] = to_json(m.delta);
  Json pairs = Json::array();
  for (const auto& p : m.pairs) pairs.push_back(Json::array({p.lower, p.gap, p.upper()}));
  out["pairs"] = pairs;
  Json literal_map = Json::array();
  for (std::size_t i = 0; i < m.pairs.size(); ++i) {
    Json entry = Json::object();
    entry["var"] = i + 1;
    entry["id"] = i < m.variable_ids.size() ? m.variable_ids[i] : std::string();
    entry["false"] = m.pairs[i].lower;
    entry["true"] = m.pairs[i].upper();
    literal_map.push_back(entry);
  }
  out["literal_map"] = literal_map;
  Json clauses = Json::array();
  for (const auto& c : m.clauses) {
    Json entry = Json::object();
    entry["id"] = c.commodity_id;
    entry["literals"] = Json::array({c.literals[0], c.literals[1], c.literals[2]});
    entry["t_star"] = c.t_star.get_str();
    clauses.push_back(entry);
  }
  out["clause_targets"] = clauses;
  Json constants = Json::array();
  for (const auto& c : m.constants) {
    Json entry = Json::object();
    entry["id"] = c.commodity_id;
    entry["t_star"] = c.t_star.get_str();
    constants.push_back(entry);
  }
  out["constant_targets"] = constants;
  out["constants_scheme"] = m.constants_scheme;
  Json alpha = Json::object();
  alpha["alpha_c"] = to_json(m.alpha.alpha_c);
  alpha["alpha_v_bar"] = to_json(m.alpha.alpha_v_bar);
  alpha["alpha_v"] = to_json(m.alpha.alpha_v);
  alpha["alpha_n"] = to_json(m.alpha.alpha_n);
  out["alpha"] = alpha;
  return out;
}

ReductionMeta meta_from_json(const Json& j) {
  const std::string w = "meta";
  ReductionMeta m;
  m.delta = rational_from(field(j, "delta", w), "meta.delta");
  const Json& pairs = field(j, "pairs", w);
  if (!pairs.is_array()) throw malformed("meta.pairs: expected an array");
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 3) throw malformed("meta.pairs: expected [lower, gap, upper]");
    PrimePair pair{int_from(p[0], "meta.pairs"), int_from(p[1], "meta.pairs")};
    if (pair.upper() != int_from(p[2], "meta.pairs")) {
      throw malformed("meta.pairs: upper != lower + gap");
    }
    m.pairs.push_back(pair);
  }
  const Json& literal_map = field(j, "literal_map", w);
  if (!literal_map.is_array() || literal_map.size() != m.pairs.size()) {
    throw malformed("meta.literal_map: expected one entry per pair");
  }
  for (const auto& entry : literal_map) {
    m.variable_ids.push_back(string_from(field(entry, "id", "meta.literal_map"), "meta.literal_map"));
  }
  const Json& clauses = field(j, "clause_targets", w);
  if (!clauses.is_array()) throw malformed("meta.clause_targets: expected an array");
  for (const auto& entry : clauses) {
    ClauseTarget c;
    c.commodity_id = string_from(field(entry, "id", "meta.clause_targets"), "meta.clause_targets");
    const Json& lits = field(entry, "literals", "meta.clause_targets");
    if (!lits.is_array() || lits.size() != 3) throw malformed("meta.clause_targets: three literals");
    for (std::size_t i = 0; i < 3; ++i) {
      c.literals[i] = static_cast<int>(int_from(lits[i], "meta.clause_targets"));
    }
    c.t_star = bigint_from(field(entry, "t_star", "meta.clause_targets"), "meta.clause_targets");
    m.clauses.push_back(c);
  }
  const Json& constants = field(j, "constant_targets", w);
  if (!constants.is_array()) throw malformed("meta.constant_targets: expected an array");
  for (const auto& entry : constants) {
    ConstantTarget c;
    c.commodity_id =
        string_from(field(entry, "id", "meta.constant_targets"), "meta.constant_targets");
    c.t_star = bigint_from(field(entry, "t_star", "meta.constant_targets"), "meta.constant_targets");
    m.constants.push_back(c);
  }
  m.constants_scheme = string_from(field(j, "constants_scheme", w), "meta.constants_scheme");
  const Json& alpha = field(j, "alpha", w);
  m.alpha.alpha_c = rational_from(field(alpha, "alpha_c", "meta.alpha"), "meta.alpha.alpha_c");
  m.alpha.alpha_v_bar =
      rational_from(field(alpha, "alpha_v_bar", "meta.alpha"), "meta.alpha.alpha_v_bar");
  m.alpha.alpha_v = rational_from(field(alpha, "alpha_v", "meta.alpha"), "meta.alpha.alpha_v");
  m.alpha.alpha_n = rational_from(field(alpha, "alpha_n", "meta.alpha"), "meta.alpha.alpha_n");
  return m;
}

Json parse_document(std::string_view bytes) {
  try {
    return Json::parse(bytes.begin(), bytes.end());
  } catch (const Json::parse_error& e) {
    throw malformed(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string save_instance(const Instance& instance) {
  Json doc = Json::object();
  doc["k0"] = to_json(instance.joint_setup);
  Json list = Json::array();
  for (const auto& c : instance.commodities) {
    Json entry = Json::object();
    entry["id"] = c.id;
    entry["class"] = std::string(to_string(c.cls));
    entry["lambda"] = to_json(c.demand);
    entry["h"] = to_json(c.holding);
    entry["k"] = to_json(c.setup);
    list.push_back(entry);
  }
  doc["commodities"] = list;
  if (instance.meta) doc["meta"] = meta_to_json(*instance.meta);
  return doc.dump(2) + "\n";
}

Instance load_instance(std::string_view bytes) {
  const Json doc = parse_document(bytes);
  if (!doc.is_object()) throw malformed("instance: top level must be an object");
  Instance instance;
  instance.joint_setup = positive_from(field(doc, "k0", "instance"), "k0");
  const Json& list = field(doc, "commodities", "instance");
  if (!list.is_array()) throw malformed("instance.commodities: expected an array");
  std::set<std::string, std::less<>> seen;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string w = "commodities[" + std::to_string(i) + "]";
    const Json& entry = list[i];
    Commodity c;
    c.id = string_from(field(entry, "id", w), w + ".id");
    if (!seen.insert(c.id).second) {
      throw Error(ErrorCode::kDuplicateId, w + ": duplicate commodity id '" + c.id + "'");
    }
    c.cls = parse_commodity_class(string_from(field(entry, "class", w), w + ".class"));
    c.demand = positive_from(field(entry, "lambda", w), w + ".lambda");
    c.holding = positive_from(field(entry, "h", w), w + ".h");
    c.setup = positive_from(field(entry, "k", w), w + ".k");
    instance.commodities.push_back(std::move(c));
  }
  if (auto it = doc.find("meta"); it != doc.end() && !it->is_null()) {
    if (!it->is_object()) throw malformed("instance.meta: expected an object");
    if (!it->empty()) instance.meta = meta_from_json(*it);
  }
  return instance;
}

std::string save_policy(const Policy& policy) {
  Json cycles = Json::object();
  for (const auto& [id, t] : policy.cycles) cycles[id] = to_json(t);
  Json doc = Json::object();
  doc["cycles"] = cycles;
  return doc.dump(2) + "\n";
}

Policy load_policy(std::string_view bytes) {
  const Json doc = parse_document(bytes);
  const Json& cycles = field(doc, "cycles", "policy");
  if (!cycles.is_object()) throw malformed("policy.cycles: expected an object");
  Policy policy;
  for (const auto& [id, value] : cycles.items()) {
    policy.cycles.emplace(id, positive_from(value, "cycles." + id));
  }
  return policy;
}

}  // namespace jrp
