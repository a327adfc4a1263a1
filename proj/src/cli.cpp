#include "jrp/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "jrp/cost.hpp"
#include "jrp/error.hpp"
#include "jrp/generate.hpp"
#include "jrp/reduce.hpp"
#include "jrp/sat.hpp"
#include "jrp/serialize.hpp"
#include "jrp/solve.hpp"
#include "jrp/suites.hpp"

namespace jrp::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << bytes)) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

// "a:b" with 1 <= a <= b
std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon != std::string::npos) {
      std::size_t used_a = 0, used_b = 0;
      const std::int64_t a = std::stoll(text.substr(0, colon), &used_a);
      const std::int64_t b = std::stoll(text.substr(colon + 1), &used_b);
      if (used_a == colon && used_b == text.size() - colon - 1 && 1 <= a && a <= b) return {a, b};
    }
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kInvalidArgument, "range must be a:b with 1 <= a <= b, got '" + text + "'");
}

Json exact(const Rational& r, int digits) { return Json{{"exact", r.str()}, {"decimal", r.decimal(digits)}}; }

Json cost_json(const CostBreakdown& c, int digits) {
  Json j;
  j["total"] = exact(c.total, digits);
  j["standalone"] = exact(c.standalone_total, digits);
  j["joint_frequency"] = exact(c.joint_frequency, digits);
  j["joint_cost"] = exact(c.joint_cost, digits);
  if (c.per_class) {
    j["tc_constants"] = exact(c.per_class->constants, digits);
    j["tc_variables"] = exact(c.per_class->variables, digits);
    j["tc_clauses"] = exact(c.per_class->clauses, digits);
  }
  return j;
}

Json cycles_json(const Policy& p) {
  Json j = Json::object();
  for (const auto& [id, t] : p.cycles) j[id] = t.str();
  return j;
}

Json assignment_json(const Assignment& a) {
  Json j = Json::array();
  for (const bool v : a) j.push_back(v);
  return j;
}

bool fully_classed(const Instance& inst) {
  for (const auto& c : inst.commodities) {
    if (c.cls == CommodityClass::kGeneric) return false;
  }
  return !inst.commodities.empty();
}

Instance read_instance(const std::string& path) {
  Instance inst = load_instance(read_file(path));
  const auto report = validate_instance(inst);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw Error(ErrorCode::kNonPositive, path + ": " + v.commodity_id + " " + v.field + ": " + v.message);
  }
  return inst;
}

CnfFormula read_3sat(const std::string& path) {
  CnfFormula f = parse_dimacs(read_file(path));
  validate_3sat(f);
  return f;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

struct Common {
  int digits = 12;
  std::string format = "json";
};

struct EvalArgs {
  std::string instance, policy;
};

int cmd_eval(const EvalArgs& a, const Common& common, std::ostream& out) {
  const Instance inst = read_instance(a.instance);
  const Policy policy = load_policy(read_file(a.policy));
  const CostBreakdown cost = fully_classed(inst) ? decompose(inst, policy) : total_cost(inst, policy);
  if (common.format == "csv") {
    out << cost_csv_header() << '\n' << cost_csv_row(stem(a.instance), stem(a.policy), cost, common.digits) << '\n';
    return kOk;
  }
  Json j;
  j["instance"] = stem(a.instance);
  j["policy"] = stem(a.policy);
  j["cost"] = cost_json(cost, common.digits);
  emit(out, j);
  return kOk;
}

struct SolveArgs {
  std::string instance;
  std::string method = "exhaustive";
  std::string k_range;
  std::uint64_t max_profiles = 1'000'000;
  std::size_t max_sweeps = 1000;
  std::string seed_lo = "1";
  std::string seed_hi;
  std::string base = "1";
  bool optimize_base = false;
  int grid = 64;
  std::string start;
  std::string profile;
  std::string out;
  bool timing = false;
};

std::map<std::string, std::int64_t, std::less<>> parse_profile(const std::string& text) {
  std::map<std::string, std::int64_t, std::less<>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    std::int64_t k = 0;
    try {
      std::size_t used = 0;
      if (eq != std::string::npos) k = std::stoll(item.substr(eq + 1), &used);
      if (eq == std::string::npos || used != item.size() - eq - 1) k = 0;
    } catch (const std::exception&) {
      k = 0;
    }
    if (k < 1) throw Error(ErrorCode::kInvalidArgument, "profile entries are id=k with k >= 1, got '" + item + "'");
    out[item.substr(0, eq)] = k;
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "--profile is empty");
  return out;
}

int cmd_solve(const SolveArgs& a, const Common& common, std::ostream& out) {
  const Instance inst = read_instance(a.instance);
  SeedInterval interval;
  interval.lo = a.seed_lo == "none" ? std::nullopt : std::optional<Rational>(Rational::parse(a.seed_lo));
  if (!a.seed_hi.empty()) interval.hi = Rational::parse(a.seed_hi);
  SearchLimits limits;
  limits.max_profiles = a.max_profiles;
  limits.max_sweeps = a.max_sweeps;

  SolveResult r;
  if (a.method == "exhaustive") {
    std::vector<KBounds> bounds = oracle_bounds(inst);
    if (!a.k_range.empty()) {
      const auto [lo, hi] = parse_range(a.k_range);
      bounds.assign(inst.commodities.size(), KBounds{lo, hi});
    }
    r = exhaustive_search(inst, bounds, interval, limits);
  } else if (a.method == "pot") {
    PowerOfTwoOptions opts;
    opts.base = Rational::parse(a.base);
    opts.optimize_base = a.optimize_base;
    opts.grid_per_octave = a.grid;
    if (opts.base.sign() <= 0 || opts.grid_per_octave < 1) {
      throw Error(ErrorCode::kInvalidArgument, "--base must be positive and --grid at least 1");
    }
    r = power_of_two(inst, opts, limits.sync);
  } else if (a.method == "descent") {
    const Policy start = a.start.empty() ? power_of_two(inst, {}, limits.sync).policy : load_policy(read_file(a.start));
    r = coordinate_descent(inst, start, default_candidates, interval, limits);
  } else {
    if (a.profile.empty()) throw Error(ErrorCode::kInvalidArgument, "--method seed needs --profile id=k,...");
    r = optimize_seed(inst, parse_profile(a.profile), interval, limits.sync);
  }
  if (fully_classed(inst)) r.cost = decompose(inst, r.policy, limits.sync);
  if (!a.out.empty()) write_file(a.out, save_policy(r.policy));

  if (common.format == "csv") {
    out << cost_csv_header() << '\n'
        << cost_csv_row(stem(a.instance), std::string(to_string(r.method)), r.cost, common.digits) << '\n';
    return kOk;
  }
  Json j;
  j["instance"] = stem(a.instance);
  j["method"] = std::string(to_string(r.method));
  j["scope"] = r.scope;
  j["nodes_explored"] = r.nodes_explored;
  j["seed_exact"] = r.seed_exact;
  if (r.profile) {
    Json k = Json::object();
    for (const auto& [id, v] : r.profile->integer_profile) k[id] = v;
    j["profile"] = Json{{"k", k}, {"seed", exact(r.profile->seed, common.digits)}};
  }
  j["cycles"] = cycles_json(r.policy);
  j["cost"] = cost_json(r.cost, common.digits);
  if (a.timing) j["wall_seconds"] = r.wall_seconds;
  emit(out, j);
  return kOk;
}

struct ReduceFlags {
  std::int64_t prime_start = kDefaultPrimeStart;
  std::vector<std::int64_t> gaps;
  std::string constants = "pair-product";
  std::string alpha_c, alpha_v_bar, alpha_v, alpha_n;
  std::string epsilon;

  ReductionConfig config() const {
    ReductionConfig c;
    c.prime_start = prime_start;
    c.gaps = gaps;
    c.constants = parse_constants_scheme(constants);
    if (!alpha_c.empty()) c.alpha.alpha_c = Rational::parse(alpha_c);
    if (!alpha_v.empty()) c.alpha.alpha_v = Rational::parse(alpha_v);
    if (!alpha_n.empty()) c.alpha.alpha_n = Rational::parse(alpha_n);
    if (!alpha_v_bar.empty()) {
      c.alpha.alpha_v_bar = Rational::parse(alpha_v_bar);
      c.explicit_alpha_v_bar = true;
    }
    if (!epsilon.empty()) c.balance_epsilon = Rational::parse(epsilon);
    return c;
  }

  void add_to(CLI::App* app) {
    app->add_option("--prime-start", prime_start, "first candidate for the lower prime of pair 1")
        ->capture_default_str();
    app->add_option("--gaps", gaps, "prime gap per pair, last one repeats (default twin primes)")->delimiter(',');
    app->add_option("--constants", constants, "pair-product | cyclic | none")->capture_default_str();
    app->add_option("--alpha-c", alpha_c, "alpha_c (default 1)");
    app->add_option("--alpha-v-bar", alpha_v_bar, "fix alpha_v_bar instead of the balanced value");
    app->add_option("--alpha-v", alpha_v, "alpha_v (default 1/10)");
    app->add_option("--alpha-n", alpha_n, "alpha_n (default 1/10)");
    app->add_option("--epsilon", epsilon, "relative slack of the balanced alpha_v_bar (default 1/1000000)");
  }
};

struct ReduceArgs {
  std::string cnf, out;
  ReduceFlags flags;
};

int cmd_reduce(const ReduceArgs& a, const Common& common, std::ostream& out) {
  const CnfFormula f = read_3sat(a.cnf);
  const Instance inst = reduce(f, a.flags.config());
  write_file(a.out, save_instance(inst));
  const ReductionMeta& meta = *inst.meta;
  Json counts{{"constant", 0}, {"variable", 0}, {"clause", 0}};
  for (const auto& c : inst.commodities) counts[std::string(to_string(c.cls))] = counts[std::string(to_string(c.cls))].get<int>() + 1;
  Json pairs = Json::array();
  for (const auto& p : meta.pairs) pairs.push_back({p.lower, p.gap, p.upper()});
  Json j;
  j["n"] = f.num_vars;
  j["m"] = f.clauses.size();
  j["delta"] = exact(meta.delta, common.digits);
  j["constants_scheme"] = meta.constants_scheme;
  j["commodities"] = counts;
  j["pairs"] = pairs;
  j["alpha_v_bar"] = exact(meta.alpha.alpha_v_bar, common.digits);
  j["out"] = a.out;
  emit(out, j);
  return kOk;
}

struct SatArgs {
  std::string cnf;
  int max_vars = kMaxBruteForceVars;
};

int cmd_sat(const SatArgs& a, std::ostream& out) {
  const CnfFormula f = parse_dimacs(read_file(a.cnf));
  if (f.num_vars > a.max_vars) {
    throw Error(ErrorCode::kCapExceeded, "formula has " + std::to_string(f.num_vars) +
                                             " variables, --max-vars is " + std::to_string(a.max_vars));
  }
  const auto witness = brute_force_sat(f);
  Json j;
  j["num_vars"] = f.num_vars;
  j["num_clauses"] = f.clauses.size();
  j["satisfiable"] = witness.has_value();
  j["assignment"] = witness ? assignment_json(*witness) : Json(nullptr);
  emit(out, j);
  return kOk;
}

struct CheckArgs {
  std::string suite = "lemmas";
  std::string instance;
  std::vector<std::string> cnf;
  std::string beta = "1";
  std::size_t n = 0;  // 0: suite default
  std::string k_range;
  std::uint64_t rng_seed = 0;
  std::size_t count = 100;
  bool fixed_base = false;
  double threshold = 1.06;
  std::uint64_t max_profiles = 1'000'000;
  ReduceFlags flags;
};

Json lemma_json(const LemmaCheck& c) {
  return Json{{"name", c.name},   {"subject", c.subject}, {"applicable", c.applicable},
              {"holds", c.holds}, {"lhs", c.lhs},         {"rhs", c.rhs},
              {"detail", c.detail}};
}

int cmd_check(const CheckArgs& a, const Common& common, std::ostream& out) {
  Json j;
  j["suite"] = a.suite;
  bool passed = true;
  if (a.suite == "lemmas") {
    Instance inst;
    if (!a.instance.empty()) {
      inst = read_instance(a.instance);
      j["instance"] = stem(a.instance);
    } else {
      GenOptions g;
      g.n = a.n ? a.n : 2;
      if (!a.k_range.empty()) std::tie(g.k_lo, g.k_hi) = parse_range(a.k_range);
      std::mt19937_64 rng(a.rng_seed);
      inst = random_instance(rng, g);
      j["instance"] = Json{{"generated", true}, {"n", g.n}, {"rng_seed", a.rng_seed}};
    }
    const auto report = lemma_suite(inst);
    passed = report.ok();
    Json checks = Json::array();
    for (const auto& c : report.checks) checks.push_back(lemma_json(c));
    j["checks"] = checks;
  } else if (a.suite == "roundtrip") {
    if (a.cnf.empty()) throw Error(ErrorCode::kInvalidArgument, "roundtrip needs at least one --cnf");
    const ReductionConfig cfg = a.flags.config();
    const Rational beta = Rational::parse(a.beta);
    Json rows = Json::array();
    for (const auto& path : a.cnf) {
      const auto r = verify_roundtrip(read_3sat(path), cfg, beta);
      passed = passed && r.sync_iff_sat;
      Json row;
      row["cnf"] = path;
      row["num_vars"] = r.num_vars;
      row["num_clauses"] = r.num_clauses;
      row["beta"] = r.beta.str();
      row["satisfiable"] = r.sat_witness.has_value();
      row["sat_witness"] = r.sat_witness ? assignment_json(*r.sat_witness) : Json(nullptr);
      row["argmin"] = assignment_json(r.argmin);
      row["min_cost"] = exact(r.min_cost, common.digits);
      row["argmin_synchronizes_all"] = r.argmin_synchronizes_all;
      row["sync_iff_sat"] = r.sync_iff_sat;
      row["gap"] = r.gap ? exact(*r.gap, common.digits) : Json(nullptr);
      row["policies_evaluated"] = r.policies_evaluated;
      row["scope"] = r.scope;
      rows.push_back(row);
    }
    j["formulas"] = rows;
  } else if (a.suite == "pot-ratio") {
    PotRatioOptions o;
    o.count = a.count;
    o.n_max = a.n ? a.n : 5;
    if (!a.k_range.empty()) std::tie(o.k_lo, o.k_hi) = parse_range(a.k_range);
    o.rng_seed = a.rng_seed;
    o.optimize_base = !a.fixed_base;
    o.threshold = a.threshold;
    o.limits.max_profiles = a.max_profiles;
    const auto report = pot_ratio_suite(o);
    passed = report.ok;
    j["optimize_base"] = o.optimize_base;
    j["threshold"] = o.threshold;
    j["max_ratio"] = report.max_ratio;
    j["worst_index"] = report.worst_index;
    Json rows = Json::array();
    for (const auto& r : report.rows) {
      rows.push_back(Json{{"index", r.index},
                          {"n", r.n},
                          {"pot_cost", r.pot_cost.str()},
                          {"exhaustive_cost", r.exhaustive_cost.str()},
                          {"ratio", r.ratio}});
    }
    j["rows"] = rows;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown suite '" + a.suite + "'");
  }
  j["passed"] = passed;
  emit(out, j);
  return passed ? kOk : kPropertyViolation;
}

struct GenArgs {
  std::size_t n = 3;
  std::string k_range = "1:8";
  std::int64_t max_den = 8;
  std::uint64_t rng_seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  GenOptions g;
  g.n = a.n;
  std::tie(g.k_lo, g.k_hi) = parse_range(a.k_range);
  g.max_den = a.max_den;
  std::mt19937_64 rng(a.rng_seed);
  const std::string bytes = save_instance(random_instance(rng, g));
  if (a.out.empty()) {
    out << bytes << '\n';
  } else {
    write_file(a.out, bytes);
  }
  return kOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCapExceeded:
      return kCapExceeded;
    case ErrorCode::kConfigRejected:
      return kConfigRejected;
    default:
      return kInputError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Joint replenishment toolkit: exact cost evaluation, policy search and the 3SAT reduction",
               "jrp-forge"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--digits", common.digits, "significant digits of decimal renderings")
      ->capture_default_str()
      ->check(CLI::Range(1, 60));

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "exact cost of a policy");
  eval->add_option("--instance", eval_args.instance)->required()->check(CLI::ExistingFile);
  eval->add_option("--policy", eval_args.policy)->required()->check(CLI::ExistingFile);
  eval->add_option("--format", common.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "optimise a policy");
  solve->add_option("--instance", solve_args.instance)->required()->check(CLI::ExistingFile);
  solve->add_option("--method", solve_args.method)
      ->check(CLI::IsMember({"exhaustive", "pot", "descent", "seed"}))
      ->capture_default_str();
  solve->add_option("--k-range", solve_args.k_range, "exhaustive: k in a:b for every commodity (default 1:2ceil(t*))");
  solve->add_option("--max-profiles", solve_args.max_profiles)->capture_default_str()->check(CLI::PositiveNumber);
  solve->add_option("--max-sweeps", solve_args.max_sweeps)->capture_default_str()->check(CLI::PositiveNumber);
  solve->add_option("--seed-lo", solve_args.seed_lo, "lower seed bound, 'none' for unbounded")->capture_default_str();
  solve->add_option("--seed-hi", solve_args.seed_hi, "upper seed bound (default unbounded)");
  solve->add_option("--base", solve_args.base, "pot: base period")->capture_default_str();
  solve->add_flag("--optimize-base", solve_args.optimize_base, "pot: scan the base over a log grid");
  solve->add_option("--grid", solve_args.grid, "pot: grid points per octave")->capture_default_str();
  solve->add_option("--start", solve_args.start, "descent: start policy (default the power-of-two policy)")
      ->check(CLI::ExistingFile);
  solve->add_option("--profile", solve_args.profile, "seed: integer profile id=k,id=k,...");
  solve->add_option("--out", solve_args.out, "write the policy here");
  solve->add_option("--format", common.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  solve->add_flag("--timing", solve_args.timing, "include wall time (output no longer reproducible)");

  ReduceArgs reduce_args;
  auto* red = app.add_subcommand("reduce", "build the instance of a 3SAT formula");
  red->add_option("--cnf", reduce_args.cnf)->required()->check(CLI::ExistingFile);
  red->add_option("--out", reduce_args.out)->required();
  reduce_args.flags.add_to(red);

  SatArgs sat_args;
  auto* sat = app.add_subcommand("sat", "brute-force satisfiability");
  sat->add_option("--cnf", sat_args.cnf)->required()->check(CLI::ExistingFile);
  sat->add_option("--max-vars", sat_args.max_vars)->capture_default_str()->check(CLI::Range(0, kMaxBruteForceVars));

  CheckArgs check_args;
  auto* chk = app.add_subcommand("check", "property suites with a JSON report");
  chk->add_option("--suite", check_args.suite)
      ->check(CLI::IsMember({"lemmas", "roundtrip", "pot-ratio"}))
      ->capture_default_str();
  chk->add_option("--instance", check_args.instance, "lemmas: instance (default a generated one)")
      ->check(CLI::ExistingFile);
  chk->add_option("--cnf", check_args.cnf, "roundtrip: formulas")->check(CLI::ExistingFile);
  chk->add_option("--beta", check_args.beta, "roundtrip: seed in [1, 1 + delta]")->capture_default_str();
  chk->add_option("--n", check_args.n, "commodities (lemmas, default 2) or largest n (pot-ratio, default 5)");
  chk->add_option("--k-range", check_args.k_range, "standalone optima of generated instances");
  chk->add_option("--rng-seed", check_args.rng_seed)->capture_default_str();
  chk->add_option("--count", check_args.count, "pot-ratio: instances")->capture_default_str();
  chk->add_flag("--fixed-base", check_args.fixed_base, "pot-ratio: base 1 instead of the optimised base");
  chk->add_option("--threshold", check_args.threshold, "pot-ratio: largest accepted ratio")->capture_default_str();
  chk->add_option("--max-profiles", check_args.max_profiles)->capture_default_str()->check(CLI::PositiveNumber);
  check_args.flags.add_to(chk);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "random instance with integer standalone optima");
  gen->add_option("--n", gen_args.n)->capture_default_str();
  gen->add_option("--k-range", gen_args.k_range)->capture_default_str();
  gen->add_option("--max-den", gen_args.max_den)->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--rng-seed", gen_args.rng_seed)->capture_default_str();
  gen->add_option("--out", gen_args.out, "write here instead of stdout");

  std::vector<char*> argv;
  std::vector<std::string> owned = args.empty() ? std::vector<std::string>{"jrp-forge"} : args;
  for (auto& s : owned) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*eval) return cmd_eval(eval_args, common, out);
    if (*solve) return cmd_solve(solve_args, common, out);
    if (*red) return cmd_reduce(reduce_args, common, out);
    if (*sat) return cmd_sat(sat_args, out);
    if (*chk) return cmd_check(check_args, common, out);
    return cmd_gen(gen_args, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::logic_error& e) {
    err << "property violation: " << e.what() << '\n';
    return kPropertyViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace jrp::cli
