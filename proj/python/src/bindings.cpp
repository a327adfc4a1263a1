// Python face of the toolkit. Documents cross the boundary as JSON strings and
// exact values as "num/den" strings; the jrpforge package turns those into
// dicts and fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "jrp/cli.hpp"
#include "jrp/cost.hpp"
#include "jrp/eoq.hpp"
#include "jrp/error.hpp"
#include "jrp/reduce.hpp"
#include "jrp/sat.hpp"
#include "jrp/serialize.hpp"
#include "jrp/solve.hpp"
#include "jrp/sync.hpp"

namespace py = pybind11;
using namespace jrp;

namespace {

py::dict cost_dict(const CostBreakdown& c) {
  py::dict d;
  d["total"] = c.total.str();
  d["standalone"] = c.standalone_total.str();
  d["joint_frequency"] = c.joint_frequency.str();
  d["joint_cost"] = c.joint_cost.str();
  if (c.per_class) {
    d["tc_constants"] = c.per_class->constants.str();
    d["tc_variables"] = c.per_class->variables.str();
    d["tc_clauses"] = c.per_class->clauses.str();
  }
  return d;
}

py::dict result_dict(const SolveResult& r) {
  py::dict d;
  d["method"] = std::string(to_string(r.method));
  d["scope"] = r.scope;
  d["policy"] = save_policy(r.policy);
  d["cost"] = cost_dict(r.cost);
  d["nodes_explored"] = r.nodes_explored;
  d["seed_exact"] = r.seed_exact;
  d["wall_seconds"] = r.wall_seconds;
  return d;
}

py::object maybe(const MaybeExact& v) {
  return v.exact ? py::object(py::str(v.exact->str())) : py::object(py::none());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact joint replenishment toolkit";
  py::register_exception<Error>(m, "JrpError", PyExc_ValueError);

  m.def(
      "total_cost",
      [](const std::string& instance, const std::string& policy) {
        const Instance inst = load_instance(instance);
        return cost_dict(total_cost(inst, load_policy(policy)));
      },
      py::arg("instance_json"), py::arg("policy_json"));

  m.def(
      "decompose",
      [](const std::string& instance, const std::string& policy) {
        return cost_dict(decompose(load_instance(instance), load_policy(policy)));
      },
      py::arg("instance_json"), py::arg("policy_json"));

  // (approximate t*, exact t* or None)
  m.def(
      "optimal_cycle",
      [](const std::string& k, const std::string& h, const std::string& lambda) {
        const auto r = optimal_cycle(Rational::parse(k), Rational::parse(h), Rational::parse(lambda));
        return py::make_tuple(r.cycle.approx, maybe(r.cycle));
      },
      py::arg("k"), py::arg("h"), py::arg("lam"));

  m.def(
      "union_rate",
      [](const std::vector<std::string>& periods) {
        std::vector<Rational> p;
        for (const auto& s : periods) p.push_back(Rational::parse(s));
        return union_rate(p).str();
      },
      py::arg("periods"));

  m.def(
      "solve",
      [](const std::string& instance, const std::string& method, std::int64_t k_hi, const std::string& base,
         bool optimize_base) {
        const Instance inst = load_instance(instance);
        py::gil_scoped_release release;
        SolveResult r;
        if (method == "exhaustive") {
          r = exhaustive_search(inst, std::vector<KBounds>(inst.commodities.size(), KBounds{1, k_hi}));
        } else if (method == "pot") {
          PowerOfTwoOptions o;
          o.base = Rational::parse(base);
          o.optimize_base = optimize_base;
          r = power_of_two(inst, o);
        } else if (method == "descent") {
          r = coordinate_descent(inst, power_of_two(inst).policy);
        } else {
          throw Error(ErrorCode::kInvalidArgument, "method must be exhaustive, pot or descent");
        }
        py::gil_scoped_acquire acquire;
        return result_dict(r);
      },
      py::arg("instance_json"), py::arg("method") = "exhaustive", py::arg("k_hi") = 8, py::arg("base") = "1",
      py::arg("optimize_base") = false);

  m.def(
      "parse_dimacs",
      [](const std::string& text) {
        const CnfFormula f = parse_dimacs(text);
        return py::make_tuple(f.num_vars, f.clauses);
      },
      py::arg("text"));

  m.def(
      "serialize_dimacs",
      [](int num_vars, const std::vector<Clause>& clauses) {
        CnfFormula f;
        f.num_vars = num_vars;
        f.clauses = clauses;
        return serialize_dimacs(f);
      },
      py::arg("num_vars"), py::arg("clauses"));

  m.def(
      "brute_force_sat",
      [](const std::string& text) -> std::optional<Assignment> { return brute_force_sat(parse_dimacs(text)); },
      py::arg("text"));

  m.def(
      "reduce",
      [](const std::string& text, std::int64_t prime_start, const std::string& constants) {
        CnfFormula f = parse_dimacs(text);
        ReductionConfig cfg;
        cfg.prime_start = prime_start;
        cfg.constants = parse_constants_scheme(constants);
        return save_instance(reduce(f, cfg));
      },
      py::arg("text"), py::arg("prime_start") = kDefaultPrimeStart, py::arg("constants") = "pair-product");

  m.def(
      "verify_roundtrip",
      [](const std::string& text, std::int64_t prime_start) {
        ReductionConfig cfg;
        cfg.prime_start = prime_start;
        const auto r = verify_roundtrip(parse_dimacs(text), cfg);
        py::dict d;
        d["satisfiable"] = r.sat_witness.has_value();
        d["argmin"] = r.argmin;
        d["min_cost"] = r.min_cost.str();
        d["argmin_synchronizes_all"] = r.argmin_synchronizes_all;
        d["sync_iff_sat"] = r.sync_iff_sat;
        d["policies_evaluated"] = r.policies_evaluated;
        return d;
      },
      py::arg("text"), py::arg("prime_start") = kDefaultPrimeStart);

  // (exit code, stdout, stderr) of the command line front end
  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "jrp-forge");
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
