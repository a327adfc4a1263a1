#include "jrp/suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "jrp/cost.hpp"
#include "jrp/eoq.hpp"
#include "jrp/error.hpp"
#include "jrp/generate.hpp"
#include "jrp/reduce.hpp"
#include "jrp/sync.hpp"

namespace jrp {

namespace {

std::string show(const MaybeExact& v) {
  return v.exact ? v.exact->str() : Rational::from_double(v.approx).decimal(17);
}

LemmaCheck check(std::string name, std::string subject, bool holds, std::string lhs, std::string rhs,
                 std::string detail = {}) {
  LemmaCheck c;
  c.name = std::move(name);
  c.subject = std::move(subject);
  c.holds = holds;
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  c.detail = std::move(detail);
  return c;
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

// t*^2 = 2K/(h lambda); exact when t* is rational.
LemmaCheck eoq_check(const std::string& name, const Commodity& c, const Rational& setup,
                     const EoqResult& r) {
  const Rational target = Rational(2) * setup / (c.holding * c.demand);
  if (r.cycle.exact) {
    const Rational sq = *r.cycle.exact * *r.cycle.exact;
    return check(name, c.id, sq == target, sq.str(), target.str(), "t*^2 = 2K/(h lambda)");
  }
  const double sq = r.cycle.approx * r.cycle.approx;
  return check(name, c.id, close(sq, target.to_double(), 1e-13), Rational::from_double(sq).decimal(17),
               target.decimal(17), "t*^2 = 2K/(h lambda), inexact root");
}

std::int64_t rounded_cycle(const Commodity& c) {
  return std::max<std::int64_t>(1, std::llround(optimal_cycle(c).cycle.approx));
}

std::string period_list(const SeriesFamily& f) {
  std::string out = "{";
  for (std::size_t i = 0; i < f.series.size(); ++i) out += (i ? "," : "") + f.series[i].period.str();
  return out + "}";
}

void cardinality_checks(const Instance& inst, const SyncLimits& limits, LemmaReport& out) {
  std::vector<std::int64_t> p;
  for (const auto& c : inst.commodities) p.push_back(rounded_cycle(c));
  while (p.size() < 4) p.push_back(p[p.size() % std::max<std::size_t>(1, inst.commodities.size())] * 2);
  auto fam = [](std::vector<std::int64_t> ps, std::string label) {
    std::vector<Rational> r(ps.begin(), ps.end());
    return SeriesFamily::of(r, std::move(label));
  };
  // F1 = {p1}, F2 = {p2}, F3 = {p3}, and the containing families {p1, p3},
  // {p2, p4} for the monotonicity identity.
  const std::vector<SeriesFamily> three = {fam({p[0]}, "F1"), fam({p[1]}, "F2"), fam({p[2]}, "F3")};
  const std::vector<SeriesFamily> four = {fam({p[0]}, "F1"), fam({p[1]}, "F2"), fam({p[0], p[2]}, "F3"),
                                          fam({p[1], p[3]}, "F4")};
  for (int which = 1; which <= 4; ++which) {
    const auto& families = which == 4 ? four : three;
    std::string subject;
    for (const auto& f : families) subject += (subject.empty() ? "" : " ") + f.label + "=" + period_list(f);
    for (const auto& id : check_cardinality_identities(families, which, limits).checks) {
      LemmaCheck c = check("cardinality_" + std::to_string(which), subject, id.holds, id.lhs.str(),
                           id.rhs.str(), id.name + (id.witness.empty() ? "" : "; " + id.witness));
      c.applicable = id.applicable;
      out.checks.push_back(std::move(c));
    }
  }
}

void cross_seed_checks(const SyncLimits& limits, LemmaReport& out) {
  for (std::int64_t r = 1; r <= 6; ++r) {
    for (std::int64_t q = 1; q <= 6; ++q) {
      if (std::gcd(q, r) != 1) continue;
      const Rational bi(7, 5), bj = bi * Rational(r + q, r);
      const auto cs = ijr_cross_seed(bi, bj);
      const std::vector<SeriesFamily> fams = {SeriesFamily::of({bi}, "Fi"), SeriesFamily::of({bj}, "Fj")};
      const Rational direct = ijr(fams, limits);
      out.checks.push_back(check("cross_seed_ijr", "beta_i=" + bi.str() + " beta_j=" + bj.str(),
                                 cs.value == direct && cs.q == q && cs.r == r, cs.value.str(),
                                 direct.str(), "1/(beta_i (r + q)) against inclusion-exclusion"));
    }
  }
}

void reduction_checks(const Instance& inst, const SyncLimits& limits, LemmaReport& out) {
  const ReductionMeta& meta = *inst.meta;
  const Rational top = Rational(1) + meta.delta;
  for (const auto& c : inst.commodities) {
    if (c.cls != CommodityClass::kConstant && c.cls != CommodityClass::kClause) continue;
    const auto pair = theta_pair(c, inst.joint_setup);
    const bool exact = pair.lower.cycle.exact && pair.upper.cycle.exact;
    const Rational want = exact ? *pair.lower.cycle.exact * top : Rational(0);
    out.checks.push_back(check("theta_sandwich", c.id, exact && *pair.upper.cycle.exact == want,
                               show(pair.upper.cycle), exact ? want.str() : "exact pair expected",
                               "theta_2 = (1 + delta) theta_1"));
  }
  const std::size_t n = meta.pairs.size();
  for (const Rational& beta : {Rational(1), top}) {
    for (const bool value : {false, true}) {
      const Policy p = assignment_to_policy(inst, Assignment(n, value), beta);
      for (const auto& id : meta.variable_ids) {
        const auto s = check_jr_sandwich(inst, p, id, limits);
        out.checks.push_back(check("jr_sandwich", id + " beta=" + beta.str() + " t=" + s.cycle.str(), s.holds,
                                   s.jr.str(), s.bounds.lower.str() + " .. " + s.bounds.upper.str(),
                                   "lower <= jr <= upper where applicable"));
      }
    }
  }
  for (const Rational& beta : {Rational(1), Rational(1) + meta.delta / Rational(2), top}) {
    const auto g = check_gap_inequality(inst, beta, limits);
    const bool holds = g.margin_positive && g.direction_holds;
    LemmaCheck c = check("gap_inequality", "beta=" + beta.str(), holds, g.margin.str(), "0",
                         std::string("margin > 0; target ") + g.target.str() +
                             (g.meets_target ? " met" : " not met"));
    out.checks.push_back(std::move(c));
  }
}

}  // namespace

bool LemmaReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const LemmaCheck& c) { return !c.applicable || c.holds; });
}

LemmaReport lemma_suite(const Instance& instance, const SyncLimits& limits) {
  LemmaReport out;
  for (const auto& c : instance.commodities) {
    const auto pair = theta_pair(c, instance.joint_setup);
    out.checks.push_back(eoq_check("eoq", c, c.setup, optimal_cycle(c)));
    out.checks.push_back(eoq_check("theta_upper", c, c.setup + instance.joint_setup, pair.upper));
  }
  if (!instance.commodities.empty()) {
    cardinality_checks(instance, limits, out);
    Policy p;
    for (const auto& c : instance.commodities) p.cycles[c.id] = Rational(rounded_cycle(c));
    for (const auto& c : instance.commodities) {
      try {
        const Rational jr = marginal_jr(instance, p, c.id, {}, limits);
        out.checks.push_back(check("marginal_jr_routes", c.id, true, jr.str(), jr.str(),
                                   "UJR(F,O) - UJR(O) = UJR(F) - IJR(F,O)"));
      } catch (const std::logic_error& e) {
        out.checks.push_back(check("marginal_jr_routes", c.id, false, "", "", e.what()));
      }
    }
  }
  cross_seed_checks(limits, out);
  if (instance.meta) reduction_checks(instance, limits, out);
  return out;
}

std::vector<KBounds> oracle_bounds(const Instance& instance) {
  std::vector<KBounds> out;
  for (const auto& c : instance.commodities) {
    const auto t = optimal_cycle(c).cycle;
    const std::int64_t top =
        t.exact ? static_cast<std::int64_t>(t.exact->ceil().get_si()) : static_cast<std::int64_t>(std::ceil(t.approx));
    out.push_back({1, std::max<std::int64_t>(1, 2 * top)});
  }
  return out;
}

PotRatioReport pot_ratio_suite(const PotRatioOptions& options) {
  if (options.n_max < 1) throw Error(ErrorCode::kInvalidArgument, "pot-ratio needs n_max >= 1");
  PotRatioReport out;
  for (std::size_t i = 0; i < options.count; ++i) {
    std::mt19937_64 rng(options.rng_seed + i);
    GenOptions gen;
    gen.n = 1 + static_cast<std::size_t>(rng() % options.n_max);
    gen.k_lo = options.k_lo;
    gen.k_hi = options.k_hi;
    gen.max_den = options.max_den;
    const Instance inst = random_instance(rng, gen);
    PowerOfTwoOptions pot_opts;
    pot_opts.optimize_base = options.optimize_base;
    const auto pot = power_of_two(inst, pot_opts, options.limits.sync);
    const auto best = exhaustive_search(inst, oracle_bounds(inst), {}, options.limits);
    PotRatioRow row;
    row.index = i;
    row.n = gen.n;
    row.pot_cost = pot.cost.total;
    row.exhaustive_cost = best.cost.total;
    row.ratio = (pot.cost.total / best.cost.total).to_double();
    if (row.ratio > out.max_ratio) {
      out.max_ratio = row.ratio;
      out.worst_index = i;
    }
    out.rows.push_back(std::move(row));
  }
  out.ok = out.max_ratio <= options.threshold;
  return out;
}

}  // namespace jrp
