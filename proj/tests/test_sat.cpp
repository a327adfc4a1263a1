#include <doctest.h>

#include "jrp/error.hpp"
#include "jrp/sat.hpp"
#include "support.hpp"

using namespace jrp;

namespace {

ErrorCode parse_error(const std::string& text, std::string* message = nullptr) {
  try {
    parse_dimacs(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  FAIL("expected a diagnostic for: " << text);
  return ErrorCode::kInvalidArgument;
}

// Independent oracle: recursive search over x_n first, then x_{n-1}, ...
bool satisfiable_by_recursion(const CnfFormula& f, std::vector<int>& values, int var) {
  if (var == 0) {
    for (const auto& c : f.clauses) {
      bool hit = false;
      for (int lit : c) hit = hit || (values[std::abs(lit)] == (lit > 0 ? 1 : 0));
      if (!hit) return false;
    }
    return true;
  }
  for (int v : {1, 0}) {
    values[var] = v;
    if (satisfiable_by_recursion(f, values, var - 1)) return true;
  }
  return false;
}

CnfFormula random_3sat(test::Gen& g, int n, int m) {
  CnfFormula f;
  f.num_vars = n;
  for (int j = 0; j < m; ++j) {
    std::vector<int> vars;
    while (vars.size() < 3) {
      const int v = static_cast<int>(g.integer(1, n));
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    Clause c;
    for (int v : vars) c.push_back(g.coin() ? v : -v);
    f.clauses.push_back(c);
  }
  return f;
}

}  // namespace

TEST_CASE("parse dimacs") {
  const auto f = parse_dimacs("p cnf 3 1\n1 2 3 0");
  CHECK(f.num_vars == 3);
  REQUIRE(f.clauses.size() == 1);
  CHECK(f.clauses[0] == Clause{1, 2, 3});

  const auto g = parse_dimacs("c comment\nc another\np cnf 4 2\n1 -2\n 3 0 -4 1 2 0\n");
  CHECK(g.clauses == std::vector<Clause>{{1, -2, 3}, {-4, 1, 2}});

  std::string msg;
  CHECK(parse_error("p cnf 3 2\n1 2 3 0\n", &msg) == ErrorCode::kDimacsCountMismatch);
  CHECK(parse_error("1 2 3 0\n", &msg) == ErrorCode::kDimacsMissingHeader);
  CHECK(msg.rfind("line 1:", 0) == 0);
  CHECK(parse_error("") == ErrorCode::kDimacsMissingHeader);
  CHECK(parse_error("p cnf 3 1\n1 2 4 0\n", &msg) == ErrorCode::kDimacsLiteralOutOfRange);
  CHECK(msg.rfind("line 2:", 0) == 0);
  CHECK(parse_error("p cnf 3 1\n1 2 3\n") == ErrorCode::kDimacsUnterminatedClause);
  CHECK(parse_error("p cnf 3 1\n1 x 3 0\n") == ErrorCode::kDimacsBadToken);
  CHECK(parse_error("p cnf 3\n") == ErrorCode::kDimacsBadHeader);
  CHECK(parse_error("p dnf 3 1\n1 2 3 0\n") == ErrorCode::kDimacsBadHeader);
  CHECK(parse_error("p cnf 3 1\np cnf 3 1\n1 2 3 0\n") == ErrorCode::kDimacsBadHeader);
  CHECK(parse_error("p cnf 3 1\n1 2 3 0\n1 2 3 0\n") == ErrorCode::kDimacsCountMismatch);
}

TEST_CASE("serialize round trip") {
  const std::string text =
      "c drop me\np cnf 5 5\n1 -2 3 0\n-1 4 5 0\n2 3 -4 0\n-3 -4 -5 0\n1 2 5 0\n";
  const auto f = parse_dimacs(text);
  const std::string out = serialize_dimacs(f);
  CHECK(out == "p cnf 5 5\n1 -2 3 0\n-1 4 5 0\n2 3 -4 0\n-3 -4 -5 0\n1 2 5 0\n");
  CHECK(parse_dimacs(out) == f);
  CHECK(serialize_dimacs(parse_dimacs(out)) == out);
}

TEST_CASE("validate 3sat") {
  CHECK_THROWS_AS(validate_3sat(parse_dimacs("p cnf 3 1\n1 2 0\n")), Error);
  try {
    validate_3sat(parse_dimacs("p cnf 3 2\n1 2 3 0\n1 -1 2 0\n"));
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNot3Sat);
    CHECK(std::string(e.what()).find("clause 1") != std::string::npos);
  }
  CHECK_NOTHROW(validate_3sat(parse_dimacs("p cnf 4 2\n1 2 3 0\n-2 -3 4 0\n")));
}

TEST_CASE("brute force sat") {
  const auto one = brute_force_sat(parse_dimacs("p cnf 3 1\n1 2 3 0\n"));
  REQUIRE(one);
  // x1 most significant, false before true
  CHECK(*one == Assignment{false, false, true});

  CnfFormula all8;
  all8.num_vars = 3;
  for (int mask = 0; mask < 8; ++mask) {
    all8.clauses.push_back({mask & 4 ? -1 : 1, mask & 2 ? -2 : 2, mask & 1 ? -3 : 3});
  }
  CHECK_FALSE(brute_force_sat(all8));

  CnfFormula empty;
  empty.num_vars = 4;
  CHECK(*brute_force_sat(empty) == Assignment(4, false));

  CnfFormula big;
  big.num_vars = 25;
  CHECK_THROWS_AS(brute_force_sat(big), Error);
}

TEST_CASE("brute force agrees with an independent search") {
  test::Gen g(71);
  int sat = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = static_cast<int>(g.integer(3, 12));
    const int m = static_cast<int>(g.integer(1, 6 * n));
    const auto f = random_3sat(g, n, m);
    std::vector<int> values(static_cast<std::size_t>(n) + 1, 0);
    const bool expected = satisfiable_by_recursion(f, values, n);
    const auto got = brute_force_sat(f);
    CHECK(got.has_value() == expected);
    if (got) {
      ++sat;
      for (const auto& c : f.clauses) {
        bool hit = false;
        for (int lit : c) hit = hit || ((*got)[std::abs(lit) - 1] == (lit > 0));
        CHECK(hit);
      }
      // nothing earlier in the order satisfies the formula
      std::uint64_t index = 0;
      for (bool b : *got) index = index * 2 + (b ? 1 : 0);
      for (std::uint64_t k = 0; k < index; ++k) CHECK_FALSE(satisfies(f, assignment_from_index(n, k)));
    }
  }
  CHECK(sat > 20);
  CHECK(sat < 190);
}
