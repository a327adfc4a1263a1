#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jrp {

/// Literal +i is x_i, -i is its negation; i in [1, num_vars].
using Clause = std::vector<int>;

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// values[i - 1] is the truth value of x_i.
using Assignment = std::vector<bool>;

inline constexpr int kMaxBruteForceVars = 24;

/// Reads DIMACS CNF: 'c' comment lines, one "p cnf n m" header, clauses of
/// whitespace-separated literals each terminated by 0 (a clause may span
/// lines). Throws Error with a kDimacs* code and a "line N:" prefix.
CnfFormula parse_dimacs(std::string_view text);

/// Header, then one clause per line ending in " 0". Comments are dropped.
std::string serialize_dimacs(const CnfFormula& formula);

/// Throws Error(kNot3Sat) naming the first clause (0-based) that does not
/// hold exactly three distinct variables.
void validate_3sat(const CnfFormula& formula);

bool clause_satisfied(const Clause& clause, const Assignment& a);
bool satisfies(const CnfFormula& formula, const Assignment& a);

/// First satisfying assignment in the order x_1 most significant, false <
/// true; std::nullopt when unsatisfiable. Throws kCapExceeded above
/// kMaxBruteForceVars variables.
std::optional<Assignment> brute_force_sat(const CnfFormula& formula);

/// The assignment at position `index` of that order.
Assignment assignment_from_index(int num_vars, std::uint64_t index);

}  // namespace jrp
