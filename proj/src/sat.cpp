#include "jrp/sat.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <set>
#include <sstream>

#include "jrp/error.hpp"
#include "jrp/parallel.hpp"

namespace jrp {

namespace {

[[noreturn]] void fail(ErrorCode code, std::size_t line, const std::string& message) {
  throw Error(code, "line " + std::to_string(line) + ": " + message);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// Strict decimal integer with optional leading '-', no '+', within int range.
bool to_int(std::string_view token, long long& out) {
  if (token.empty() || token.size() > 19) return false;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula f;
  bool have_header = false;
  long long declared_clauses = 0;
  Clause open;
  std::size_t open_line = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    if (tokens[0].front() == 'c') continue;
    if (tokens[0] == "%") break;  // end marker used by some benchmark files
    if (tokens[0] == "p") {
      if (have_header) fail(ErrorCode::kDimacsBadHeader, line_no, "second problem line");
      if (!open.empty() || !f.clauses.empty()) {
        fail(ErrorCode::kDimacsMissingHeader, line_no, "problem line after clauses");
      }
      long long n = 0;
      if (tokens.size() != 4 || tokens[1] != "cnf" || !to_int(tokens[2], n) ||
          !to_int(tokens[3], declared_clauses) || n < 0 || declared_clauses < 0 ||
          n > 1'000'000 || declared_clauses > 100'000'000) {
        fail(ErrorCode::kDimacsBadHeader, line_no, "expected 'p cnf <vars> <clauses>'");
      }
      f.num_vars = static_cast<int>(n);
      have_header = true;
      continue;
    }
    if (!have_header) fail(ErrorCode::kDimacsMissingHeader, line_no, "clause before 'p cnf' header");
    for (const auto tok : tokens) {
      long long lit = 0;
      if (!to_int(tok, lit)) {
        fail(ErrorCode::kDimacsBadToken, line_no, "unexpected token '" + std::string(tok.substr(0, 32)) + "'");
      }
      if (lit == 0) {
        f.clauses.push_back(std::move(open));
        open.clear();
        if (static_cast<long long>(f.clauses.size()) > declared_clauses) {
          fail(ErrorCode::kDimacsCountMismatch, line_no,
               "more than the " + std::to_string(declared_clauses) + " clauses declared");
        }
        continue;
      }
      if (std::llabs(lit) > f.num_vars) {
        fail(ErrorCode::kDimacsLiteralOutOfRange, line_no,
             "literal " + std::to_string(lit) + " outside 1.." + std::to_string(f.num_vars));
      }
      if (open.empty()) open_line = line_no;
      open.push_back(static_cast<int>(lit));
    }
  }
  if (!have_header) fail(ErrorCode::kDimacsMissingHeader, line_no, "no 'p cnf' header");
  if (!open.empty()) fail(ErrorCode::kDimacsUnterminatedClause, open_line, "clause not terminated by 0");
  if (static_cast<long long>(f.clauses.size()) != declared_clauses) {
    fail(ErrorCode::kDimacsCountMismatch, line_no,
         "header declares " + std::to_string(declared_clauses) + " clauses, found " +
             std::to_string(f.clauses.size()));
  }
  return f;
}

std::string serialize_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.num_vars << ' ' << formula.clauses.size() << '\n';
  for (const auto& clause : formula.clauses) {
    for (const int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

void validate_3sat(const CnfFormula& formula) {
  for (std::size_t j = 0; j < formula.clauses.size(); ++j) {
    const Clause& c = formula.clauses[j];
    std::set<int> vars;
    for (const int lit : c) {
      if (lit == 0 || std::abs(lit) > formula.num_vars) {
        throw Error(ErrorCode::kNot3Sat, "clause " + std::to_string(j) + ": literal " +
                                             std::to_string(lit) + " out of range");
      }
      vars.insert(std::abs(lit));
    }
    if (c.size() != 3) {
      throw Error(ErrorCode::kNot3Sat,
                  "clause " + std::to_string(j) + " has " + std::to_string(c.size()) + " literals, need 3");
    }
    if (vars.size() != 3) {
      throw Error(ErrorCode::kNot3Sat,
                  "clause " + std::to_string(j) + " repeats a variable");
    }
  }
}

bool clause_satisfied(const Clause& clause, const Assignment& a) {
  return std::any_of(clause.begin(), clause.end(), [&](int lit) {
    const bool value = a.at(static_cast<std::size_t>(std::abs(lit)) - 1);
    return lit > 0 ? value : !value;
  });
}

bool satisfies(const CnfFormula& formula, const Assignment& a) {
  return std::all_of(formula.clauses.begin(), formula.clauses.end(),
                     [&](const Clause& c) { return clause_satisfied(c, a); });
}

Assignment assignment_from_index(int num_vars, std::uint64_t index) {
  Assignment a(static_cast<std::size_t>(num_vars));
  for (int i = 0; i < num_vars; ++i) {
    // x_1 is the most significant bit
    a[static_cast<std::size_t>(i)] = ((index >> (num_vars - 1 - i)) & 1u) != 0;
  }
  return a;
}

std::optional<Assignment> brute_force_sat(const CnfFormula& formula) {
  if (formula.num_vars > kMaxBruteForceVars) {
    throw Error(ErrorCode::kCapExceeded, "brute force is capped at " +
                                             std::to_string(kMaxBruteForceVars) + " variables");
  }
  if (formula.num_vars < 0) throw Error(ErrorCode::kInvalidArgument, "negative variable count");
  const std::uint64_t count = std::uint64_t{1} << formula.num_vars;
  const unsigned workers = thread_count();
  std::vector<std::uint64_t> first_hit(workers, count);
  parallel_blocks(
      count,
      [&](unsigned w, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          if (satisfies(formula, assignment_from_index(formula.num_vars, i))) {
            first_hit[w] = i;
            return;
          }
        }
      },
      workers);
  const std::uint64_t hit = *std::min_element(first_hit.begin(), first_hit.end());
  if (hit == count) return std::nullopt;
  Assignment a = assignment_from_index(formula.num_vars, hit);
  if (!satisfies(formula, a)) throw std::logic_error("brute force returned a non-satisfying assignment");
  return a;
}

}  // namespace jrp
