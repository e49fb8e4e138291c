#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace synchro {

struct Literal {
  int var;  // 1-based
  bool positive;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

// CNF over variables x_1..x_n. Clauses are kept sorted with duplicate
// literals removed; empty clauses and tautologies are allowed.
class CnfFormula {
 public:
  CnfFormula(int num_vars, std::vector<Clause> clauses)
      : num_vars_(num_vars), clauses_(std::move(clauses)) {
    if (num_vars_ < 1) throw DomainError("a formula needs at least one variable");
    for (auto& clause : clauses_) {
      for (const auto& lit : clause)
        if (lit.var < 1 || lit.var > num_vars_)
          throw DomainError("literal refers to variable " + std::to_string(lit.var) +
                            " outside 1.." + std::to_string(num_vars_));
      std::sort(clause.begin(), clause.end());
      clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    }
  }

  // Clauses from signed DIMACS-style integers.
  static CnfFormula from_ints(int num_vars, const std::vector<std::vector<int>>& clauses) {
    std::vector<Clause> out;
    for (const auto& c : clauses) {
      Clause clause;
      for (int lit : c) {
        if (lit == 0) throw DomainError("literal 0 is not a variable");
        clause.push_back({std::abs(lit), lit > 0});
      }
      out.push_back(std::move(clause));
    }
    return CnfFormula(num_vars, std::move(out));
  }

  int num_vars() const noexcept { return num_vars_; }
  int num_clauses() const noexcept { return static_cast<int>(clauses_.size()); }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }

  // Does literal (var, positive) occur in clause `clause` (1-based)?
  bool contains(int clause, int var, bool positive) const {
    const auto& c = clauses_.at(static_cast<std::size_t>(clause - 1));
    return std::binary_search(c.begin(), c.end(), Literal{var, positive});
  }

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

 private:
  int num_vars_;
  std::vector<Clause> clauses_;
};

class TruthAssignment {
 public:
  explicit TruthAssignment(std::vector<bool> values) : values_(std::move(values)) {
    if (values_.empty()) throw DomainError("an assignment needs at least one variable");
  }

  std::size_t size() const noexcept { return values_.size(); }
  // Value of x_j, j 1-based.
  bool operator[](int j) const { return values_.at(static_cast<std::size_t>(j - 1)); }
  const std::vector<bool>& values() const noexcept { return values_; }

  friend bool operator==(const TruthAssignment&, const TruthAssignment&) = default;

 private:
  std::vector<bool> values_;
};

inline bool satisfies(const CnfFormula& formula, const TruthAssignment& tau) {
  if (static_cast<int>(tau.size()) != formula.num_vars())
    throw DomainError("assignment length does not match the variable count");
  return std::all_of(formula.clauses().begin(), formula.clauses().end(), [&](const Clause& c) {
    return std::any_of(c.begin(), c.end(),
                       [&](const Literal& l) { return tau[l.var] == l.positive; });
  });
}

inline constexpr int kMaxBruteForceVars = 24;

// Enumerates assignments in binary order reading (x_1, ..., x_n) as a
// numeral with x_1 most significant; returns the first satisfying one.
inline std::optional<TruthAssignment> brute_force_sat(const CnfFormula& formula) {
  const int n = formula.num_vars();
  if (n > kMaxBruteForceVars)
    throw CapacityError("brute-force SAT supports at most " + std::to_string(kMaxBruteForceVars) +
                        " variables, formula has " + std::to_string(n));
  // Per clause: bitmask of variables appearing positively / negatively,
  // bit (n - j) for x_j.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> masks;
  for (const auto& c : formula.clauses()) {
    std::uint32_t pos = 0, neg = 0;
    for (const auto& l : c) (l.positive ? pos : neg) |= 1U << (n - l.var);
    masks.emplace_back(pos, neg);
  }
  const std::uint32_t full = (n == 32) ? ~0U : ((1U << n) - 1);
  for (std::uint64_t code = 0; code <= full; ++code) {
    const auto bits = static_cast<std::uint32_t>(code);
    bool ok = std::all_of(masks.begin(), masks.end(), [&](const auto& m) {
      return (bits & m.first) != 0 || (~bits & full & m.second) != 0;
    });
    if (ok) {
      std::vector<bool> values(static_cast<std::size_t>(n));
      for (int j = 1; j <= n; ++j) values[static_cast<std::size_t>(j - 1)] = (bits >> (n - j)) & 1U;
      return TruthAssignment(std::move(values));
    }
  }
  return std::nullopt;
}

// Standard DIMACS CNF: 'c' comment lines, a 'p cnf <n> <m>' header, then
// 0-terminated clauses that may span lines. A '%' line ends the input
// (SATLIB convention).
inline CnfFormula parse_dimacs(std::string_view text) {
  int n = -1, m = -1;
  std::vector<std::vector<int>> clauses;
  std::vector<int> current;
  bool open_clause = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    std::istringstream in(line);
    std::string first;
    if (!(in >> first)) continue;
    if (first == "c" || first[0] == 'c') continue;
    if (first == "%") break;
    if (first == "p") {
      if (n >= 0) throw ParseError(line_no, "duplicate problem line");
      std::string format;
      if (!(in >> format) || format != "cnf" || !(in >> n >> m) || n < 0 || m < 0)
        throw ParseError(line_no, "expected 'p cnf <variables> <clauses>'");
      std::string extra;
      if (in >> extra) throw ParseError(line_no, "trailing content on problem line");
      continue;
    }
    if (n < 0) throw ParseError(line_no, "clause before the 'p cnf' header");
    std::istringstream lits(line);
    std::string tok;
    while (lits >> tok) {
      int lit = 0;
      try {
        std::size_t used = 0;
        lit = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError(line_no, "expected an integer literal, got '" + tok + "'");
      }
      if (lit == 0) {
        clauses.push_back(std::move(current));
        current.clear();
        open_clause = false;
        continue;
      }
      if (std::abs(lit) > n)
        throw ParseError(line_no, "literal " + tok + " refers to a variable beyond " + std::to_string(n));
      current.push_back(lit);
      open_clause = true;
    }
  }
  if (n < 0) throw ParseError(0, "missing 'p cnf' header");
  if (open_clause) {
    // A final clause without its terminating 0 is tolerated.
    clauses.push_back(std::move(current));
  }
  if (static_cast<int>(clauses.size()) != m)
    throw ParseError(0, "header declares " + std::to_string(m) + " clauses, found " +
                            std::to_string(clauses.size()));
  if (n == 0) throw ParseError(0, "formula declares no variables");
  return CnfFormula::from_ints(n, clauses);
}

inline std::string to_dimacs(const CnfFormula& formula, std::string_view comment = {}) {
  std::ostringstream out;
  if (!comment.empty()) out << "c " << comment << '\n';
  out << "p cnf " << formula.num_vars() << ' ' << formula.num_clauses() << '\n';
  for (const auto& c : formula.clauses()) {
    for (const auto& l : c) out << (l.positive ? l.var : -l.var) << ' ';
    out << "0\n";
  }
  return out.str();
}

}  // namespace synchro
