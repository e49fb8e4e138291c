#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cnf.hpp"
#include "core.hpp"

namespace synchro::corpus {

// x1 v x2 v x3, -x1 v x2, -x2 v x3, -x2 v -x3. Satisfiable by (0, 0, 1).
inline CnfFormula psi1() {
  return CnfFormula::from_ints(3, {{1, 2, 3}, {-1, 2}, {-2, 3}, {-2, -3}});
}

// psi1 with x3 removed from the first clause. Unsatisfiable.
inline CnfFormula psi2() {
  return CnfFormula::from_ints(3, {{1, 2}, {-1, 2}, {-2, 3}, {-2, -3}});
}

// Cerny automaton C_n: a rotates, b sends state n-1 to 0 and fixes the rest.
// Its shortest reset word has length (n-1)^2.
inline Dfa cerny(std::size_t n) {
  std::vector<State> table(n * 2);
  for (State q = 0; q < n; ++q) {
    table[q * 2] = static_cast<State>((q + 1) % n);
    table[q * 2 + 1] = (q == n - 1) ? 0 : q;
  }
  return Dfa(n, 2, std::move(table));
}

inline Dfa random_dfa(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  std::uniform_int_distribution<State> pick(0, static_cast<State>(n - 1));
  std::vector<State> table(n * k);
  for (auto& t : table) t = pick(rng);
  return Dfa(n, k, std::move(table));
}

namespace detail {

inline std::vector<int> random_clause(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> width_dist(1, std::min(n, 3));
  std::vector<int> vars(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) vars[static_cast<std::size_t>(j)] = j + 1;
  std::shuffle(vars.begin(), vars.end(), rng);
  const int width = width_dist(rng);
  std::vector<int> clause;
  for (int t = 0; t < width; ++t) {
    const int v = vars[static_cast<std::size_t>(t)];
    clause.push_back((rng() & 1U) ? v : -v);
  }
  return clause;
}

}  // namespace detail

// Random clauses of width 1..3 over x_1..x_n, each repaired (one literal
// flipped) if a hidden random assignment falsifies it.
inline CnfFormula planted_satisfiable(int n, int m, std::mt19937_64& rng) {
  std::vector<bool> hidden(static_cast<std::size_t>(n));
  for (auto&& v : hidden) v = (rng() & 1U) != 0;
  std::vector<std::vector<int>> clauses;
  for (int i = 0; i < m; ++i) {
    auto clause = detail::random_clause(n, rng);
    const bool sat = std::any_of(clause.begin(), clause.end(), [&](int lit) {
      return hidden[static_cast<std::size_t>(std::abs(lit) - 1)] == (lit > 0);
    });
    if (!sat) {
      std::uniform_int_distribution<std::size_t> pos(0, clause.size() - 1);
      auto& lit = clause[pos(rng)];
      lit = -lit;
    }
    clauses.push_back(std::move(clause));
  }
  return CnfFormula::from_ints(n, clauses);
}

enum class UnsatCore {
  contradiction,  // (x) and (-x)
  empty_clause,   // a single empty clause
  pigeonhole,     // two pigeons, one hole: (x), (y), (-x v -y)
  full_binary,    // all four 2-clauses over two variables
  random,         // random clauses, rejected until unsatisfiable
};

inline const char* to_string(UnsatCore core) {
  switch (core) {
    case UnsatCore::contradiction: return "contra";
    case UnsatCore::empty_clause: return "empty";
    case UnsatCore::pigeonhole: return "php";
    case UnsatCore::full_binary: return "full2";
    case UnsatCore::random: return "random";
  }
  return "?";
}

// An unsatisfiable core over randomly chosen variables of x_1..x_n, padded
// with random clauses up to m clauses total (m is raised to the core size
// if smaller), in shuffled order. The random core retries until the
// brute-force oracle reports unsatisfiable.
inline CnfFormula unsatisfiable(int n, int m, UnsatCore core, std::mt19937_64& rng) {
  std::vector<int> vars(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) vars[static_cast<std::size_t>(j)] = j + 1;
  std::shuffle(vars.begin(), vars.end(), rng);
  const int x = vars[0], y = vars[1];
  std::vector<std::vector<int>> clauses;
  switch (core) {
    case UnsatCore::contradiction: clauses = {{x}, {-x}}; break;
    case UnsatCore::empty_clause: clauses = {{}}; break;
    case UnsatCore::pigeonhole: clauses = {{x}, {y}, {-x, -y}}; break;
    case UnsatCore::full_binary: clauses = {{x, y}, {x, -y}, {-x, y}, {-x, -y}}; break;
    case UnsatCore::random:
      for (;;) {
        clauses.clear();
        for (int i = 0; i < m; ++i) clauses.push_back(detail::random_clause(n, rng));
        if (!brute_force_sat(CnfFormula::from_ints(n, clauses))) break;
      }
      break;
  }
  while (static_cast<int>(clauses.size()) < m) clauses.push_back(detail::random_clause(n, rng));
  std::shuffle(clauses.begin(), clauses.end(), rng);
  return CnfFormula::from_ints(n, clauses);
}

struct NamedFormula {
  std::string name;
  CnfFormula formula;
};

inline std::string instance_name(const std::string& kind, int n, int m, int index) {
  std::string idx = std::to_string(index);
  if (idx.size() < 2) idx.insert(0, 2 - idx.size(), '0');
  return kind + "-n" + std::to_string(n) + "-m" + std::to_string(m) + "-" + idx;
}

// Deterministic desk corpus: `count` planted-satisfiable formulas with
// n in {3, 4, 5}, m in 1..8.
inline std::vector<NamedFormula> satisfiable_sweep(int count, std::uint64_t seed = 20090101) {
  std::mt19937_64 rng(seed);
  std::vector<NamedFormula> out;
  for (int k = 0; k < count; ++k) {
    const int n = 3 + k % 3;
    const int m = 1 + static_cast<int>(rng() % 8);
    out.push_back({instance_name("planted", n, m, k), planted_satisfiable(n, m, rng)});
  }
  return out;
}

// Deterministic desk corpus: `count` unsatisfiable formulas with n in
// {3, 4, 5}, m <= 8, cycling through the core kinds. Bare contradiction and
// empty-clause cores keep m <= 2 so the iterated gadget stays small.
inline std::vector<NamedFormula> unsatisfiable_sweep(int count, std::uint64_t seed = 20090102) {
  std::mt19937_64 rng(seed);
  std::vector<NamedFormula> out;
  constexpr UnsatCore kinds[] = {UnsatCore::contradiction, UnsatCore::pigeonhole,
                                 UnsatCore::random,        UnsatCore::full_binary,
                                 UnsatCore::empty_clause,  UnsatCore::random};
  for (int k = 0; k < count; ++k) {
    const int n = 3 + (k / 6) % 3;
    const UnsatCore core = kinds[k % 6];
    int m = 0;
    switch (core) {
      case UnsatCore::contradiction: m = 2; break;
      case UnsatCore::empty_clause: m = 1 + static_cast<int>(rng() % 2); break;
      case UnsatCore::pigeonhole: m = 3 + static_cast<int>(rng() % 6); break;
      case UnsatCore::full_binary: m = 4 + static_cast<int>(rng() % 5); break;
      case UnsatCore::random: m = 5 + static_cast<int>(rng() % 4); break;
    }
    auto f = unsatisfiable(n, m, core, rng);
    out.push_back({instance_name(std::string("unsat-") + to_string(core), n, f.num_clauses(), k),
                   std::move(f)});
  }
  return out;
}

}  // namespace synchro::corpus
