// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance          run all criteria
//   acceptance 3 5      run only criteria 3 and 5
//
// Exit status is 0 only if every selected criterion passed.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <synchro/synchro.hpp>

#include "oracles.hpp"

using namespace synchro;

namespace {

// Every bound below is exact (integer or rational); only wall-clock limits
// carry a tolerance, and those are the budgets stated per criterion.
constexpr double kSeconds1 = 1.0;
constexpr double kSeconds3 = 120.0;
constexpr double kSeconds4 = 600.0;
constexpr double kSeconds6 = 300.0;
constexpr std::size_t kExactBudget = std::size_t{1} << 26;
constexpr int kSweepCount = 50;
constexpr std::size_t kSmallGadgetStates = 1000;
constexpr int kMinFinishedR3 = 3;
constexpr int kSandwichGadgets = 20;
constexpr std::size_t kSandwichMaxMin = 12;
constexpr int kRandomDfas = 500;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("violated: " + what);
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

SearchBudget exact_budget() {
  SearchBudget b;
  b.max_visited_sets = kExactBudget;
  return b;
}

std::vector<corpus::NamedFormula> sweep() {
  auto all = corpus::satisfiable_sweep(kSweepCount);
  for (auto& nf : corpus::unsatisfiable_sweep(kSweepCount)) all.push_back(std::move(nf));
  return all;
}

// 1. Satisfiable worked example.
void criterion1(Verdict& v) {
  const auto t0 = Clock::now();
  const auto g = build_base_gadget(corpus::psi1());
  const int n = corpus::psi1().num_vars();
  const Word w = word_from_string("cbbac", 3);
  const auto img = image(g.dfa(), w);
  const auto r = min_reset_word(g.dfa(), exact_budget());
  const double secs = seconds_since(t0);

  v.require(g.num_states() == 41, "41 states");
  v.require(img == StateSet::of(g.num_states(), {g.state_of(z0_label())}), "Q.cbbac = {z0}");
  v.require(r.found() && *r.length == 5, "min = 5");
  v.require(r.found() && *r.length == static_cast<std::size_t>(n + 2), "min = n+2");
  v.require(secs < kSeconds1, "runtime < 1 s");
  v.detail << "states=" << g.num_states() << " |Q.cbbac|=" << img.size()
           << " min=" << (r.found() ? std::to_string(*r.length) : "?") << " n+2=" << n + 2;
}

// 2. Unsatisfiable worked example; expected minimum 8.
void criterion2(Verdict& v) {
  const auto t0 = Clock::now();
  const auto g = build_base_gadget(corpus::psi2());
  const int n = corpus::psi2().num_vars();
  const auto r = min_reset_word(g.dfa(), exact_budget());
  const double secs = seconds_since(t0);
  const std::size_t expected = 8;

  v.require(r.found(), "exact search finishes");
  if (r.found()) {
    v.require(*r.length == expected, "min = 8");
    v.require(*r.length > static_cast<std::size_t>(2 * (n - 1)), "min > 2(n-1)");
    v.detail << "min=" << *r.length << " word=" << word_to_string(*r.word) << " expected=" << expected
             << " 2(n-1)=" << 2 * (n - 1);
  }
  const auto a7c = word_from_string("aaaaaaac", 3);
  const auto img = image(g.dfa(), a7c);
  v.detail << " |Q.a^7c|=" << img.size();
  v.require(secs < kSeconds1, "runtime < 1 s");
}

// 3. Randomized sweep at r = 2.
void criterion3(Verdict& v) {
  const auto t0 = Clock::now();
  int sat = 0, unsat = 0, equality_violations = 0, unfinished = 0;
  for (const auto& nf : sweep()) {
    const int n = nf.formula.num_vars();
    v.require(n >= 3 && n <= 5 && nf.formula.num_clauses() <= 8, nf.name + " within n in {3,4,5}, m <= 8");
    const bool is_sat = brute_force_sat(nf.formula).has_value();
    const auto g = build_base_gadget(nf.formula);
    const auto r = min_reset_word(g.dfa(), exact_budget());
    if (!r.found()) {
      ++unfinished;
      v.require(false, nf.name + " exact search finished");
      continue;
    }
    if (is_sat) {
      ++sat;
      v.require(*r.length <= static_cast<std::size_t>(n + 2), nf.name + " min <= n+2");
      if (*r.length != static_cast<std::size_t>(n + 2)) {
        ++equality_violations;
        v.notes.push_back("equality min = n+2 fails on " + nf.name + " (min " + std::to_string(*r.length) + ")");
      }
    } else {
      ++unsat;
      v.require(*r.length > static_cast<std::size_t>(2 * (n - 1)), nf.name + " min > 2(n-1)");
    }
  }
  const double secs = seconds_since(t0);
  v.require(sat == kSweepCount && unsat == kSweepCount, "50 satisfiable + 50 unsatisfiable");
  v.require(secs < kSeconds3, "runtime < 120 s");
  v.detail << "sat=" << sat << " unsat=" << unsat << " equality-violations=" << equality_violations
           << " unfinished=" << unfinished << " time=" << secs << "s";
}

// 4. r = 3 desk check.
void criterion4(Verdict& v) {
  const auto t0 = Clock::now();
  int witnesses = 0, finished = 0, exceeded = 0;
  for (const auto& nf : corpus::satisfiable_sweep(kSweepCount)) {
    const auto tau = brute_force_sat(nf.formula);
    v.require(tau.has_value(), nf.name + " satisfiable");
    if (!tau) continue;
    const auto g = build_iterated_gadget(nf.formula, 3);
    const Word w = witness_word(*tau, 3);
    const bool ok = w.size() == static_cast<std::size_t>(nf.formula.num_vars() + 3) &&
                    image(g.dfa(), w) == StateSet::of(g.num_states(), {g.state_of(z0_label())});
    v.require(ok, nf.name + " ccv(tau)c synchronizes A_3");
    witnesses += ok;
  }
  for (const auto& nf : corpus::unsatisfiable_sweep(kSweepCount)) {
    if (nf.formula.num_clauses() > 2) continue;
    if (iterated_gadget_size(nf.formula, 3) > kSmallGadgetStates) continue;
    const int n = nf.formula.num_vars();
    const auto g = build_iterated_gadget(nf.formula, 3);
    const auto r = min_reset_word(g.dfa(), exact_budget());
    if (r.found()) {
      ++finished;
      v.require(*r.length > static_cast<std::size_t>(3 * (n - 1)), nf.name + " min > 3(n-1)");
    } else {
      ++exceeded;
      v.notes.push_back(nf.name + ": budget exceeded");
    }
  }
  const double secs = seconds_since(t0);
  v.require(finished >= kMinFinishedR3, "at least 3 small unsatisfiable instances finish");
  v.require(secs < kSeconds4, "runtime < 10 min");
  v.detail << "witnesses=" << witnesses << " unsat-finished=" << finished << " budget-exceeded=" << exceeded
           << " time=" << secs << "s";
}

// 5. Lemma suite and control-row distance.
void criterion5(Verdict& v) {
  int lemma_instances = 0, gadgets = 0;
  for (const auto& nf : sweep()) {
    const int n = nf.formula.num_vars();
    const auto g = build_base_gadget(nf.formula);
    ++gadgets;
    const auto len = control_path_length(g);
    v.require(len && *len == static_cast<std::size_t>(n + 1), nf.name + " dist(q_{m+1,1}, z0) = n+1");
    if (brute_force_sat(nf.formula) || n > 5) continue;
    const auto words = ab_words(n, n);
    v.require(words.exhaustive, nf.name + " exhaustive enumeration");
    const auto l1 = check_clause_block_survives(g, words);
    const auto l2 = check_control_reoccupied(g, words);
    v.require(l1.holds, nf.name + " lemma 1: " + l1.detail);
    v.require(l2.holds, nf.name + " lemma 2: " + l2.detail);
    ++lemma_instances;
  }
  v.require(lemma_instances == kSweepCount, "every unsatisfiable sweep formula checked");
  v.detail << "lemma-instances=" << lemma_instances << " path-checked-gadgets=" << gadgets;
}

// 6. Binary sandwich.
void criterion6(Verdict& v) {
  const auto t0 = Clock::now();
  int used = 0;
  const auto sat = corpus::satisfiable_sweep(kSweepCount);
  const auto unsat = corpus::unsatisfiable_sweep(kSweepCount);
  std::vector<const corpus::NamedFormula*> order;
  for (std::size_t i = 0; i < sat.size(); ++i) {
    order.push_back(&sat[i]);
    order.push_back(&unsat[i]);
  }
  for (const auto* nf : order) {
    if (used == kSandwichGadgets) break;
    const auto g = build_base_gadget(nf->formula);
    const auto a = min_reset_word(g.dfa(), exact_budget());
    if (!a.found() || *a.length > kSandwichMaxMin) continue;
    ++used;
    const auto b_dfa = to_binary(g);
    const auto b = min_reset_word(b_dfa.dfa(), exact_budget());
    v.require(b.found(), nf->name + " binary search finishes");
    if (!b.found()) continue;
    v.require(*a.length <= *b.length && *b.length <= 3 * *a.length,
              nf->name + " " + std::to_string(*a.length) + " <= " + std::to_string(*b.length) + " <= 3*" +
                  std::to_string(*a.length));
    v.require(is_reset_word(b_dfa.dfa(), translate_word(*a.word)), nf->name + " translated word synchronizes B");
  }
  const double secs = seconds_since(t0);
  v.require(used == kSandwichGadgets, "20 gadgets with min <= 12");
  v.require(secs < kSeconds6, "runtime < 5 min");
  v.detail << "gadgets=" << used << " time=" << secs << "s";
}

// 7. Exact solver against iterative deepening.
void criterion7(Verdict& v) {
  std::mt19937_64 rng(0xacce97);
  int synchronizing = 0, disagreements = 0;
  for (int t = 0; t < kRandomDfas; ++t) {
    const auto n = 1 + rng() % 8;
    const auto k = 1 + rng() % 3;
    const auto d = corpus::random_dfa(n, k, rng);
    const auto r = min_reset_word(d);
    const auto id = oracle::iterative_deepening_min_reset(d);
    const bool agree = r.found() == id.has_value() && (!id || (*r.length == *id && is_reset_word(d, *r.word)));
    if (!agree) {
      ++disagreements;
      v.require(false, "random DFA #" + std::to_string(t) + " agrees");
    }
    synchronizing += id.has_value();
  }
  v.detail << "dfas=" << kRandomDfas << " synchronizing=" << synchronizing << " disagreements=" << disagreements;
}

// 8. Greedy validity, exact ratios, deterministic bench CSV.
void criterion8(Verdict& v) {
  std::vector<Dfa> automata;
  for (const auto& nf : sweep()) {
    const auto g = build_base_gadget(nf.formula);
    automata.push_back(g.dfa());
    automata.push_back(to_binary(g).dfa());
  }
  for (const auto& f : {corpus::psi1(), corpus::psi2()})
    for (int r : {2, 3}) automata.push_back(build_iterated_gadget(f, r).dfa());
  for (std::size_t n = 2; n <= 8; ++n) automata.push_back(corpus::cerny(n));

  int valid = 0, ratios = 0;
  Rational worst(1, 1);
  for (const auto& d : automata) {
    const Word w = eppstein_greedy(d);
    const bool ok = is_reset_word(d, w);
    v.require(ok, "greedy word synchronizes");
    valid += ok;
    const auto r = min_reset_word(d, exact_budget());
    if (!r.found()) continue;
    const auto ratio = performance_ratio(w.size(), *r.length);
    v.require(ratio >= Rational(1, 1), "ratio >= 1");
    if (ratio > worst) worst = ratio;
    ++ratios;
  }

  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("synchro-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "psi1.cnf") << to_dimacs(corpus::psi1(), "psi1");
  std::ofstream(dir / "psi2.cnf") << to_dimacs(corpus::psi2(), "psi2");
  for (const auto& nf : corpus::satisfiable_sweep(10)) std::ofstream(dir / (nf.name + ".cnf")) << to_dimacs(nf.formula);
  for (const auto& nf : corpus::unsatisfiable_sweep(10)) std::ofstream(dir / (nf.name + ".cnf")) << to_dimacs(nf.formula);
  BenchOptions opts;
  opts.rs = {2};
  const std::string first = bench_csv(run_bench(dir, opts).rows);
  const std::string second = bench_csv(run_bench(dir, opts).rows);
  fs::remove_all(dir);
  v.require(first == second, "bench CSV byte-identical across runs");

  v.detail << "automata=" << automata.size() << " valid=" << valid << " ratios=" << ratios
           << " worst-ratio=" << worst.str() << " csv-bytes=" << first.size();
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<void(Verdict&)>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                               criterion5, criterion6, criterion7, criterion8};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int c = std::atoi(argv[i]);
    if (c < 1 || c > static_cast<int>(criteria.size())) {
      std::cerr << "usage: acceptance [criterion 1-8 ...]\n";
      return 2;
    }
    selected.push_back(c);
  }
  if (selected.empty())
    for (int c = 1; c <= static_cast<int>(criteria.size()); ++c) selected.push_back(c);

  int failed = 0;
  for (int c : selected) {
    Verdict v;
    try {
      criteria[static_cast<std::size_t>(c - 1)](v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.notes.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (v.pass ? "[PASS]" : "[FAIL]") << " criterion " << c << ": " << v.detail.str() << "\n";
    constexpr std::size_t kMaxNotes = 10;
    for (std::size_t i = 0; i < v.notes.size() && i < kMaxNotes; ++i) std::cout << "       " << v.notes[i] << "\n";
    if (v.notes.size() > kMaxNotes) std::cout << "       ... " << v.notes.size() - kMaxNotes << " more\n";
    failed += !v.pass;
  }
  std::cout.flush();
  return failed == 0 ? 0 : 1;
}
