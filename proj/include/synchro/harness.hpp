#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cnf.hpp"
#include "core.hpp"
#include "exact.hpp"
#include "gadgets.hpp"
#include "greedy.hpp"
#include "pairs.hpp"

namespace synchro {

// ---------------------------------------------------------------------------
// Structural checks on constructed gadgets.

// States of A_r grouped by their Q_2 component. For r = 2 every block is a
// single state; for r > 2 the block of q' is {q'} x Q_{r-1}, and the Q_{r-1}
// copy occupies the first |Q_{r-1}| indices.
class GadgetBlocks {
 public:
  explicit GadgetBlocks(const LabeledDfa& gadget)
      : gadget_(&gadget), layout_{gadget.meta().n, gadget.meta().m} {
    if (gadget.meta().is_binary) throw DomainError("block structure needs a three-letter gadget");
    lower_size_ = gadget.meta().r == 2 ? 0 : gadget.num_states() / layout_.size();
  }
  explicit GadgetBlocks(const LabeledDfa&&) = delete;

  std::size_t lower_size() const noexcept { return lower_size_; }

  StateSet block(const StateLabel& q2_state) const {
    StateSet s(gadget_->num_states());
    const State outer = base_index(q2_state);
    if (lower_size_ == 0) {
      s.insert(outer);
    } else {
      const auto first = static_cast<State>(lower_size_ + outer * lower_size_);
      for (State k = 0; k < lower_size_; ++k) s.insert(first + k);
    }
    return s;
  }

  // The Q_{r-1} copy (r > 2).
  StateSet lower_copy() const {
    StateSet s(gadget_->num_states());
    for (State k = 0; k < lower_size_; ++k) s.insert(k);
    return s;
  }

  // T: union of the blocks q_{i,1}, 1 <= i <= m + 1.
  StateSet first_row() const {
    StateSet s(gadget_->num_states());
    for (int i = 1; i <= layout_.m + 1; ++i)
      for (State q : block(q_label(i, 1)).members()) s.insert(q);
    return s;
  }

 private:
  State base_index(const StateLabel& label) const {
    if (auto* q = std::get_if<QState>(&label.value)) {
      if (q->row == layout_.m + 1 && q->col == layout_.n + 1) return layout_.z1();
      return layout_.q(q->row, q->col);
    }
    if (auto* p = std::get_if<PState>(&label.value)) return layout_.p(p->row, p->col);
    if (std::holds_alternative<Z1>(label.value)) return layout_.z1();
    throw DomainError("no block for " + to_string(label));
  }

  const LabeledDfa* gadget_;
  detail::BaseLayout layout_;
  std::size_t lower_size_ = 0;
};

// Words over {a, b} of length n: all of them when n <= exhaustive_max_n,
// otherwise `samples` uniformly random ones from a fixed seed.
struct AbWords {
  std::vector<Word> words;
  bool exhaustive = true;
};

inline AbWords ab_words(int n, int exhaustive_max_n = 12, std::size_t samples = 10000) {
  AbWords out;
  if (n <= exhaustive_max_n) {
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
      Word v(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = ((code >> (n - 1 - j)) & 1U) ? kB : kA;
      out.words.push_back(std::move(v));
    }
    return out;
  }
  out.exhaustive = false;
  std::mt19937_64 rng(0x5eed);
  for (std::size_t s = 0; s < samples; ++s) {
    Word v(static_cast<std::size_t>(n));
    for (auto& x : v) x = (rng() & 1U) ? kB : kA;
    out.words.push_back(std::move(v));
  }
  return out;
}

struct CheckOutcome {
  bool holds = true;
  std::string detail;
};

// For unsatisfiable psi: every v in {a,b}^n leaves some clause block
// q_{i,n+1} (i <= m) fully inside T.v.
inline CheckOutcome check_clause_block_survives(const LabeledDfa& gadget, const AbWords& words) {
  const GadgetBlocks blocks(gadget);
  const auto t = blocks.first_row();
  const int n = gadget.meta().n, m = gadget.meta().m;
  std::vector<StateSet> ends;
  for (int i = 1; i <= m; ++i) ends.push_back(blocks.block(q_label(i, n + 1)));
  for (const auto& v : words.words) {
    const auto img = image(gadget.dfa(), t, v);
    if (std::none_of(ends.begin(), ends.end(), [&](const StateSet& e) { return e.is_subset_of(img); }))
      return {false, "no q_i_" + std::to_string(n + 1) + " block in T." + word_to_string(v)};
  }
  return {true, std::to_string(words.words.size()) + (words.exhaustive ? " words (all)" : " sampled words")};
}

// For unsatisfiable psi: every v in {a,b}^n and letter d keeps q_{m+1,1}
// (r = 2) or the whole Q_{r-1} copy (r > 2) inside T.vd.
inline CheckOutcome check_control_reoccupied(const LabeledDfa& gadget, const AbWords& words) {
  const GadgetBlocks blocks(gadget);
  const auto t = blocks.first_row();
  const int m = gadget.meta().m;
  const auto target = gadget.meta().r == 2 ? blocks.block(q_label(m + 1, 1)) : blocks.lower_copy();
  for (const auto& v : words.words) {
    const auto tv = image(gadget.dfa(), t, v);
    for (Letter d = 0; d < 3; ++d) {
      const Word letter{d};
      if (!target.is_subset_of(image(gadget.dfa(), tv, letter)))
        return {false, std::string("target not inside T.") + word_to_string(v) + letter_char(d)};
    }
  }
  return {true, std::to_string(words.words.size() * 3) + (words.exhaustive ? " words (all)" : " sampled words")};
}

// Every letter fixes z0.
inline bool z0_is_sink(const LabeledDfa& gadget) {
  const State z0 = gadget.state_of(z0_label());
  for (Letter x = 0; x < gadget.dfa().num_letters(); ++x)
    if (gadget.dfa()(z0, x) != z0) return false;
  return true;
}

// Every state reaches z0.
inline bool all_reach_z0(const LabeledDfa& gadget) {
  const auto& d = gadget.dfa();
  const State z0 = gadget.state_of(z0_label());
  std::vector<std::vector<State>> rev(d.num_states());
  for (State q = 0; q < d.num_states(); ++q)
    for (State t : d.row(q)) rev[t].push_back(q);
  std::vector<bool> seen(d.num_states(), false);
  std::vector<State> stack{z0};
  seen[z0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    State t = stack.back();
    stack.pop_back();
    for (State q : rev[t])
      if (!seen[q]) {
        seen[q] = true;
        ++count;
        stack.push_back(q);
      }
  }
  return count == d.num_states();
}

// A_r restricted to its Q_{r-1} copy equals A_{r-1}.
inline bool restriction_matches(const LabeledDfa& outer, const LabeledDfa& lower) {
  const auto& a = outer.dfa();
  const auto& b = lower.dfa();
  if (a.num_letters() != b.num_letters() || a.num_states() < b.num_states()) return false;
  for (State q = 0; q < b.num_states(); ++q)
    for (Letter x = 0; x < b.num_letters(); ++x)
      if (a(q, x) != b(q, x) || outer.name(q) != lower.name(q)) return false;
  return true;
}

// Shortest path q_{m+1,1} -> z0 in a base gadget.
inline std::optional<std::size_t> control_path_length(const LabeledDfa& base) {
  const int m = base.meta().m;
  return shortest_path_length(base.dfa(), base.state_of(q_label(m + 1, 1)),
                              base.state_of(z0_label()));
}

// ---------------------------------------------------------------------------
// End-to-end verification of one formula.

enum class CheckStatus { pass, fail, skipped };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  CheckStatus status;
  std::string detail;
};

struct VerifyOptions {
  int r = 2;
  bool binary = false;
  SearchBudget budget;
  std::size_t state_cap = kDefaultStateCap;
  int lemma_exhaustive_max_n = 12;
  std::size_t lemma_samples = 10000;
};

struct VerificationReport {
  std::string instance;
  int n = 0;
  int m = 0;
  int r = 2;
  bool satisfiable = false;
  std::optional<TruthAssignment> assignment;
  std::size_t gadget_states = 0;
  ResetSearchResult exact;
  std::optional<bool> witness_ok;
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::none_of(checks.begin(), checks.end(),
                        [](const CheckResult& c) { return c.status == CheckStatus::fail; });
  }
  bool any_skipped() const {
    return std::any_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.status == CheckStatus::skipped; });
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline VerificationReport verify_formula(const std::string& instance, const CnfFormula& formula,
                                         const VerifyOptions& options = {}) {
  VerificationReport rep;
  rep.instance = instance;
  rep.n = formula.num_vars();
  rep.m = formula.num_clauses();
  rep.r = options.r;
  auto add = [&](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)});
  };
  auto skip = [&](std::string name, std::string detail) {
    rep.checks.push_back({std::move(name), CheckStatus::skipped, std::move(detail)});
  };

  rep.assignment = brute_force_sat(formula);
  rep.satisfiable = rep.assignment.has_value();
  const int n = rep.n, r = rep.r;

  const LabeledDfa base = build_base_gadget(formula);
  const LabeledDfa gadget = build_iterated_gadget(formula, r, options.state_cap);
  rep.gadget_states = gadget.num_states();

  add("sink", z0_is_sink(gadget), "z0 fixed by a, b, c");
  add("synchronizing", all_reach_z0(gadget) && is_synchronizing(gadget.dfa()),
      "every state reaches z0; all pairs mergeable");
  if (r > 2) {
    const LabeledDfa lower = build_iterated_gadget(formula, r - 1, options.state_cap);
    add("restriction", restriction_matches(gadget, lower),
        "transitions on the Q_" + std::to_string(r - 1) + " copy equal A_" + std::to_string(r - 1));
  }
  {
    auto len = control_path_length(base);
    add("path-length", len && *len == static_cast<std::size_t>(n + 1),
        "q_" + std::to_string(rep.m + 1) + "_1 -> z0 = " + (len ? std::to_string(*len) : "unreachable") +
            ", expected " + std::to_string(n + 1));
  }

  if (rep.satisfiable) {
    const Word w = witness_word(*rep.assignment, r);
    const auto img = image(gadget.dfa(), w);
    rep.witness_ok = img.size() == 1 && img.contains(gadget.state_of(z0_label())) &&
                     w.size() == static_cast<std::size_t>(n + r);
    add("witness", *rep.witness_ok, word_to_string(w) + " (length " + std::to_string(w.size()) + ")");
  }

  rep.exact = min_reset_word(gadget.dfa(), options.budget);
  if (rep.exact.status == SearchStatus::not_synchronizing) {
    add("exact", false, "exact search found no reset word");
  }

  const std::string visited = "visited " + std::to_string(rep.exact.visited_sets) + " sets";
  if (rep.satisfiable) {
    if (r == 2) {
      if (rep.exact.found())
        add("equality-n-plus-2", *rep.exact.length == static_cast<std::size_t>(n + 2),
            "min = " + std::to_string(*rep.exact.length) + ", n+2 = " + std::to_string(n + 2));
      else
        skip("equality-n-plus-2", "exact search budget exceeded, " + visited);
    } else {
      if (rep.exact.found())
        add("upper-bound-n-plus-r", *rep.exact.length <= static_cast<std::size_t>(n + r),
            "min = " + std::to_string(*rep.exact.length) + ", n+r = " + std::to_string(n + r));
      else
        skip("upper-bound-n-plus-r", "exact search budget exceeded, " + visited);
    }
  } else {
    const std::size_t bound = static_cast<std::size_t>(r * (n - 1));
    const std::string name = r == 2 ? "gap-2n-2" : "gap-rn-r";
    if (rep.exact.found()) {
      add(name, *rep.exact.length > bound,
          "min = " + std::to_string(*rep.exact.length) + " > " + std::to_string(bound));
    } else if (rep.exact.status == SearchStatus::budget_exceeded && rep.exact.explored_depth >= bound) {
      add(name, true, "no reset word of length <= " + std::to_string(rep.exact.explored_depth) +
                          " (budget exceeded), bound " + std::to_string(bound));
    } else {
      skip(name, "exact search budget exceeded at depth " + std::to_string(rep.exact.explored_depth));
    }

    const auto words = ab_words(n, options.lemma_exhaustive_max_n, options.lemma_samples);
    auto l1 = check_clause_block_survives(gadget, words);
    add("lemma1", l1.holds, l1.detail);
    auto l2 = check_control_reoccupied(gadget, words);
    add("lemma2", l2.holds, l2.detail);
  }

  if (options.binary) {
    const LabeledDfa binary = to_binary(gadget);
    if (!rep.exact.found()) {
      skip("sandwich", "no exact minimum for the three-letter gadget");
    } else {
      const auto bin = min_reset_word(binary.dfa(), options.budget);
      const auto a = *rep.exact.length;
      const Word translated = translate_word(*rep.exact.word);
      const bool translated_ok = is_reset_word(binary.dfa(), translated);
      if (bin.found()) {
        const auto b = *bin.length;
        add("sandwich", a <= b && b <= 3 * a && translated_ok,
            std::to_string(a) + " <= " + std::to_string(b) + " <= " + std::to_string(3 * a) +
                ", translated word " + (translated_ok ? "synchronizes" : "does NOT synchronize"));
      } else {
        skip("sandwich", "exact search on the binary gadget exceeded its budget");
      }
    }
  }
  return rep;
}

inline std::string render_report(const VerificationReport& rep) {
  std::ostringstream out;
  out << "instance " << rep.instance << "\n";
  out << "n " << rep.n << "  m " << rep.m << "  r " << rep.r << "  states " << rep.gadget_states << "\n";
  out << "satisfiable " << (rep.satisfiable ? "yes" : "no");
  if (rep.assignment) {
    out << " (";
    for (bool v : rep.assignment->values()) out << (v ? '1' : '0');
    out << ")";
  }
  out << "\n";
  out << "exact " << to_string(rep.exact.status);
  if (rep.exact.found()) out << ", length " << *rep.exact.length << ", word " << word_to_string(*rep.exact.word);
  out << ", visited " << rep.exact.visited_sets << "\n";
  std::size_t width = 5;
  for (const auto& c : rep.checks) width = std::max(width, c.name.size());
  for (const auto& c : rep.checks)
    out << "  " << std::left << std::setw(static_cast<int>(width)) << c.name << "  "
        << std::setw(7) << to_string(c.status) << "  " << c.detail << "\n";
  out << (rep.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Benchmark rows.

struct BenchRow {
  std::string instance;
  int n = 0;
  int m = 0;
  int r = 2;
  std::size_t states = 0;
  bool sat = false;
  std::optional<std::size_t> exact_len;
  std::size_t greedy_len = 0;
  std::optional<Rational> ratio;
  std::optional<std::int64_t> wall_millis;
};

struct BenchOptions {
  std::vector<int> rs{2, 3};
  SearchBudget budget;
  std::size_t state_cap = kDefaultStateCap;
  // Wall-clock column stays empty unless set, so output is reproducible.
  bool timing = false;
};

inline BenchRow bench_instance(const std::string& instance, const CnfFormula& formula, int r,
                               const BenchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  BenchRow row;
  row.instance = instance;
  row.n = formula.num_vars();
  row.m = formula.num_clauses();
  row.r = r;
  row.sat = brute_force_sat(formula).has_value();
  const LabeledDfa gadget = build_iterated_gadget(formula, r, options.state_cap);
  row.states = gadget.num_states();
  const auto exact = min_reset_word(gadget.dfa(), options.budget);
  const Word greedy = eppstein_greedy(gadget.dfa());
  if (!is_reset_word(gadget.dfa(), greedy)) throw std::logic_error("greedy word does not synchronize");
  row.greedy_len = greedy.size();
  if (exact.found()) {
    row.exact_len = *exact.length;
    row.ratio = performance_ratio(row.greedy_len, *exact.length);
  }
  if (options.timing)
    row.wall_millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return row;
}

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<std::string> warnings;
};

// Every *.cnf file in `dir`, ordered by file name, crossed with options.rs.
inline BenchResult run_bench(const std::filesystem::path& dir, const BenchOptions& options = {}) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw DomainError(dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".cnf") files.push_back(entry.path());
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  if (files.empty()) throw DomainError("no .cnf files in " + dir.string());

  BenchResult result;
  for (const auto& file : files) {
    const std::string name = file.stem().string();
    std::optional<CnfFormula> formula;
    try {
      std::ifstream in(file);
      if (!in) throw ParseError(0, "cannot open file");
      std::stringstream buf;
      buf << in.rdbuf();
      formula = parse_dimacs(buf.str());
    } catch (const std::exception& e) {
      result.warnings.push_back(file.filename().string() + ": " + e.what());
      continue;
    }
    for (int r : options.rs) {
      try {
        result.rows.push_back(bench_instance(name, *formula, r, options));
      } catch (const std::exception& e) {
        result.warnings.push_back(file.filename().string() + " r=" + std::to_string(r) + ": " + e.what());
      }
    }
  }
  if (result.rows.empty()) throw DomainError("no instance could be benchmarked");
  return result;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "instance,n,m,r,states,sat,exact_len,greedy_len,ratio,wall_millis\n";
  for (const auto& row : rows) {
    out << row.instance << ',' << row.n << ',' << row.m << ',' << row.r << ',' << row.states << ','
        << (row.sat ? 1 : 0) << ',' << (row.exact_len ? std::to_string(*row.exact_len) : "timeout") << ','
        << row.greedy_len << ',' << (row.ratio ? row.ratio->str() : "") << ','
        << (row.wall_millis ? std::to_string(*row.wall_millis) : "") << '\n';
  }
  return out.str();
}

}  // namespace synchro
