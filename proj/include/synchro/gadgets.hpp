#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cnf.hpp"
#include "core.hpp"

namespace synchro {

// Letters of the three-letter gadgets.
inline constexpr Letter kA = 0;
inline constexpr Letter kB = 1;
inline constexpr Letter kC = 2;

struct StateLabel;
using LabelPtr = std::shared_ptr<const StateLabel>;

// q_{i,j}: clause rows i <= m plus the control row i = m + 1. (m+1, n+1) is z1.
struct QState {
  int row;
  int col;
};
// p_{i,j}: the delay rows.
struct PState {
  int row;
  int col;
};
struct Z1 {};
struct Z0 {};
// (q', q'') with q' in Q_2 \ {z0} and q'' in Q_{r-1}.
// Pair of A_level; rendered "outer|lower" with level - 2 bars, so a pair of
// A_4 never shares a name with a pair inside its A_3 copy.
struct ProductState {
  LabelPtr outer;
  LabelPtr lower;
  int level = 3;
};
// (q, a_i) of the two-letter encoding; pending is 1..3.
struct TripleState {
  LabelPtr base;
  int pending;
};

struct StateLabel {
  std::variant<QState, PState, Z1, Z0, ProductState, TripleState> value;
};

inline std::string to_string(const StateLabel& label) {
  struct Render {
    std::string operator()(const QState& s) const {
      return "q_" + std::to_string(s.row) + "_" + std::to_string(s.col);
    }
    std::string operator()(const PState& s) const {
      return "p_" + std::to_string(s.row) + "_" + std::to_string(s.col);
    }
    std::string operator()(const Z1&) const { return "z1"; }
    std::string operator()(const Z0&) const { return "z0"; }
    std::string operator()(const ProductState& s) const {
      return to_string(*s.outer) + std::string(static_cast<std::size_t>(s.level - 2), '|') + to_string(*s.lower);
    }
    std::string operator()(const TripleState& s) const {
      return to_string(*s.base) + "@" + std::to_string(s.pending);
    }
  };
  return std::visit(Render{}, label.value);
}

inline bool operator==(const StateLabel& a, const StateLabel& b) { return to_string(a) == to_string(b); }

inline StateLabel q_label(int i, int j) { return {QState{i, j}}; }
inline StateLabel p_label(int i, int j) { return {PState{i, j}}; }
inline StateLabel z1_label() { return {Z1{}}; }
inline StateLabel z0_label() { return {Z0{}}; }

struct GadgetMeta {
  int n = 0;
  int m = 0;
  int r = 2;
  bool is_binary = false;
};

// A DFA whose states carry structural labels, with lookup in both directions.
class LabeledDfa {
 public:
  LabeledDfa(Dfa dfa, std::vector<LabelPtr> labels, GadgetMeta meta)
      : dfa_(std::move(dfa)), labels_(std::move(labels)), meta_(meta) {
    if (labels_.size() != dfa_.num_states())
      throw DomainError("label count does not match the state count");
    index_.reserve(labels_.size());
    for (State q = 0; q < labels_.size(); ++q)
      if (!index_.emplace(to_string(*labels_[q]), q).second)
        throw DomainError("duplicate state label " + to_string(*labels_[q]));
  }

  const Dfa& dfa() const noexcept { return dfa_; }
  const GadgetMeta& meta() const noexcept { return meta_; }
  std::size_t num_states() const noexcept { return dfa_.num_states(); }

  const StateLabel& label(State q) const { return *labels_.at(q); }
  const LabelPtr& label_ptr(State q) const { return labels_.at(q); }
  std::string name(State q) const { return to_string(label(q)); }

  State state_of(const StateLabel& label) const { return state_of(to_string(label)); }
  State state_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw DomainError("no state labelled " + name);
    return it->second;
  }
  bool has(const std::string& name) const { return index_.count(name) != 0; }

  std::map<State, std::string> label_map() const {
    std::map<State, std::string> out;
    for (State q = 0; q < labels_.size(); ++q) out.emplace(q, to_string(*labels_[q]));
    return out;
  }

 private:
  Dfa dfa_;
  std::vector<LabelPtr> labels_;
  std::unordered_map<std::string, State> index_;
  GadgetMeta meta_;
};

namespace detail {

// Canonical state numbering of the base gadget: S1 row-major with (m+1, n+1)
// omitted (it is last in row-major order, so no other index shifts), then S2
// row-major, then z1, then z0.
struct BaseLayout {
  int n;
  int m;

  State q(int i, int j) const { return static_cast<State>((i - 1) * (n + 1) + (j - 1)); }
  State s1_size() const { return static_cast<State>((m + 1) * (n + 1) - 1); }
  State p(int i, int j) const { return s1_size() + static_cast<State>((i - 1) * (n + 1) + (j - 1)); }
  State z1() const { return static_cast<State>(2 * (m + 1) * (n + 1) - 1); }
  State z0() const { return z1() + 1; }
  std::size_t size() const { return static_cast<std::size_t>(2 * (m + 1) * (n + 1) + 1); }
};

inline void check_base_params(const CnfFormula& formula) {
  if (formula.num_vars() < 2)
    throw DomainError("gadget construction needs n >= 2 variables, got " +
                      std::to_string(formula.num_vars()));
  if (formula.num_clauses() < 1) throw DomainError("gadget construction needs m >= 1 clauses");
}

}  // namespace detail

// f(d, i, j): z0 when letter d satisfies clause i through variable j,
// otherwise the next column q_{i,j+1}.
inline StateLabel f_aux(Letter d, int i, int j, const CnfFormula& formula) {
  if (d != kA && d != kB) throw DomainError("f is defined for letters a and b only");
  if (i < 1 || i > formula.num_clauses() || j < 1 || j > formula.num_vars())
    throw DomainError("f index out of range");
  if (formula.contains(i, j, d == kA)) return z0_label();
  return q_label(i, j + 1);
}

inline LabeledDfa build_base_gadget(const CnfFormula& formula) {
  detail::check_base_params(formula);
  const int n = formula.num_vars();
  const int m = formula.num_clauses();
  const detail::BaseLayout at{n, m};
  const std::size_t size = at.size();

  std::vector<State> table(size * 3);
  std::vector<LabelPtr> labels(size);
  auto set = [&](State s, State ta, State tb, State tc) {
    table[s * 3 + kA] = ta;
    table[s * 3 + kB] = tb;
    table[s * 3 + kC] = tc;
  };
  // q_{m+1, n+1} is z1.
  auto q = [&](int i, int j) { return (i == m + 1 && j == n + 1) ? at.z1() : at.q(i, j); };
  auto f = [&](Letter d, int i, int j) {
    return formula.contains(i, j, d == kA) ? at.z0() : at.q(i, j + 1);
  };

  for (int i = 1; i <= m + 1; ++i)
    for (int j = 1; j <= n + 1; ++j) {
      if (i == m + 1 && j == n + 1) continue;
      const State s = at.q(i, j);
      labels[s] = std::make_shared<const StateLabel>(q_label(i, j));
      if (i <= m && j <= n)
        set(s, f(kA, i, j), f(kB, i, j), q(i, 1));
      else if (i == m + 1)
        set(s, q(m + 1, j + 1), q(m + 1, j + 1), q(m + 1, 1));
      else
        set(s, at.z0(), at.z0(), q(m + 1, 1));
    }
  for (int i = 1; i <= m + 1; ++i)
    for (int j = 1; j <= n + 1; ++j) {
      const State s = at.p(i, j);
      labels[s] = std::make_shared<const StateLabel>(p_label(i, j));
      if (j <= n)
        set(s, at.p(i, j + 1), at.p(i, j + 1), at.p(i, j + 1));
      else
        set(s, at.z0(), at.z0(), q(i, 1));
    }
  labels[at.z1()] = std::make_shared<const StateLabel>(z1_label());
  set(at.z1(), q(m + 1, 1), q(m + 1, 1), at.z0());
  labels[at.z0()] = std::make_shared<const StateLabel>(z0_label());
  set(at.z0(), at.z0(), at.z0(), at.z0());

  return LabeledDfa(Dfa(size, 3, std::move(table)), std::move(labels), {n, m, 2, false});
}

// v(tau): a for true, b for false.
inline Word encode_assignment(const TruthAssignment& tau) {
  Word v;
  v.reserve(tau.size());
  for (bool value : tau.values()) v.push_back(value ? kA : kB);
  return v;
}

// c^{r-1} v(tau) c, of length n + r.
inline Word witness_word(const TruthAssignment& tau, int r) {
  if (r < 2) throw DomainError("witness words need r >= 2");
  Word w(static_cast<std::size_t>(r - 1), kC);
  auto v = encode_assignment(tau);
  w.insert(w.end(), v.begin(), v.end());
  w.push_back(kC);
  return w;
}

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

// |Q_r| = |Q_2|^(r-1); nullopt on overflow.
inline std::optional<std::size_t> iterated_gadget_size(const CnfFormula& formula, int r) {
  const std::size_t base =
      detail::BaseLayout{formula.num_vars(), formula.num_clauses()}.size();
  std::size_t size = base;
  for (int level = 3; level <= r; ++level) {
    if (size > SIZE_MAX / base) return std::nullopt;
    size *= base;
  }
  return size;
}

// A_r(psi). Q_r lists the Q_{r-1} copy first, then pairs (q', q'') with q'
// ranging over Q_2 \ {z0} in canonical order (outer) and q'' over Q_{r-1}.
// A pair drops to its lower component when q' is a column-(n+1) clause
// state, a control-row state q_{m+1,j} with 2 <= j <= n, or z1, and the
// letter sends q' to q_{m+1,1}.
inline LabeledDfa build_iterated_gadget(const CnfFormula& formula, int r,
                                        std::size_t state_cap = kDefaultStateCap) {
  if (r < 2) throw DomainError("iteration depth r must be at least 2");
  detail::check_base_params(formula);
  auto size = iterated_gadget_size(formula, r);
  if (!size || *size > state_cap)
    throw CapacityError("A_" + std::to_string(r) + " would have " +
                        (size ? std::to_string(*size) : std::string("more than SIZE_MAX")) +
                        " states, above the cap of " + std::to_string(state_cap));

  LabeledDfa base = build_base_gadget(formula);
  if (r == 2) return base;

  const int n = formula.num_vars();
  const int m = formula.num_clauses();
  const detail::BaseLayout at{n, m};
  const Dfa& d2 = base.dfa();
  const State q2_z0 = at.z0();
  const State control_start = at.q(m + 1, 1);

  std::vector<bool> drops(at.size(), false);
  for (int i = 1; i <= m; ++i) drops[at.q(i, n + 1)] = true;
  for (int j = 2; j <= n; ++j) drops[at.q(m + 1, j)] = true;
  drops[at.z1()] = true;

  LabeledDfa lower = base;
  for (int level = 3; level <= r; ++level) {
    const Dfa& dl = lower.dfa();
    const std::size_t nl = dl.num_states();
    const std::size_t outer_count = at.size() - 1;  // Q_2 without z0, which is last
    const std::size_t total = nl + outer_count * nl;
    std::vector<State> table(total * 3);
    std::vector<LabelPtr> labels(total);

    for (State s = 0; s < nl; ++s) {
      labels[s] = lower.label_ptr(s);
      for (Letter x = 0; x < 3; ++x) table[s * 3 + x] = dl(s, x);
    }
    const State z0 = lower.state_of(z0_label());
    auto pair_index = [&](State outer, State inner) {
      return static_cast<State>(nl + outer * nl + inner);
    };
    for (State outer = 0; outer < outer_count; ++outer)
      for (State inner = 0; inner < nl; ++inner) {
        const State s = pair_index(outer, inner);
        labels[s] = std::make_shared<const StateLabel>(
            StateLabel{ProductState{base.label_ptr(outer), lower.label_ptr(inner), level}});
        for (Letter x = 0; x < 3; ++x) {
          const State t = d2(outer, x);
          State target;
          if (t == q2_z0)
            target = z0;
          else if (t == control_start && drops[outer])
            target = inner;
          else
            target = pair_index(t, inner);
          table[s * 3 + x] = target;
        }
      }
    lower = LabeledDfa(Dfa(total, 3, std::move(table)), std::move(labels), {n, m, level, false});
  }
  return lower;
}

// Two-letter encoding: states Q x {a_1, a_2, a_3} numbered 3 * q + (i - 1).
// Letter a advances the pending letter (saturating at a_3); letter b applies
// the pending letter to the base state and resets it to a_1.
inline LabeledDfa to_binary(const LabeledDfa& gadget) {
  const Dfa& d = gadget.dfa();
  if (d.num_letters() != 3)
    throw DomainError("two-letter encoding needs a three-letter automaton, got " +
                      std::to_string(d.num_letters()) + " letters");
  const std::size_t n = d.num_states();
  std::vector<State> table(n * 3 * 2);
  std::vector<LabelPtr> labels(n * 3);
  for (State q = 0; q < n; ++q)
    for (int i = 1; i <= 3; ++i) {
      const State s = static_cast<State>(3 * q + (i - 1));
      labels[s] = std::make_shared<const StateLabel>(StateLabel{TripleState{gadget.label_ptr(q), i}});
      table[s * 2 + 0] = static_cast<State>(3 * q + (std::min(i + 1, 3) - 1));
      table[s * 2 + 1] = static_cast<State>(3 * d(q, static_cast<Letter>(i - 1)));
    }
  GadgetMeta meta = gadget.meta();
  meta.is_binary = true;
  return LabeledDfa(Dfa(n * 3, 2, std::move(table)), std::move(labels), meta);
}

// Word over {a_1, a_2, a_3} (letters a, b, c) to a word over {a, b}:
// a leading b, then b / ab / aab per letter.
inline Word translate_word(std::span<const Letter> word) {
  Word out{kB};
  for (Letter x : word) {
    if (x > 2) throw DomainError("translate_word expects letters a, b, c");
    out.insert(out.end(), x, kA);
    out.push_back(kB);
  }
  return out;
}

}  // namespace synchro
