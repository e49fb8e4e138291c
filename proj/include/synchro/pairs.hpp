#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "core.hpp"

namespace synchro {

// Shortest merging distances for every unordered pair of distinct states,
// computed once by backward BFS on the pair automaton. distance(p, q) is the
// length of a shortest word w with p.w == q.w, or kUnmergeable.
class MergeTable {
 public:
  static constexpr std::uint32_t kUnmergeable = std::numeric_limits<std::uint32_t>::max();

  explicit MergeTable(const Dfa& dfa) : dfa_(&dfa), n_(dfa.num_states()) {
    if (n_ > 30000) throw CapacityError("pair table would exceed memory for " +
                                         std::to_string(n_) + " states");
    dist_.assign(n_ * (n_ - 1) / 2, kUnmergeable);
    build();
  }
  explicit MergeTable(const Dfa&&) = delete;

  std::size_t num_states() const noexcept { return n_; }

  std::uint32_t distance(State p, State q) const noexcept {
    if (p == q) return 0;
    return dist_[index(p, q)];
  }

  bool all_mergeable() const noexcept { return unmergeable_ == 0; }
  std::size_t unmergeable_pairs() const noexcept { return unmergeable_; }

  // Lexicographically least among the shortest words merging p and q.
  Word merging_word(State p, State q) const {
    Word word;
    std::uint32_t d = distance(p, q);
    if (d == kUnmergeable) throw NotSynchronizingError("states cannot be merged");
    while (p != q) {
      for (Letter x = 0; x < dfa_->num_letters(); ++x) {
        State p2 = (*dfa_)(p, x), q2 = (*dfa_)(q, x);
        if (distance(p2, q2) + 1 == d) {
          word.push_back(x);
          p = p2;
          q = q2;
          --d;
          break;
        }
      }
    }
    return word;
  }

 private:
  static std::size_t index(State p, State q) noexcept {
    if (p > q) std::swap(p, q);
    return static_cast<std::size_t>(q) * (q - 1) / 2 + p;
  }

  void build() {
    const std::size_t k = dfa_->num_letters();
    // Preimages in CSR form, per letter.
    std::vector<std::vector<std::uint32_t>> start(k, std::vector<std::uint32_t>(n_ + 1, 0));
    std::vector<std::vector<State>> pre(k, std::vector<State>(n_));
    for (std::size_t x = 0; x < k; ++x) {
      auto& st = start[x];
      for (State q = 0; q < n_; ++q) ++st[(*dfa_)(q, static_cast<Letter>(x)) + 1];
      for (std::size_t s = 0; s < n_; ++s) st[s + 1] += st[s];
      std::vector<std::uint32_t> fill(st.begin(), st.end() - 1);
      for (State q = 0; q < n_; ++q) pre[x][fill[(*dfa_)(q, static_cast<Letter>(x))]++] = q;
    }

    std::vector<std::pair<State, State>> queue;
    auto visit = [&](State p, State q, std::uint32_t d) {
      auto& slot = dist_[index(p, q)];
      if (slot == kUnmergeable) {
        slot = d;
        queue.emplace_back(p, q);
      }
    };

    for (std::size_t x = 0; x < k; ++x)
      for (State s = 0; s < n_; ++s)
        for (auto i = start[x][s]; i < start[x][s + 1]; ++i)
          for (auto j = i + 1; j < start[x][s + 1]; ++j) visit(pre[x][i], pre[x][j], 1);

    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto [s, t] = queue[head];
      const std::uint32_t d = dist_[index(s, t)] + 1;
      for (std::size_t x = 0; x < k; ++x)
        for (auto i = start[x][s]; i < start[x][s + 1]; ++i)
          for (auto j = start[x][t]; j < start[x][t + 1]; ++j) visit(pre[x][i], pre[x][j], d);
    }
    unmergeable_ = dist_.size() - queue.size();
  }

  const Dfa* dfa_;
  std::size_t n_;
  std::vector<std::uint32_t> dist_;
  std::size_t unmergeable_ = 0;
};

// Cerny's criterion: synchronizing iff every pair of states can be merged.
inline bool is_synchronizing(const Dfa& dfa) {
  return MergeTable(dfa).all_mergeable();
}

}  // namespace synchro
