#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

namespace synchro {

enum class SearchStatus { found, not_synchronizing, budget_exceeded };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::not_synchronizing: return "not synchronizing";
    case SearchStatus::budget_exceeded: return "budget exceeded";
  }
  return "?";
}

struct SearchBudget {
  std::size_t max_visited_sets = std::size_t{1} << 26;
  std::optional<std::size_t> max_depth;
};

struct ResetSearchResult {
  SearchStatus status = SearchStatus::budget_exceeded;
  std::optional<Word> word;
  std::optional<std::size_t> length;
  std::size_t visited_sets = 0;
  std::size_t peak_frontier = 0;
  // Deepest BFS level fully expanded; on budget_exceeded every reset word is
  // longer than this.
  std::size_t explored_depth = 0;

  bool found() const noexcept { return status == SearchStatus::found; }
};

namespace detail {

// Append-only store of equal-width bit vectors with an open-addressing index.
// Ids are assigned in insertion order, so BFS levels are contiguous id ranges.
class SubsetStore {
 public:
  explicit SubsetStore(std::size_t width) : width_(width), slots_(1024, kEmpty) {}

  std::size_t size() const noexcept { return hashes_.size(); }
  const std::uint64_t* data(std::uint32_t id) const noexcept { return arena_.data() + id * width_; }

  // Returns (id, inserted).
  std::pair<std::uint32_t, bool> insert(const std::uint64_t* bits) {
    const std::uint64_t h = hash(bits);
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = h & mask;; i = (i + 1) & mask) {
      std::uint32_t id = slots_[i];
      if (id == kEmpty) break;
      if (hashes_[id] == h && std::memcmp(data(id), bits, width_ * sizeof(std::uint64_t)) == 0)
        return {id, false};
    }
    const auto id = static_cast<std::uint32_t>(hashes_.size());
    arena_.insert(arena_.end(), bits, bits + width_);
    hashes_.push_back(h);
    if (2 * hashes_.size() > slots_.size()) {
      rehash(slots_.size() * 2);
    } else {
      place(id);
    }
    return {id, true};
  }

 private:
  static constexpr std::uint32_t kEmpty = UINT32_MAX;

  std::uint64_t hash(const std::uint64_t* bits) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::size_t k = 0; k < width_; ++k) {
      h ^= bits[k] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return h ^ (h >> 33);
  }

  void place(std::uint32_t id) {
    std::size_t mask = slots_.size() - 1;
    std::size_t i = hashes_[id] & mask;
    while (slots_[i] != kEmpty) i = (i + 1) & mask;
    slots_[i] = id;
  }

  void rehash(std::size_t capacity) {
    slots_.assign(capacity, kEmpty);
    for (std::uint32_t id = 0; id < hashes_.size(); ++id) place(id);
  }

  std::size_t width_;
  std::vector<std::uint64_t> arena_;
  std::vector<std::uint64_t> hashes_;
  std::vector<std::uint32_t> slots_;
};

}  // namespace detail

// Breadth-first search over the distinct images Q.w of the full state set.
// Letters are expanded in ascending order and each set keeps the first
// (predecessor, letter) that reached it, so the returned word is the
// lexicographically least among the shortest reset words.
inline ResetSearchResult min_reset_word(const Dfa& dfa, const SearchBudget& budget = {}) {
  if (budget.max_visited_sets == 0) throw DomainError("visited-set budget must be positive");
  if (budget.max_depth && *budget.max_depth == 0) throw DomainError("depth cap must be positive");

  ResetSearchResult result;
  const std::size_t n = dfa.num_states();
  const std::size_t k = dfa.num_letters();
  if (n == 1) {
    result.status = SearchStatus::found;
    result.word = Word{};
    result.length = 0;
    result.visited_sets = 1;
    result.peak_frontier = 1;
    return result;
  }

  const std::size_t width = (n + 63) / 64;
  detail::SubsetStore store(width);
  struct Parent {
    std::uint32_t id;
    Letter letter;
  };
  std::vector<Parent> parents;

  std::vector<std::uint64_t> scratch(width);
  auto full = StateSet::full(n);
  store.insert(full.words().data());
  parents.push_back({0, 0});

  auto reconstruct = [&](std::uint32_t id, Letter last) {
    Word word{last};
    while (id != 0) {
      word.push_back(parents[id].letter);
      id = parents[id].id;
    }
    std::reverse(word.begin(), word.end());
    return word;
  };

  std::size_t level_begin = 0;
  std::size_t level_end = 1;
  std::size_t depth = 0;
  const auto table = dfa.table();
  while (level_begin < level_end) {
    result.peak_frontier = std::max(result.peak_frontier, level_end - level_begin);
    if (budget.max_depth && depth >= *budget.max_depth) {
      result.status = SearchStatus::budget_exceeded;
      result.visited_sets = store.size();
      result.explored_depth = depth;
      return result;
    }
    for (std::size_t id = level_begin; id < level_end; ++id) {
      for (std::size_t x = 0; x < k; ++x) {
        std::fill(scratch.begin(), scratch.end(), 0);
        // store.data may move on insert, so re-fetch per letter.
        const std::uint64_t* src = store.data(static_cast<std::uint32_t>(id));
        for (std::size_t w = 0; w < width; ++w)
          for (std::uint64_t bits = src[w]; bits != 0; bits &= bits - 1) {
            const std::size_t q = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
            const State t = table[q * k + x];
            scratch[t / 64] |= std::uint64_t{1} << (t % 64);
          }
        std::size_t count = 0;
        for (auto bits : scratch) count += static_cast<std::size_t>(std::popcount(bits));
        if (count == 1) {
          result.status = SearchStatus::found;
          result.word = reconstruct(static_cast<std::uint32_t>(id), static_cast<Letter>(x));
          result.length = result.word->size();
          result.visited_sets = store.size();
          result.explored_depth = depth;
          return result;
        }
        auto [child, inserted] = store.insert(scratch.data());
        if (inserted) {
          parents.push_back({static_cast<std::uint32_t>(id), static_cast<Letter>(x)});
          if (store.size() > budget.max_visited_sets) {
            result.status = SearchStatus::budget_exceeded;
            result.visited_sets = store.size();
            result.explored_depth = depth;
            return result;
          }
        }
        (void)child;
      }
    }
    level_begin = level_end;
    level_end = store.size();
    ++depth;
  }
  result.status = SearchStatus::not_synchronizing;
  result.visited_sets = store.size();
  result.explored_depth = depth;
  return result;
}

// Length of a shortest path from source to target in the transition graph.
inline std::optional<std::size_t> shortest_path_length(const Dfa& dfa, State source, State target) {
  if (source >= dfa.num_states() || target >= dfa.num_states())
    throw DomainError("state index out of range");
  std::vector<std::uint32_t> dist(dfa.num_states(), UINT32_MAX);
  std::vector<State> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    State q = queue[head];
    if (q == target) return dist[q];
    for (State t : dfa.row(q))
      if (dist[t] == UINT32_MAX) {
        dist[t] = dist[q] + 1;
        queue.push_back(t);
      }
  }
  return std::nullopt;
}

}  // namespace synchro
