#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "core.hpp"
#include "pairs.hpp"

namespace synchro {

// Pairwise-merge greedy (Eppstein). Starting from the full state set, pick
// the pair of current states with the shortest merging word (ties: smallest
// (min, max) pair), append the lexicographically least such word, and repeat
// until one state remains.
inline Word eppstein_greedy(const Dfa& dfa, const MergeTable& merges) {
  if (merges.num_states() != dfa.num_states())
    throw DomainError("merge table was built for a different automaton");
  if (!merges.all_mergeable())
    throw NotSynchronizingError("automaton is not synchronizing: " +
                                std::to_string(merges.unmergeable_pairs()) +
                                " state pairs cannot be merged");
  const std::size_t n = dfa.num_states();
  const std::size_t quadratic_bound = n * n;

  Word word;
  StateSet current = StateSet::full(n);
  for (;;) {
    auto members = current.members();
    if (members.size() <= 1) break;
    std::uint32_t best = MergeTable::kUnmergeable;
    State best_p = 0, best_q = 0;
    // Distance 1 cannot be beaten, so stop scanning at the first one.
    for (std::size_t i = 0; i < members.size() && best > 1; ++i)
      for (std::size_t j = i + 1; j < members.size() && best > 1; ++j) {
        auto d = merges.distance(members[i], members[j]);
        if (d < best) {
          best = d;
          best_p = members[i];
          best_q = members[j];
        }
      }
    Word step = merges.merging_word(best_p, best_q);
    if (step.size() > quadratic_bound)
      throw std::logic_error("merging word of length " + std::to_string(step.size()) +
                             " exceeds the pair-automaton bound " + std::to_string(quadratic_bound));
    current = image(dfa, current, step);
    word.insert(word.end(), step.begin(), step.end());
  }
  return word;
}

inline Word eppstein_greedy(const Dfa& dfa) {
  MergeTable merges(dfa);
  return eppstein_greedy(dfa, merges);
}

// Exact non-negative rational in lowest terms.
class Rational {
 public:
  Rational(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
    if (den == 0) throw DomainError("zero denominator");
    auto g = std::gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<unsigned __int128>(a.num_) * b.den_ <=>
           static_cast<unsigned __int128>(b.num_) * a.den_;
  }

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

 private:
  std::uint64_t num_;
  std::uint64_t den_;
};

// approx / exact as an exact rational; 0/0 (single-state automaton) is 1.
inline Rational performance_ratio(std::uint64_t approx_length, std::uint64_t exact_length) {
  if (exact_length == 0) {
    if (approx_length == 0) return {1, 1};
    throw DomainError("exact length 0 with a non-empty approximate word");
  }
  return {approx_length, exact_length};
}

struct RatioRecord {
  std::uint64_t approx_length;
  std::uint64_t exact_length;
  Rational ratio;
};

inline RatioRecord make_ratio_record(std::uint64_t approx_length, std::uint64_t exact_length) {
  return {approx_length, exact_length, performance_ratio(approx_length, exact_length)};
}

}  // namespace synchro
