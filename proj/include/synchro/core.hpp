#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace synchro {

using State = std::uint32_t;
using Letter = std::uint8_t;

// A word is a plain letter sequence; letters are rendered 'a', 'b', 'c', ...
using Word = std::vector<Letter>;

inline constexpr std::size_t kMaxLetters = 26;

inline char letter_char(Letter x) { return static_cast<char>('a' + x); }

inline std::string word_to_string(std::span<const Letter> word) {
  std::string out;
  out.reserve(word.size());
  for (Letter x : word) out.push_back(letter_char(x));
  return out;
}

// Parses a word over 'a'..('a' + num_letters - 1).
inline Word word_from_string(std::string_view text, std::size_t num_letters = kMaxLetters) {
  Word word;
  word.reserve(text.size());
  for (char ch : text) {
    if (ch < 'a' || static_cast<std::size_t>(ch - 'a') >= num_letters)
      throw DomainError(std::string("letter '") + ch + "' is not in the alphabet a.." +
                        letter_char(static_cast<Letter>(num_letters - 1)));
    word.push_back(static_cast<Letter>(ch - 'a'));
  }
  return word;
}

inline Word concat(std::initializer_list<std::span<const Letter>> parts) {
  Word out;
  for (auto part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

// Complete DFA without initial or final states. The transition table is
// stored row-major: table[q * num_letters + x] = delta(q, x).
class Dfa {
 public:
  Dfa(std::size_t num_states, std::size_t num_letters, std::vector<State> table)
      : num_states_(num_states), num_letters_(num_letters), table_(std::move(table)) {
    if (num_states_ == 0) throw DomainError("a DFA needs at least one state");
    if (num_letters_ == 0 || num_letters_ > kMaxLetters)
      throw DomainError("letter count must be in 1.." + std::to_string(kMaxLetters));
    if (num_states_ > UINT32_MAX) throw CapacityError("too many states");
    if (table_.size() != num_states_ * num_letters_)
      throw DomainError("transition table has " + std::to_string(table_.size()) +
                        " entries, expected " + std::to_string(num_states_ * num_letters_));
    for (std::size_t k = 0; k < table_.size(); ++k)
      if (table_[k] >= num_states_)
        throw DomainError("transition of state " + std::to_string(k / num_letters_) +
                          " under letter " + letter_char(static_cast<Letter>(k % num_letters_)) +
                          " leads to " + std::to_string(table_[k]) + ", outside the state set");
  }

  static Dfa from_rows(const std::vector<std::vector<State>>& rows) {
    if (rows.empty()) throw DomainError("a DFA needs at least one state");
    std::vector<State> table;
    const std::size_t k = rows.front().size();
    for (const auto& row : rows) {
      if (row.size() != k) throw DomainError("ragged transition table");
      table.insert(table.end(), row.begin(), row.end());
    }
    return Dfa(rows.size(), k, std::move(table));
  }

  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t num_letters() const noexcept { return num_letters_; }

  // Unchecked transition.
  State operator()(State q, Letter x) const noexcept { return table_[q * num_letters_ + x]; }

  std::span<const State> row(State q) const {
    return {table_.data() + q * num_letters_, num_letters_};
  }
  std::span<const State> table() const noexcept { return table_; }

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  std::size_t num_states_;
  std::size_t num_letters_;
  std::vector<State> table_;
};

inline State apply_letter(const Dfa& dfa, State q, Letter x) {
  if (q >= dfa.num_states())
    throw DomainError("state " + std::to_string(q) + " out of range");
  if (x >= dfa.num_letters())
    throw DomainError(std::string("letter ") + letter_char(x) + " out of range");
  return dfa(q, x);
}

inline void check_word(const Dfa& dfa, std::span<const Letter> word) {
  for (Letter x : word)
    if (x >= dfa.num_letters())
      throw DomainError(std::string("letter ") + letter_char(x) + " out of range");
}

inline State apply_word(const Dfa& dfa, State q, std::span<const Letter> word) {
  if (q >= dfa.num_states())
    throw DomainError("state " + std::to_string(q) + " out of range");
  check_word(dfa, word);
  for (Letter x : word) q = dfa(q, x);
  return q;
}

// Fixed-capacity subset of {0, ..., capacity-1}, one bit per state.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t capacity)
      : capacity_(capacity), bits_((capacity + 63) / 64, 0) {}

  static StateSet full(std::size_t capacity) {
    StateSet s(capacity);
    for (std::size_t k = 0; k < s.bits_.size(); ++k) s.bits_[k] = ~std::uint64_t{0};
    if (capacity % 64 != 0) s.bits_.back() = (std::uint64_t{1} << (capacity % 64)) - 1;
    return s;
  }

  static StateSet of(std::size_t capacity, std::initializer_list<State> members) {
    StateSet s(capacity);
    for (State q : members) s.insert(q);
    return s;
  }

  std::size_t capacity() const noexcept { return capacity_; }

  void insert(State q) {
    if (q >= capacity_) throw DomainError("state " + std::to_string(q) + " exceeds set capacity");
    bits_[q / 64] |= std::uint64_t{1} << (q % 64);
  }
  bool contains(State q) const noexcept {
    return q < capacity_ && ((bits_[q / 64] >> (q % 64)) & 1U);
  }

  std::size_t size() const noexcept {
    std::size_t n = 0;
    for (auto w : bits_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const noexcept {
    return std::all_of(bits_.begin(), bits_.end(), [](auto w) { return w == 0; });
  }

  // Members in ascending order.
  std::vector<State> members() const {
    std::vector<State> out;
    for (std::size_t k = 0; k < bits_.size(); ++k)
      for (auto w = bits_[k]; w != 0; w &= w - 1)
        out.push_back(static_cast<State>(k * 64 + std::countr_zero(w)));
    return out;
  }

  bool is_subset_of(const StateSet& other) const {
    for (std::size_t k = 0; k < bits_.size(); ++k)
      if (bits_[k] & ~other.bits_[k]) return false;
    return true;
  }

  std::span<const std::uint64_t> words() const noexcept { return bits_; }

  friend bool operator==(const StateSet&, const StateSet&) = default;

 private:
  std::size_t capacity_ = 0;
  std::vector<std::uint64_t> bits_;
};

inline StateSet image(const Dfa& dfa, const StateSet& set, std::span<const Letter> word) {
  if (set.capacity() != dfa.num_states())
    throw DomainError("state set capacity does not match the automaton");
  check_word(dfa, word);
  StateSet current = set;
  for (Letter x : word) {
    StateSet next(dfa.num_states());
    for (State q : current.members()) next.insert(dfa(q, x));
    current = std::move(next);
  }
  return current;
}

inline StateSet image(const Dfa& dfa, std::span<const Letter> word) {
  return image(dfa, StateSet::full(dfa.num_states()), word);
}

inline bool is_reset_word(const Dfa& dfa, std::span<const Letter> word) {
  return image(dfa, word).size() == 1;
}

}  // namespace synchro
