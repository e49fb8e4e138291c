#pragma once

#include <charconv>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"

namespace synchro {

// DFA v1 text format:
//
//   DFA v1
//   states <N>
//   letters <K>
//   <N rows of K state indices>
//   label <i> <name>        (optional, any number)
//
// '#' starts a comment that runs to end of line; blank lines are ignored.
struct DfaDocument {
  Dfa dfa;
  std::map<State, std::string> labels;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view token, std::size_t line, const char* what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(token) + "'");
  return value;
}

}  // namespace detail

inline DfaDocument read_dfa_document(std::string_view text) {
  struct Line {
    std::size_t number;
    std::vector<std::string_view> tokens;
  };
  std::vector<Line> lines;
  std::size_t number = 0;
  for (std::size_t pos = 0; pos <= text.size();) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    auto tokens = detail::split_ws(raw);
    if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
    pos = end + 1;
  }

  std::size_t at = 0;
  auto expect_header = [&](std::string_view keyword) -> std::size_t {
    if (at >= lines.size()) throw ParseError(0, "missing '" + std::string(keyword) + "' line");
    const auto& l = lines[at++];
    if (l.tokens.size() != 2 || l.tokens[0] != keyword)
      throw ParseError(l.number, "expected '" + std::string(keyword) + " <count>'");
    auto v = detail::parse_int<std::size_t>(l.tokens[1], l.number, "a count");
    if (v == 0) throw ParseError(l.number, std::string(keyword) + " count must be positive");
    return v;
  };

  if (at >= lines.size()) throw ParseError(0, "empty input");
  if (lines[at].tokens.size() != 2 || lines[at].tokens[0] != "DFA" || lines[at].tokens[1] != "v1")
    throw ParseError(lines[at].number, "expected header 'DFA v1'");
  ++at;
  const std::size_t n = expect_header("states");
  const std::size_t k = expect_header("letters");
  if (k > kMaxLetters) throw ParseError(lines[at - 1].number, "too many letters");

  std::vector<State> table;
  table.reserve(n * k);
  for (std::size_t q = 0; q < n; ++q) {
    if (at >= lines.size() || lines[at].tokens[0] == "label")
      throw ParseError(at < lines.size() ? lines[at].number : 0,
                       "expected " + std::to_string(n) + " transition rows, found " +
                           std::to_string(q));
    const auto& l = lines[at++];
    if (l.tokens.size() != k)
      throw ParseError(l.number, "row for state " + std::to_string(q) + " has " +
                                     std::to_string(l.tokens.size()) + " entries, expected " +
                                     std::to_string(k));
    for (auto tok : l.tokens) {
      auto target = detail::parse_int<std::size_t>(tok, l.number, "a state index");
      if (target >= n)
        throw ParseError(l.number, "transition target " + std::to_string(target) +
                                       " is not below the state count " + std::to_string(n));
      table.push_back(static_cast<State>(target));
    }
  }

  std::map<State, std::string> labels;
  for (; at < lines.size(); ++at) {
    const auto& l = lines[at];
    if (l.tokens[0] != "label") throw ParseError(l.number, "unexpected content after transition rows");
    if (l.tokens.size() != 3) throw ParseError(l.number, "expected 'label <state> <name>'");
    auto q = detail::parse_int<std::size_t>(l.tokens[1], l.number, "a state index");
    if (q >= n) throw ParseError(l.number, "label refers to state " + std::to_string(q) + " out of range");
    if (!labels.emplace(static_cast<State>(q), std::string(l.tokens[2])).second)
      throw ParseError(l.number, "duplicate label for state " + std::to_string(q));
  }
  return {Dfa(n, k, std::move(table)), std::move(labels)};
}

inline Dfa parse_dfa(std::string_view text) { return read_dfa_document(text).dfa; }

inline std::string serialize_dfa(const Dfa& dfa, const std::map<State, std::string>& labels = {}) {
  std::ostringstream out;
  out << "DFA v1\nstates " << dfa.num_states() << "\nletters " << dfa.num_letters() << '\n';
  for (State q = 0; q < dfa.num_states(); ++q) {
    auto row = dfa.row(q);
    for (std::size_t x = 0; x < row.size(); ++x) out << (x ? " " : "") << row[x];
    out << '\n';
  }
  for (const auto& [q, name] : labels) out << "label " << q << ' ' << name << '\n';
  return out.str();
}

}  // namespace synchro
