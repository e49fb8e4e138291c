#include <catch_amalgamated.hpp>

#include <random>

#include <synchro/corpus.hpp>
#include <synchro/exact.hpp>
#include <synchro/gadgets.hpp>

#include "oracles.hpp"

using namespace synchro;

TEST_CASE("min_reset_word on the worked examples") {
  const auto g1 = build_base_gadget(corpus::psi1());
  const auto r1 = min_reset_word(g1.dfa());
  REQUIRE(r1.found());
  CHECK(*r1.length == 5);
  CHECK(word_to_string(*r1.word) == "cbbac");

  // The oracle enumerates all 3^L words up to L = 9.
  const auto g2 = build_base_gadget(corpus::psi2());
  const auto r2 = min_reset_word(g2.dfa());
  const auto brute = oracle::enumerate_min_reset(g2.dfa(), 9);
  REQUIRE(brute);
  REQUIRE(r2.found());
  CHECK(*r2.word == *brute);
  CHECK(*r2.length == 9);
  CHECK(word_to_string(*r2.word) == "aaaacaaac");

  const auto one = min_reset_word(Dfa(1, 2, {0, 0}));
  REQUIRE(one.found());
  CHECK(*one.length == 0);
  CHECK(one.word->empty());

  const auto c4 = min_reset_word(corpus::cerny(4));
  REQUIRE(c4.found());
  CHECK(*c4.length == 9);
  CHECK(*c4.word == *oracle::enumerate_min_reset(corpus::cerny(4), 9));
}

TEST_CASE("min_reset_word reports non-synchronizing automata") {
  const auto r = min_reset_word(Dfa::from_rows({{0, 0}, {1, 1}}));
  CHECK(r.status == SearchStatus::not_synchronizing);
  CHECK_FALSE(r.word);
  CHECK(r.visited_sets == 1);
}

TEST_CASE("search budget") {
  const auto c = corpus::cerny(8);
  SECTION("visited sets") {
    SearchBudget b;
    b.max_visited_sets = 10;
    const auto r = min_reset_word(c, b);
    CHECK(r.status == SearchStatus::budget_exceeded);
    CHECK(r.visited_sets == 11);
    CHECK_FALSE(r.word);
  }
  SECTION("depth cap") {
    SearchBudget b;
    b.max_depth = 20;
    const auto r = min_reset_word(c, b);
    CHECK(r.status == SearchStatus::budget_exceeded);
    CHECK(r.explored_depth == 20);
    b.max_depth = 49;
    CHECK(*min_reset_word(c, b).length == 49);
  }
  SECTION("invalid budgets") {
    SearchBudget b;
    b.max_visited_sets = 0;
    CHECK_THROWS_AS(min_reset_word(c, b), DomainError);
    SearchBudget d;
    d.max_depth = 0;
    CHECK_THROWS_AS(min_reset_word(c, d), DomainError);
  }
}

TEST_CASE("min_reset_word agrees with brute force on random automata") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 250; ++t) {
    const auto d = corpus::random_dfa(1 + rng() % 8, 1 + rng() % 3, rng);
    const auto r = min_reset_word(d);
    const auto id = oracle::iterative_deepening_min_reset(d);
    REQUIRE(r.found() == id.has_value());
    if (!id) continue;
    REQUIRE(*r.length == *id);
    REQUIRE(is_reset_word(d, *r.word));
    // Lexicographically least among the shortest.
    if (*id <= 10) REQUIRE(*r.word == *oracle::enumerate_min_reset(d, *id));
    // Determinism.
    REQUIRE(*min_reset_word(d).word == *r.word);
  }
}

TEST_CASE("shortest_path_length") {
  const auto g = build_base_gadget(corpus::psi1());
  CHECK(shortest_path_length(g.dfa(), g.state_of(q_label(5, 1)), g.state_of(z0_label())) == 4u);
  CHECK(shortest_path_length(g.dfa(), 7, 7) == 0u);
  const auto sinks = Dfa::from_rows({{0}, {1}});
  CHECK_FALSE(shortest_path_length(sinks, 0, 1));
  CHECK_THROWS_AS(shortest_path_length(sinks, 0, 2), DomainError);
}

TEST_CASE("reset length is at least the control-row distance") {
  for (const auto& nf : corpus::satisfiable_sweep(15)) {
    const auto g = build_base_gadget(nf.formula);
    const auto r = min_reset_word(g.dfa());
    REQUIRE(r.found());
    const auto path = shortest_path_length(g.dfa(), g.state_of(q_label(g.meta().m + 1, 1)),
                                           g.state_of(z0_label()));
    REQUIRE(*r.length >= *path);
    REQUIRE(image(g.dfa(), *r.word).size() == 1);
  }
}
