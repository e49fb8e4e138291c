#include <catch_amalgamated.hpp>

#include <random>

#include <synchro/corpus.hpp>
#include <synchro/dfa_io.hpp>
#include <synchro/gadgets.hpp>

using namespace synchro;

TEST_CASE("DFA v1 round trip") {
  SECTION("gadget with labels") {
    const auto g = build_base_gadget(corpus::psi1());
    const auto text = serialize_dfa(g.dfa(), g.label_map());
    CHECK(text.rfind("DFA v1\nstates 41\nletters 3\n", 0) == 0);
    CHECK(text.find("label 0 q_1_1\n") != std::string::npos);
    CHECK(text.find("label 40 z0\n") != std::string::npos);
    const auto doc = read_dfa_document(text);
    CHECK(doc.dfa == g.dfa());
    CHECK(doc.labels == g.label_map());
  }
  SECTION("random automata") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
      const auto d = corpus::random_dfa(1 + rng() % 20, 1 + rng() % 4, rng);
      REQUIRE(parse_dfa(serialize_dfa(d)) == d);
    }
  }
}

TEST_CASE("DFA v1 accepts comments and the minimal automaton") {
  const auto d = parse_dfa("# tiny\nDFA v1\n\nstates 1  # one\nletters 1\n0\n");
  CHECK(d.num_states() == 1);
  CHECK(d.num_letters() == 1);
  CHECK(d(0, 0) == 0);
}

TEST_CASE("DFA v1 parse errors name the line") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_dfa(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 9999;
  };
  CHECK(line_of("DFA v2\nstates 1\nletters 1\n0\n") == 1);
  CHECK(line_of("DFA v1\nstates x\nletters 1\n0\n") == 2);
  CHECK(line_of("DFA v1\nstates 2\nletters 2\n0 1\n1 2\n") == 5);
  CHECK(line_of("DFA v1\nstates 2\nletters 2\n0 1\n1\n") == 5);
  CHECK(line_of("DFA v1\nstates 2\nletters 1\n0\n1\nlabel 2 z0\n") == 6);
  CHECK(line_of("DFA v1\nstates 2\nletters 1\n0\n1\n0\n") == 6);
  CHECK(line_of("DFA v1\nstates 0\nletters 1\n") == 2);
  // Missing rows at end of input are not tied to a line.
  CHECK(line_of("DFA v1\nstates 3\nletters 1\n0\n1\n") == 0);
  CHECK_THROWS_AS(parse_dfa(""), ParseError);
}
