// Builds the gadgets for the two three-variable example formulas and prints
// their shortest reset words next to the greedy ones.

#include <iostream>

#include <synchro/synchro.hpp>

int main() {
  using namespace synchro;
  for (auto [name, formula] : {std::pair{"psi1", corpus::psi1()}, std::pair{"psi2", corpus::psi2()}}) {
    const auto gadget = build_base_gadget(formula);
    const auto exact = min_reset_word(gadget.dfa());
    const auto greedy = eppstein_greedy(gadget.dfa());
    const auto sat = brute_force_sat(formula);
    std::cout << name << ": " << gadget.num_states() << " states, "
              << (sat ? "satisfiable" : "unsatisfiable") << "\n"
              << "  shortest reset word  " << word_to_string(*exact.word) << " (" << *exact.length << ")\n"
              << "  greedy reset word    " << word_to_string(greedy) << " (" << greedy.size() << ")\n"
              << "  performance ratio    " << performance_ratio(greedy.size(), *exact.length).str() << "\n";
    if (sat) {
      const auto w = witness_word(*sat, 2);
      std::cout << "  witness " << word_to_string(w) << " synchronizes: "
                << (is_reset_word(gadget.dfa(), w) ? "yes" : "no") << "\n";
    }
  }
}
