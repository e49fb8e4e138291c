// synchro: command-line front end for the gadget constructions and the
// reset-word solvers.
//
// Exit codes: 0 pass, 1 check failed, 2 usage or parse error,
// 3 search budget or state cap exceeded.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <synchro/synchro.hpp>

namespace {

using namespace synchro;

constexpr int kExitPass = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << content;
}

std::string render_set(const StateSet& set, const std::map<State, std::string>& labels) {
  constexpr std::size_t kShown = 12;
  std::string out = "{";
  std::size_t shown = 0;
  for (State q : set.members()) {
    if (shown == kShown) {
      out += ", ...";
      break;
    }
    if (shown++) out += ", ";
    auto it = labels.find(q);
    out += it != labels.end() ? it->second : std::to_string(q);
  }
  return out + "}";
}

struct BudgetFlags {
  std::size_t budget_sets = std::size_t{1} << 26;
  std::size_t max_depth = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--budget-sets", budget_sets, "Stop the exact search after this many distinct sets")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-depth", max_depth, "Stop the exact search beyond this word length (0: none)");
  }
  SearchBudget budget() const {
    SearchBudget b;
    b.max_visited_sets = budget_sets;
    if (max_depth > 0) b.max_depth = max_depth;
    return b;
  }
};

int cmd_gen(const std::string& cnf_path, int r, bool binary, std::size_t state_cap,
            const std::string& out_path) {
  const auto formula = parse_dimacs(slurp(cnf_path));
  LabeledDfa gadget = build_iterated_gadget(formula, r, state_cap);
  if (binary) gadget = to_binary(gadget);
  const std::string text = serialize_dfa(gadget.dfa(), gadget.label_map());
  std::ostream& info = out_path.empty() ? std::cerr : std::cout;
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  info << "states " << gadget.num_states() << "\n"
       << "letters " << gadget.dfa().num_letters() << "\n"
       << "n " << formula.num_vars() << " m " << formula.num_clauses() << " r " << r
       << (binary ? " binary" : "") << "\n";
  return kExitPass;
}

int cmd_exact(const std::string& dfa_path, const SearchBudget& budget) {
  const auto dfa = parse_dfa(slurp(dfa_path));
  const auto res = min_reset_word(dfa, budget);
  std::cout << "status " << to_string(res.status) << "\n";
  if (res.found()) {
    std::cout << "length " << *res.length << "\n"
              << "word " << word_to_string(*res.word) << "\n";
  } else if (res.status == SearchStatus::budget_exceeded) {
    std::cout << "lower bound " << res.explored_depth + 1 << "\n";
  }
  std::cout << "visited_sets " << res.visited_sets << "\n"
            << "peak_frontier " << res.peak_frontier << "\n";
  switch (res.status) {
    case SearchStatus::found: return kExitPass;
    case SearchStatus::not_synchronizing: return kExitFailed;
    case SearchStatus::budget_exceeded: return kExitBudget;
  }
  return kExitFailed;
}

int cmd_greedy(const std::string& dfa_path) {
  const auto dfa = parse_dfa(slurp(dfa_path));
  MergeTable merges(dfa);
  if (!merges.all_mergeable()) {
    std::cout << "not synchronizing\n";
    return kExitFailed;
  }
  const Word w = eppstein_greedy(dfa, merges);
  std::cout << "length " << w.size() << "\n"
            << "word " << word_to_string(w) << "\n";
  return kExitPass;
}

int cmd_check(const std::string& dfa_path, const std::string& word_text) {
  const auto doc = read_dfa_document(slurp(dfa_path));
  Word w;
  try {
    w = word_from_string(word_text, doc.dfa.num_letters());
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const auto img = image(doc.dfa, w);
  std::cout << "image size " << img.size() << "\n"
            << "image " << render_set(img, doc.labels) << "\n"
            << (img.size() == 1 ? "synchronizes" : "does not synchronize") << "\n";
  return img.size() == 1 ? kExitPass : kExitFailed;
}

int cmd_verify(const std::string& cnf_path, const VerifyOptions& options) {
  const auto formula = parse_dimacs(slurp(cnf_path));
  const auto rep = verify_formula(std::filesystem::path(cnf_path).stem().string(), formula, options);
  std::cout << render_report(rep);
  if (!rep.passed()) return kExitFailed;
  return rep.any_skipped() ? kExitBudget : kExitPass;
}

int cmd_bench(const std::string& dir, const std::string& csv_path, const BenchOptions& options) {
  const auto result = run_bench(dir, options);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  const std::string csv = bench_csv(result.rows);
  if (csv_path.empty())
    std::cout << csv;
  else
    write_file(csv_path, csv);
  return kExitPass;
}

int cmd_corpus(const std::string& dir, int count) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto emit = [&](const std::string& name, const CnfFormula& f) {
    write_file((fs::path(dir) / (name + ".cnf")).string(), to_dimacs(f, name));
  };
  emit("psi1", corpus::psi1());
  emit("psi2", corpus::psi2());
  for (const auto& nf : corpus::satisfiable_sweep(count)) emit(nf.name, nf.formula);
  for (const auto& nf : corpus::unsatisfiable_sweep(count)) emit(nf.name, nf.formula);
  std::cout << "wrote " << 2 + 2 * count << " formulas to " << dir << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synchronizing automata: hardness gadgets, exact and greedy reset words"};
  app.require_subcommand(1);

  std::string input, output, word, csv;
  int r = 2;
  bool binary = false;
  bool timing = false;
  int corpus_count = 10;
  std::size_t state_cap = kDefaultStateCap;
  BudgetFlags budget_flags;

  auto* gen = app.add_subcommand("gen", "Build A_r(psi) from a DIMACS CNF file, write DFA v1");
  gen->add_option("cnf", input, "DIMACS CNF file")->required();
  gen->add_option("--r", r, "Iteration depth (2: base gadget)")->check(CLI::Range(2, 64));
  gen->add_flag("--binary", binary, "Apply the two-letter encoding");
  gen->add_option("--state-cap", state_cap, "Refuse to build more states than this");
  gen->add_option("-o,--output", output, "Output file (default: standard output)");

  auto* exact = app.add_subcommand("exact", "Shortest reset word by subset BFS");
  exact->add_option("dfa", input, "DFA v1 file")->required();
  budget_flags.attach(exact);

  auto* greedy = app.add_subcommand("greedy", "Reset word from the pairwise-merge greedy");
  greedy->add_option("dfa", input, "DFA v1 file")->required();

  auto* check = app.add_subcommand("check", "Apply a word to all states and report the image");
  check->add_option("dfa", input, "DFA v1 file")->required();
  check->add_option("word", word, "Word over a, b, c (may be empty)")->required();

  auto* verify = app.add_subcommand("verify", "Run every gadget check on one formula");
  verify->add_option("cnf", input, "DIMACS CNF file")->required();
  verify->add_option("--r", r, "Iteration depth")->check(CLI::Range(2, 64));
  verify->add_flag("--binary", binary, "Also check the two-letter sandwich bound");
  verify->add_option("--state-cap", state_cap, "Refuse to build more states than this");
  budget_flags.attach(verify);

  auto* bench = app.add_subcommand("bench", "Exact vs greedy on every .cnf in a directory, r = 2 and 3");
  bench->add_option("dir", input, "Directory of DIMACS CNF files")->required();
  bench->add_option("--csv,-o", csv, "CSV output file (default: standard output)");
  bench->add_flag("--timing", timing, "Fill the wall_millis column");
  bench->add_option("--state-cap", state_cap, "Skip gadgets with more states than this");
  budget_flags.attach(bench);

  auto* corpus_cmd = app.add_subcommand("corpus", "Write the bundled fixture formulas to a directory");
  corpus_cmd->add_option("dir", input, "Output directory")->required();
  corpus_cmd->add_option("--count", corpus_count, "Formulas per family")->check(CLI::Range(0, 1000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(input, r, binary, state_cap, output);
    if (*exact) return cmd_exact(input, budget_flags.budget());
    if (*greedy) return cmd_greedy(input);
    if (*check) return cmd_check(input, word);
    if (*verify) {
      VerifyOptions options;
      options.r = r;
      options.binary = binary;
      options.budget = budget_flags.budget();
      options.state_cap = state_cap;
      return cmd_verify(input, options);
    }
    if (*bench) {
      BenchOptions options;
      options.budget = budget_flags.budget();
      options.state_cap = state_cap;
      options.timing = timing;
      return cmd_bench(input, csv, options);
    }
    if (*corpus_cmd) return cmd_corpus(input, corpus_count);
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
