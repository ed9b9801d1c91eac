// Command-line front end for the cyclic operator-precedence toolkit.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "copg/chain.hpp"
#include "copg/conversions.hpp"
#include "copg/grammar.hpp"
#include "copg/grammar_io.hpp"
#include "copg/opa.hpp"
#include "copg/opm.hpp"
#include "copg/parallel.hpp"
#include "copg/parser.hpp"
#include "copg/text_util.hpp"

using namespace copg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParseFailure = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Opm load_opm_file(const std::string& path) {
  return Opm::from_json(nlohmann::json::parse(read_file(path)));
}

Opa load_opa_file(const std::string& path) {
  return Opa::from_json(nlohmann::json::parse(read_file(path)));
}

int cmd_check(const std::string& grammar_path) {
  Copg g = load_grammar_file(grammar_path);
  auto vs = validate(g);
  if (!vs.empty()) {
    std::cout << "invalid grammar:\n" << format_violations(g, vs);
    return kExitParseFailure;
  }
  std::cout << "grammar: " << g.rules.size() << " rules, " << g.nonterminals.size()
            << " nonterminals, " << g.terminals.size() << " terminals\n";
  OpmContributors contrib;
  Opm m = compute_opm(g, &contrib);
  std::cout << "precedence matrix:\n" << m.to_table();
  bool ok = true;
  if (!m.conflict_free()) {
    ok = false;
    std::cout << "conflicts:\n";
    for (const auto& c : m.conflicts()) {
      std::cout << "  (" << c.a << ", " << c.b << "):";
      for (auto r : c.rels) std::cout << ' ' << rel_glyph(r);
      auto it = contrib.find({c.a, c.b});
      if (it != contrib.end()) {
        std::cout << "  from rules";
        for (int ri : it->second)
          if (ri >= 0) std::cout << ' ' << ri;
      }
      std::cout << '\n';
    }
  } else {
    std::cout << "conflict-free: yes\n";
  }
  if (auto cyc = m.eq_cycle()) {
    std::cout << "equals-cycle:";
    for (const auto& s : *cyc) std::cout << ' ' << s;
    std::cout << '\n';
  } else {
    std::cout << "equals-acyclic: yes\n";
  }
  auto bd = is_bd(g);
  std::cout << "backward deterministic: " << (bd.bd ? "yes" : "no") << '\n';
  for (auto [i, j] : bd.collisions)
    std::cout << "  rules " << i << " (" << g.rules[i].lhs << ") and " << j << " ("
              << g.rules[j].lhs << ") share rhs strings\n";
  return ok ? kExitOk : kExitParseFailure;
}

int cmd_opm(const std::string& grammar_path, const std::string& format) {
  Copg g = load_grammar_file(grammar_path);
  auto vs = validate(g);
  if (!vs.empty()) {
    std::cerr << "invalid grammar:\n" << format_violations(g, vs);
    return kExitInputError;
  }
  Opm m = compute_opm(g);
  if (format == "json")
    std::cout << m.to_json().dump(2) << '\n';
  else
    std::cout << m.to_table();
  return m.conflict_free() ? kExitOk : kExitParseFailure;
}

int cmd_parse(const std::string& grammar_path, const std::string& opm_path, bool labeled,
              std::size_t parallel, const std::string& input, const std::string& format) {
  std::vector<std::string> word = tokenize_word(input);
  TreePtr tree;
  if (!grammar_path.empty()) {
    Copg g = load_grammar_file(grammar_path);
    if (labeled) {
      tree = parse_labeled(g, word);
    } else {
      Opm m = compute_opm(g);
      tree = parallel > 1 ? parallel_parse(m, word, parallel).tree : parse_opm(m, word);
    }
  } else {
    Opm m = load_opm_file(opm_path);
    if (labeled) throw CLI::ValidationError("--labeled requires --grammar");
    tree = parallel > 1 ? parallel_parse(m, word, parallel).tree : parse_opm(m, word);
  }
  if (format == "text")
    std::cout << to_sexpr(tree) << '\n';
  else
    std::cout << tree_to_json(tree).dump(2) << '\n';
  return kExitOk;
}

int cmd_to_opa(const std::string& grammar_path) {
  Copg g = load_grammar_file(grammar_path);
  ConvReport rep;
  Opa a = grammar_to_opa(g, &rep);
  std::cerr << "states: " << rep.state_count << " (bound " << rep.state_bound << "), prefixes: "
            << rep.prefix_count << '\n';
  std::cout << a.to_json().dump(2) << '\n';
  return kExitOk;
}

int cmd_to_grammar(const std::string& opa_path) {
  Opa a = load_opa_file(opa_path);
  auto problems = a.check();
  if (!problems.empty()) {
    for (const auto& p : problems) std::cerr << p << '\n';
    return kExitInputError;
  }
  Copg g = opa_to_grammar(a);
  std::cout << write_grammar(g);
  return kExitOk;
}

int cmd_run(const std::string& opa_path, bool trace, const std::string& input) {
  Opa a = load_opa_file(opa_path);
  auto problems = a.check();
  if (!problems.empty()) {
    for (const auto& p : problems) std::cerr << p << '\n';
    return kExitInputError;
  }
  std::vector<std::string> word = tokenize_word(input);
  auto res = accepts(a, word);
  if (res.accepted) {
    std::cout << "accept\n";
    if (trace) std::cout << format_trace(a, res.trace);
    return kExitOk;
  }
  std::cout << "reject\n";
  return kExitParseFailure;
}

int cmd_enumerate(const std::string& grammar_path, std::size_t maxlen) {
  Copg g = load_grammar_file(grammar_path);
  auto vs = validate(g);
  if (!vs.empty()) {
    std::cerr << "invalid grammar:\n" << format_violations(g, vs);
    return kExitInputError;
  }
  for (const auto& w : enumerate_language(g, maxlen))
    std::cout << (w.empty() ? "ε" : join(w, " ")) << '\n';
  return kExitOk;
}

int cmd_bench(const std::string& opm_path, std::size_t workers, const std::string& input_path) {
  Opm m = load_opm_file(opm_path);
  std::string text = read_file(input_path);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  std::vector<std::string> word = tokenize_word(text);
  auto res = parallel_parse(m, word, workers);
  std::cout << res.stats.to_csv();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cyclic operator-precedence grammars, automata and parallel parsing"};
  app.require_subcommand(1);

  std::string grammar_path, opm_path, opa_path, input, input_path;
  std::string format = "json";
  bool labeled = false, trace = false;
  std::size_t parallel = 1, maxlen = 6, workers = 2;

  auto* check = app.add_subcommand("check", "validate a grammar and report its matrix");
  check->add_option("grammar", grammar_path)->required();

  auto* opm = app.add_subcommand("opm", "print or export a grammar's precedence matrix");
  opm->add_option("grammar", grammar_path)->required();
  opm->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto* parse = app.add_subcommand("parse", "parse a word into a syntax tree");
  parse->add_option("--grammar", grammar_path);
  parse->add_option("--opm", opm_path);
  parse->add_flag("--labeled", labeled);
  parse->add_option("--parallel", parallel);
  parse->add_option("input", input)->required();
  parse->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto* to_opa = app.add_subcommand("to-opa", "build the equivalent automaton");
  to_opa->add_option("grammar", grammar_path)->required();

  auto* to_grammar = app.add_subcommand("to-grammar", "build the equivalent cyclic grammar");
  to_grammar->add_option("opa", opa_path)->required();

  auto* run = app.add_subcommand("run", "run an automaton on a word");
  run->add_option("--opa", opa_path)->required();
  run->add_flag("--trace", trace);
  run->add_option("input", input)->required();

  auto* enumerate = app.add_subcommand("enumerate", "list all sentences up to a length");
  enumerate->add_option("--grammar", grammar_path)->required();
  enumerate->add_option("--max-len", maxlen)->required();

  auto* bench = app.add_subcommand("bench", "parallel parsing work statistics");
  bench->add_option("--opm", opm_path)->required();
  bench->add_option("--parallel", workers)->required();
  bench->add_option("--input", input_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(grammar_path);
    if (opm->parsed()) return cmd_opm(grammar_path, format);
    if (parse->parsed()) {
      if (grammar_path.empty() == opm_path.empty()) {
        std::cerr << "parse needs exactly one of --grammar or --opm\n";
        return kExitInputError;
      }
      return cmd_parse(grammar_path, opm_path, labeled, parallel, input, format);
    }
    if (to_opa->parsed()) return cmd_to_opa(grammar_path);
    if (to_grammar->parsed()) return cmd_to_grammar(opa_path);
    if (run->parsed()) return cmd_run(opa_path, trace, input);
    if (enumerate->parsed()) return cmd_enumerate(grammar_path, maxlen);
    if (bench->parsed()) return cmd_bench(opm_path, workers, input_path);
  } catch (const ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitParseFailure;
  } catch (const GrammarFormatError& e) {
    std::cerr << e.what() << '\n';
    return kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
