#pragma once

// Shared fixtures: bundled grammars, hand-encoded reference matrices, helpers.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "copg/grammar.hpp"
#include "copg/grammar_io.hpp"
#include "copg/opa.hpp"
#include "copg/opm.hpp"
#include "copg/text_util.hpp"
#include "json.hpp"

namespace fx {

inline std::string data_path(const std::string& name) {
  return std::string(COPG_DATA_DIR) + "/" + name;
}

inline std::string golden_path(const std::string& name) {
  return std::string(COPG_GOLDEN_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline copg::Copg arith() { return copg::load_grammar_file(data_path("arith.copg")); }
inline copg::Copg arith_cyclic() {
  return copg::load_grammar_file(data_path("arith_cyclic.copg"));
}
inline copg::Copg sum_paren() { return copg::load_grammar_file(data_path("sum_paren.copg")); }

inline copg::Opm load_opm(const std::string& name) {
  return copg::Opm::from_json(nlohmann::json::parse(slurp(data_path(name))));
}

inline copg::Opa paren_expr_opa() {
  return copg::Opa::from_json(nlohmann::json::parse(slurp(data_path("paren_expr.opa.json"))));
}

// Hand-encoded reference matrix of the plus/times grammar.
inline copg::Opm arith_matrix() {
  using copg::PrecRel;
  copg::Opm m({"+", "×", "n"});
  m.add("+", "+", PrecRel::Takes);
  m.add("+", "×", PrecRel::Yields);
  m.add("+", "n", PrecRel::Yields);
  m.add("+", "#", PrecRel::Takes);
  m.add("×", "+", PrecRel::Takes);
  m.add("×", "×", PrecRel::Takes);
  m.add("×", "n", PrecRel::Yields);
  m.add("×", "#", PrecRel::Takes);
  m.add("n", "+", PrecRel::Takes);
  m.add("n", "×", PrecRel::Takes);
  m.add("n", "#", PrecRel::Takes);
  m.add("#", "+", PrecRel::Yields);
  m.add("#", "×", PrecRel::Yields);
  m.add("#", "n", PrecRel::Yields);
  return m;
}

// Hand-encoded reference matrix of the cyclic four-operator grammar.
inline copg::Opm arith_cyclic_matrix() {
  using copg::PrecRel;
  copg::Opm m({"+", "-", "×", "/", "⦇", "⦈", "n"});
  auto row = [&](const std::string& a, std::initializer_list<std::pair<const char*, char>> cells) {
    for (auto [b, r] : cells) m.add(a, b, *copg::rel_from_ascii(r));
  };
  row("+", {{"+", '='}, {"-", '<'}, {"×", '<'}, {"/", '<'}, {"⦇", '<'},
            {"⦈", '>'}, {"n", '<'}, {"#", '>'}});
  row("-", {{"+", '>'}, {"-", '>'}, {"×", '<'}, {"/", '<'}, {"⦇", '<'},
            {"⦈", '>'}, {"n", '<'}, {"#", '>'}});
  row("×", {{"+", '>'}, {"-", '>'}, {"×", '='}, {"/", '<'}, {"⦇", '<'},
            {"⦈", '>'}, {"n", '<'}, {"#", '>'}});
  row("/", {{"+", '>'}, {"-", '>'}, {"×", '>'}, {"/", '>'}, {"⦇", '<'},
            {"⦈", '>'}, {"n", '<'}, {"#", '>'}});
  row("⦇", {{"+", '<'}, {"-", '<'}, {"×", '<'}, {"/", '<'}, {"⦇", '<'},
            {"⦈", '='}, {"n", '<'}});
  row("⦈", {{"+", '>'}, {"-", '>'}, {"×", '>'}, {"/", '>'}, {"⦈", '>'}, {"#", '>'}});
  row("n", {{"+", '>'}, {"-", '>'}, {"×", '>'}, {"/", '>'}, {"⦈", '>'}, {"#", '>'}});
  row("#", {{"+", '<'}, {"-", '<'}, {"×", '<'}, {"/", '<'}, {"⦇", '<'}, {"n", '<'}});
  return m;
}

inline std::vector<std::string> tok(const std::string& s) { return copg::tokenize_word(s); }

}  // namespace fx
