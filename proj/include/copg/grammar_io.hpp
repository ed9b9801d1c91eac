#pragma once

#include <stdexcept>
#include <string>

#include "copg/grammar.hpp"

namespace copg {

struct GrammarFormatError : std::runtime_error {
  int line;
  GrammarFormatError(int line_, const std::string& msg);
};

// Text format, one statement per ';', line comments with //:
//
//   axioms E ;
//   E -> E + T | T × F | n ;
//   { A B } -> ⦇ { A B } ⦈ | n ;
//
// Tokens are whitespace-separated. Uppercase-initial tokens are nonterminals,
// everything else (or any single-quoted token) is a terminal. Groups are
// written ( items )+ . A braced set expands to one rule (or one alternative)
// per member, cross-producted when it occurs on both sides. The single token ε
// denotes the empty rhs of the designated ε-rule.
Copg load_grammar(const std::string& text);
Copg load_grammar_file(const std::string& path);

std::string write_grammar(const Copg& g);

}  // namespace copg
