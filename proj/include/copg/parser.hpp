#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "copg/grammar.hpp"
#include "copg/opm.hpp"
#include "copg/syntax_tree.hpp"

namespace copg {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Empty precedence cell hit while parsing. Positions are 1-based over the
// delimited word #w# (the leading delimiter is position 0).
struct NoRelationError : ParseError {
  std::string a, b;
  std::size_t position;
  NoRelationError(std::string a_, std::string b_, std::size_t pos);
};

struct IncompleteParseError : ParseError {
  IncompleteParseError();
};

struct NoRuleError : ParseError {
  std::string handle;
  std::size_t position;
  NoRuleError(std::string handle_, std::size_t pos);
};

struct RootNotAxiomError : ParseError {
  std::string label;
  explicit RootNotAxiomError(std::string label_);
};

// Relations between the consecutive terminals of #w#.
struct Annotation {
  std::vector<std::string> symbols;  // #, w..., #
  std::vector<PrecRel> rels;         // rels[i] holds between symbols[i] and symbols[i+1]
  std::string format() const;        // "# ⋖ n ⋗ + ... #"
};

Annotation annotate(const Opm& m, const std::vector<std::string>& word);

// The unique anonymized syntax tree the matrix assigns to w: a single
// left-to-right pass reducing every innermost yield...take span to one node.
// The empty word gets the distinguished empty tree.
TreePtr parse_opm(const Opm& m, const std::vector<std::string>& word);

// Membership in the maxlanguage of m; the empty word is compatible by
// convention.
bool is_compatible(const Opm& m, const std::vector<std::string>& word);

// Structure of parse_opm plus node labels chosen by rule-language membership.
// Deterministic for backward-deterministic grammars; otherwise a depth-first
// backtracking search in rule-declaration order (worst case exponential).
TreePtr parse_labeled(const Copg& g, const std::vector<std::string>& word);

}  // namespace copg
