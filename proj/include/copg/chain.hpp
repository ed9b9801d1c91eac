#pragma once

#include <memory>
#include <string>
#include <vector>

#include "copg/opm.hpp"
#include "copg/syntax_tree.hpp"

namespace copg {

// String-level form of an anonymized syntax tree: a context pair, the spine of
// equal-linked terminals, and one optional nested chain per gap
// (gaps.size() == spine.size() + 1, null meaning the empty gap).
struct Chain {
  std::string left, right;
  std::vector<std::string> spine;
  std::vector<std::shared_ptr<const Chain>> gaps;

  bool simple() const;
  std::vector<std::string> body() const;  // frontier of the chain
};

bool chain_equal(const Chain& a, const Chain& b);

// The chain matching parse_opm's tree for w; requires a nonempty compatible
// word. Context of the outermost chain is (#, #).
Chain chain_decompose(const Opm& m, const std::vector<std::string>& word);

// depth = 1 for simple chains, 1 + max over nested gap depths otherwise.
std::size_t chain_depth(const Chain& c);

// Inverse direction: rebuilds the anonymized tree.
TreePtr chain_to_tree(const Chain& c);

// Structural validity of a chain against a matrix: context relations, the
// equal-linked spine and every nested gap's context.
bool chain_valid(const Opm& m, const Chain& c);

}  // namespace copg
