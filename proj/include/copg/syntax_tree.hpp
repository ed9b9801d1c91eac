#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace copg {

struct SyntaxTree;
using TreePtr = std::shared_ptr<const SyntaxTree>;

// Unranked ordered tree. Leaves carry terminals; internal nodes have an
// optional nonterminal label (absent for anonymized trees) and arbitrarily
// many children. The empty tree (node without children) only represents the
// parse of the empty word.
struct SyntaxTree {
  bool leaf = false;
  std::string terminal;                // leaf
  std::optional<std::string> label;    // node
  std::vector<TreePtr> children;       // node

  static TreePtr make_leaf(std::string t);
  static TreePtr make_node(std::vector<TreePtr> children,
                           std::optional<std::string> label = std::nullopt);
};

bool tree_equal(const TreePtr& a, const TreePtr& b);
// Equality of shapes ignoring node labels.
bool tree_equal_anonymized(const TreePtr& a, const TreePtr& b);

std::vector<std::string> frontier(const TreePtr& t);
TreePtr erase_labels(const TreePtr& t);

// S-expression form: leaves print their terminal, nodes print
// (label child ...) with N for anonymized labels.
std::string to_sexpr(const TreePtr& t);

nlohmann::json tree_to_json(const TreePtr& t);
TreePtr tree_from_json(const nlohmann::json& j);

}  // namespace copg
