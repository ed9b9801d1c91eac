#include "copg/chain.hpp"

#include <stdexcept>

#include "copg/parser.hpp"

namespace copg {

bool Chain::simple() const {
  for (const auto& g : gaps)
    if (g) return false;
  return true;
}

std::vector<std::string> Chain::body() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (gaps[i]) {
      auto sub = gaps[i]->body();
      out.insert(out.end(), sub.begin(), sub.end());
    }
    if (i < spine.size()) out.push_back(spine[i]);
  }
  return out;
}

bool chain_equal(const Chain& a, const Chain& b) {
  if (a.left != b.left || a.right != b.right || a.spine != b.spine) return false;
  if (a.gaps.size() != b.gaps.size()) return false;
  for (std::size_t i = 0; i < a.gaps.size(); ++i) {
    if (static_cast<bool>(a.gaps[i]) != static_cast<bool>(b.gaps[i])) return false;
    if (a.gaps[i] && !chain_equal(*a.gaps[i], *b.gaps[i])) return false;
  }
  return true;
}

static Chain chain_of_tree(const TreePtr& node, const std::string& left,
                           const std::string& right) {
  Chain c;
  c.left = left;
  c.right = right;
  std::string cur_left = left;
  TreePtr pending;
  for (const auto& child : node->children) {
    if (!child->leaf) {
      if (pending) throw std::logic_error("two adjacent subtrees in a parse node");
      pending = child;
      continue;
    }
    if (pending) {
      c.gaps.push_back(
          std::make_shared<Chain>(chain_of_tree(pending, cur_left, child->terminal)));
      pending.reset();
    } else {
      c.gaps.push_back(nullptr);
    }
    c.spine.push_back(child->terminal);
    cur_left = child->terminal;
  }
  if (pending)
    c.gaps.push_back(std::make_shared<Chain>(chain_of_tree(pending, cur_left, right)));
  else
    c.gaps.push_back(nullptr);
  return c;
}

Chain chain_decompose(const Opm& m, const std::vector<std::string>& word) {
  if (word.empty())
    throw std::invalid_argument("the empty word has no chain");
  TreePtr t = parse_opm(m, word);
  return chain_of_tree(t, kDelim, kDelim);
}

std::size_t chain_depth(const Chain& c) {
  std::size_t deepest = 0;
  for (const auto& g : c.gaps)
    if (g) deepest = std::max(deepest, chain_depth(*g));
  return 1 + deepest;
}

TreePtr chain_to_tree(const Chain& c) {
  std::vector<TreePtr> children;
  for (std::size_t i = 0; i < c.gaps.size(); ++i) {
    if (c.gaps[i]) children.push_back(chain_to_tree(*c.gaps[i]));
    if (i < c.spine.size()) children.push_back(SyntaxTree::make_leaf(c.spine[i]));
  }
  return SyntaxTree::make_node(std::move(children));
}

bool chain_valid(const Opm& m, const Chain& c) {
  if (c.spine.empty() || c.gaps.size() != c.spine.size() + 1) return false;
  auto rel = [&](const std::string& a, const std::string& b) -> std::optional<PrecRel> {
    if (a == kDelim && b == kDelim) return PrecRel::Equals;  // delimiter convention
    return m.lookup(a, b);
  };
  if (rel(c.left, c.right) == std::nullopt) return false;
  if (rel(c.left, c.spine.front()) != PrecRel::Yields) return false;
  for (std::size_t i = 0; i + 1 < c.spine.size(); ++i)
    if (rel(c.spine[i], c.spine[i + 1]) != PrecRel::Equals) return false;
  if (rel(c.spine.back(), c.right) != PrecRel::Takes) return false;
  for (std::size_t i = 0; i < c.gaps.size(); ++i) {
    if (!c.gaps[i]) continue;
    const std::string& l = i == 0 ? c.left : c.spine[i - 1];
    const std::string& r = i == c.spine.size() ? c.right : c.spine[i];
    if (c.gaps[i]->left != l || c.gaps[i]->right != r) return false;
    if (!chain_valid(m, *c.gaps[i])) return false;
  }
  return true;
}

}  // namespace copg
