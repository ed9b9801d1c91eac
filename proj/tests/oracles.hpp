#pragma once

// Test-only oracles kept independent of the implementation paths they check.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "copg/opm.hpp"
#include "copg/syntax_tree.hpp"

namespace oracle {

// Bottom-up rescan reduction: repeatedly recompute all relations over the
// current sequence (ignoring completed subtrees), reduce every innermost
// yield…take span, until the #N# pattern or failure. Quadratic, used only to
// cross-check the single-pass parser on small inputs.
inline std::optional<copg::TreePtr> rescan_parse(const copg::Opm& m,
                                                 const std::vector<std::string>& word) {
  using copg::PrecRel;
  using copg::TreePtr;
  struct Item {
    bool is_tree;
    std::string term;
    TreePtr tree;
  };
  if (word.empty()) return copg::SyntaxTree::make_node({});
  std::vector<Item> items;
  for (const auto& t : word) items.push_back({false, t, nullptr});

  auto term_positions = [&]() {
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (!items[i].is_tree) pos.push_back(i);
    return pos;
  };

  for (;;) {
    auto pos = term_positions();
    if (pos.empty()) break;
    // relations of # t1 t2 ... tk #
    std::vector<std::optional<PrecRel>> rel(pos.size() + 1);
    for (std::size_t i = 0; i <= pos.size(); ++i) {
      std::string a = i == 0 ? copg::kDelim : items[pos[i - 1]].term;
      std::string b = i == pos.size() ? copg::kDelim : items[pos[i]].term;
      if (a == copg::kDelim && b == copg::kDelim) return std::nullopt;  // lone trees left
      try {
        rel[i] = m.lookup(a, b);
      } catch (...) {
        return std::nullopt;
      }
      if (!rel[i]) return std::nullopt;
    }
    // collect innermost spans: yield at i, equals inside, take at j
    struct Span {
      std::size_t from, to;  // item indices [from, to]
    };
    std::vector<Span> spans;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (rel[i] != PrecRel::Yields) continue;
      std::size_t j = i;
      while (j + 1 <= pos.size() && rel[j + 1] == PrecRel::Equals) ++j;
      if (j + 1 > pos.size() || rel[j + 1] != PrecRel::Takes) continue;
      // span of terminals pos[i..j], extended by adjacent trees on both sides
      std::size_t from = pos[i];
      if (from > 0 && items[from - 1].is_tree) --from;
      std::size_t to = pos[j];
      if (to + 1 < items.size() && items[to + 1].is_tree) ++to;
      spans.push_back({from, to});
    }
    if (spans.empty()) return std::nullopt;
    // reduce right-to-left so indices stay valid
    for (auto it = spans.rbegin(); it != spans.rend(); ++it) {
      std::vector<copg::TreePtr> kids;
      for (std::size_t k = it->from; k <= it->to; ++k)
        kids.push_back(items[k].is_tree ? items[k].tree
                                        : copg::SyntaxTree::make_leaf(items[k].term));
      Item node{true, "", copg::SyntaxTree::make_node(kids)};
      items.erase(items.begin() + it->from, items.begin() + it->to + 1);
      items.insert(items.begin() + it->from, node);
    }
  }
  if (items.size() != 1 || !items[0].is_tree) return std::nullopt;
  return items[0].tree;
}

// Random words compatible with a matrix, built top-down along the chain
// structure. Returns nullopt when the budget cannot be met.
class CompatibleGen {
 public:
  CompatibleGen(const copg::Opm& m, std::uint64_t seed) : m_(m), rng_(seed) {}

  std::optional<std::vector<std::string>> word(std::size_t max_len) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      auto w = chain_body(copg::kDelim, copg::kDelim, max_len, 8);
      if (w && !w->empty()) return w;
    }
    return std::nullopt;
  }

 private:
  using Str = std::vector<std::string>;

  std::optional<Str> chain_body(const std::string& left, const std::string& right,
                                std::size_t budget, int depth) {
    using copg::PrecRel;
    if (budget == 0 || depth == 0) return std::nullopt;
    // pick a spine: left ⋖ a1 ⩵ a2 ... an ⋗ right
    for (int attempt = 0; attempt < 16; ++attempt) {
      std::vector<std::string> starts;
      for (const auto& a : m_.alphabet())
        if (rel(left, a) == PrecRel::Yields) starts.push_back(a);
      if (starts.empty()) return std::nullopt;
      std::vector<std::string> spine{pick(starts)};
      while (spine.size() < budget) {
        if (rel(spine.back(), right) == PrecRel::Takes && coin(0.6)) break;
        std::vector<std::string> nexts;
        for (const auto& a : m_.alphabet())
          if (rel(spine.back(), a) == PrecRel::Equals) nexts.push_back(a);
        if (nexts.empty()) break;
        spine.push_back(pick(nexts));
      }
      if (rel(spine.back(), right) != PrecRel::Takes) continue;
      if (spine.size() > budget) continue;
      // optionally fill gaps
      Str out;
      std::size_t rest = budget - spine.size();
      bool ok = true;
      for (std::size_t i = 0; i <= spine.size() && ok; ++i) {
        const std::string& l = i == 0 ? left : spine[i - 1];
        const std::string& r = i == spine.size() ? right : spine[i];
        if (rest > 0 && coin(0.4)) {
          std::size_t sub = 1 + rng_() % rest;
          if (auto g = chain_body(l, r, sub, depth - 1)) {
            rest -= g->size();
            out.insert(out.end(), g->begin(), g->end());
          }
        }
        if (i < spine.size()) out.push_back(spine[i]);
      }
      if (ok) return out;
    }
    return std::nullopt;
  }

  std::optional<copg::PrecRel> rel(const std::string& a, const std::string& b) {
    if (a == copg::kDelim && b == copg::kDelim) return copg::PrecRel::Equals;
    return m_.lookup(a, b);
  }
  const std::string& pick(const std::vector<std::string>& v) { return v[rng_() % v.size()]; }
  bool coin(double p) { return std::uniform_real_distribution<>(0, 1)(rng_) < p; }

  const copg::Opm& m_;
  std::mt19937_64 rng_;
};

}  // namespace oracle
