#include "copg/parser.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "copg/parallel.hpp"
#include "copg/text_util.hpp"
#include "reduce_core.hpp"

namespace copg {

static std::string no_rel_msg(const std::string& a, const std::string& b, std::size_t pos) {
  std::ostringstream out;
  out << "no precedence relation between " << a << " and " << b << " at position " << pos;
  return out.str();
}

NoRelationError::NoRelationError(std::string a_, std::string b_, std::size_t pos)
    : ParseError(no_rel_msg(a_, b_, pos)), a(std::move(a_)), b(std::move(b_)), position(pos) {}

IncompleteParseError::IncompleteParseError()
    : ParseError("input exhausted without reaching the #N# pattern") {}

NoRuleError::NoRuleError(std::string handle_, std::size_t pos)
    : ParseError("no rule matches handle " + handle_ + " at position " + std::to_string(pos)),
      handle(std::move(handle_)),
      position(pos) {}

RootNotAxiomError::RootNotAxiomError(std::string label_)
    : ParseError("parse succeeds only with non-axiom root " + label_), label(std::move(label_)) {}

static void require_known(const Opm& m, const std::vector<std::string>& word) {
  for (std::size_t i = 0; i < word.size(); ++i)
    if (word[i] == kDelim || !m.has_symbol(word[i]))
      throw NoRelationError(word[i], word[i], i + 1);
}

Annotation annotate(const Opm& m, const std::vector<std::string>& word) {
  if (!m.conflict_free())
    throw std::logic_error("annotate requires a conflict-free matrix");
  require_known(m, word);
  Annotation a;
  a.symbols.push_back(kDelim);
  for (const auto& t : word) a.symbols.push_back(t);
  a.symbols.push_back(kDelim);
  if (word.empty()) {
    // delimiter convention: # equals #
    a.rels.push_back(PrecRel::Equals);
    return a;
  }
  for (std::size_t i = 0; i + 1 < a.symbols.size(); ++i) {
    auto r = m.lookup(a.symbols[i], a.symbols[i + 1]);
    if (!r) throw NoRelationError(a.symbols[i], a.symbols[i + 1], i + 1);
    a.rels.push_back(*r);
  }
  return a;
}

std::string Annotation::format() const {
  std::string out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) {
      out += ' ';
      out += rel_glyph(rels[i - 1]);
      out += ' ';
    }
    out += symbols[i];
  }
  return out;
}

TreePtr parse_opm(const Opm& m, const std::vector<std::string>& word) {
  if (!m.conflict_free())
    throw std::logic_error("parsing requires a conflict-free matrix");
  if (word.empty()) return SyntaxTree::make_node({});
  require_known(m, word);
  std::vector<PItem> items;
  items.reserve(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    PItem it;
    it.term = word[i];
    it.src_pos = i + 1;
    items.push_back(std::move(it));
  }
  auto res = detail::reduce_pass(m, items, true, word.size() + 1);
  if (res.items.size() == 1 && res.items[0].is_tree) return res.items[0].tree;
  throw IncompleteParseError();
}

bool is_compatible(const Opm& m, const std::vector<std::string>& word) {
  try {
    parse_opm(m, word);
    return true;
  } catch (const ParseError&) {
    return false;
  }
}

// --- labeled parsing ---------------------------------------------------------

namespace {

struct Labeler {
  const Copg& g;
  std::vector<RhsRecognizer> recs;
  std::map<std::string, std::vector<int>> rules_of;
  std::map<std::pair<const SyntaxTree*, std::string>, std::optional<TreePtr>> memo;

  explicit Labeler(const Copg& grammar) : g(grammar) {
    recs.reserve(g.rules.size());
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
      recs.emplace_back(g.rules[i].rhs);
      rules_of[g.rules[i].lhs].push_back(static_cast<int>(i));
    }
  }

  std::optional<TreePtr> label(const TreePtr& node, const std::string& want) {
    auto key = std::make_pair(node.get(), want);
    auto hit = memo.find(key);
    if (hit != memo.end()) return hit->second;
    std::optional<TreePtr> result;
    auto it = rules_of.find(want);
    if (it != rules_of.end()) {
      for (int ri : it->second) {
        if (g.rules[ri].rhs.empty()) continue;  // the ε-rule labels nothing but the empty tree
        if (auto t = match_rule(node, ri)) {
          result = t;
          break;
        }
      }
    }
    memo[key] = result;
    return result;
  }

  std::optional<TreePtr> match_rule(const TreePtr& node, int ri) {
    const auto& rec = recs[ri];
    std::vector<TreePtr> labeled(node->children.size());
    std::function<bool(std::size_t, std::vector<int>)> go = [&](std::size_t i,
                                                                std::vector<int> states) -> bool {
      if (i == node->children.size()) return rec.any_accepting(states);
      const TreePtr& child = node->children[i];
      if (child->leaf) {
        auto ns = rec.advance(states, term(child->terminal));
        if (ns.empty()) return false;
        labeled[i] = child;
        return go(i + 1, std::move(ns));
      }
      // candidate labels in nonterminal declaration order
      for (const auto& nt : g.nonterminals) {
        auto ns = rec.advance(states, nonterm(nt));
        if (ns.empty()) continue;
        auto sub = label(child, nt);
        if (!sub) continue;
        labeled[i] = *sub;
        if (go(i + 1, std::move(ns))) return true;
      }
      return false;
    };
    if (go(0, rec.start()))
      return SyntaxTree::make_node(std::move(labeled), g.rules[ri].lhs);
    return std::nullopt;
  }
};

std::string handle_string(const TreePtr& node) {
  std::vector<std::string> parts;
  for (const auto& c : node->children) parts.push_back(c->leaf ? c->terminal : "N");
  return join(parts, " ");
}

}  // namespace

TreePtr parse_labeled(const Copg& g, const std::vector<std::string>& word) {
  auto vs = validate(g);
  if (!vs.empty())
    throw std::invalid_argument("invalid grammar:\n" + format_violations(g, vs));
  Opm m = compute_opm(g);
  if (!m.conflict_free())
    throw std::invalid_argument("grammar has precedence conflicts");

  if (word.empty()) {
    if (auto er = g.epsilon_rule())
      return SyntaxTree::make_node({}, g.rules[*er].lhs);
    throw NoRuleError("ε", 0);
  }

  TreePtr anon = parse_opm(m, word);
  Labeler lab(g);
  for (const auto& ax : g.axioms)
    if (auto t = lab.label(anon, ax)) return *t;
  for (const auto& nt : g.nonterminals) {
    bool is_axiom =
        std::find(g.axioms.begin(), g.axioms.end(), nt) != g.axioms.end();
    if (!is_axiom && lab.label(anon, nt)) throw RootNotAxiomError(nt);
  }
  throw NoRuleError(handle_string(anon), 1);
}

}  // namespace copg
