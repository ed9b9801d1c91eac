#include "copg/syntax_tree.hpp"

namespace copg {

TreePtr SyntaxTree::make_leaf(std::string t) {
  auto n = std::make_shared<SyntaxTree>();
  n->leaf = true;
  n->terminal = std::move(t);
  return n;
}

TreePtr SyntaxTree::make_node(std::vector<TreePtr> children, std::optional<std::string> label) {
  auto n = std::make_shared<SyntaxTree>();
  n->leaf = false;
  n->label = std::move(label);
  n->children = std::move(children);
  return n;
}

static bool equal_impl(const TreePtr& a, const TreePtr& b, bool with_labels) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->leaf != b->leaf) return false;
  if (a->leaf) return a->terminal == b->terminal;
  if (with_labels && a->label != b->label) return false;
  if (a->children.size() != b->children.size()) return false;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (!equal_impl(a->children[i], b->children[i], with_labels)) return false;
  return true;
}

bool tree_equal(const TreePtr& a, const TreePtr& b) { return equal_impl(a, b, true); }
bool tree_equal_anonymized(const TreePtr& a, const TreePtr& b) { return equal_impl(a, b, false); }

static void frontier_into(const TreePtr& t, std::vector<std::string>& out) {
  if (!t) return;
  if (t->leaf) {
    out.push_back(t->terminal);
    return;
  }
  for (const auto& c : t->children) frontier_into(c, out);
}

std::vector<std::string> frontier(const TreePtr& t) {
  std::vector<std::string> out;
  frontier_into(t, out);
  return out;
}

TreePtr erase_labels(const TreePtr& t) {
  if (!t) return t;
  if (t->leaf) return t;
  std::vector<TreePtr> kids;
  kids.reserve(t->children.size());
  for (const auto& c : t->children) kids.push_back(erase_labels(c));
  return SyntaxTree::make_node(std::move(kids));
}

std::string to_sexpr(const TreePtr& t) {
  if (!t) return "()";
  if (t->leaf) return t->terminal;
  std::string out = "(";
  out += t->label ? *t->label : "N";
  for (const auto& c : t->children) {
    out += ' ';
    out += to_sexpr(c);
  }
  out += ')';
  return out;
}

nlohmann::json tree_to_json(const TreePtr& t) {
  if (!t) return nullptr;
  if (t->leaf) return nlohmann::json{{"t", t->terminal}};
  nlohmann::json kids = nlohmann::json::array();
  for (const auto& c : t->children) kids.push_back(tree_to_json(c));
  nlohmann::json j;
  j["nt"] = t->label ? nlohmann::json(*t->label) : nlohmann::json(nullptr);
  j["children"] = std::move(kids);
  return j;
}

TreePtr tree_from_json(const nlohmann::json& j) {
  if (j.contains("t")) return SyntaxTree::make_leaf(j.at("t").get<std::string>());
  std::vector<TreePtr> kids;
  for (const auto& c : j.at("children")) kids.push_back(tree_from_json(c));
  std::optional<std::string> label;
  if (!j.at("nt").is_null()) label = j.at("nt").get<std::string>();
  return SyntaxTree::make_node(std::move(kids), std::move(label));
}

}  // namespace copg
