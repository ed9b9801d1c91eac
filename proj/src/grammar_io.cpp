#include "copg/grammar_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace copg {

GrammarFormatError::GrammarFormatError(int line_, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}

namespace {

struct Token {
  std::string text;
  int line;
  bool quoted = false;
};

std::vector<Token> scan(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '\'') {
      std::size_t j = text.find('\'', i + 1);
      if (j == std::string::npos) throw GrammarFormatError(line, "unterminated quote");
      std::string t = text.substr(i + 1, j - i - 1);
      if (t.empty()) throw GrammarFormatError(line, "empty quoted terminal");
      out.push_back({t, line, true});
      i = j + 1;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    out.push_back({text.substr(i, j - i), line, false});
    i = j;
  }
  return out;
}

bool is_nonterminal_token(const Token& t) {
  if (t.quoted) return false;
  return !t.text.empty() && std::isupper(static_cast<unsigned char>(t.text[0]));
}

// Parsed alternative item before set expansion.
struct PItemNode {
  enum class Kind { Term, NonTerm, Group, Set } kind;
  std::string name;
  std::vector<PItemNode> items;     // Group
  std::vector<std::string> members; // Set (nonterminals)
};

struct Parser {
  const std::vector<Token>& toks;
  std::size_t pos = 0;

  const Token& peek() const {
    if (pos >= toks.size()) throw GrammarFormatError(toks.empty() ? 1 : toks.back().line,
                                                     "unexpected end of input");
    return toks[pos];
  }
  Token next() {
    Token t = peek();
    ++pos;
    return t;
  }
  bool at(const std::string& s) const {
    return pos < toks.size() && !toks[pos].quoted && toks[pos].text == s;
  }

  std::vector<std::string> parse_set() {
    int line = next().line;  // consume {
    std::vector<std::string> members;
    while (!at("}")) {
      Token t = next();
      if (!is_nonterminal_token(t))
        throw GrammarFormatError(t.line, "set members must be nonterminals: " + t.text);
      members.push_back(t.text);
    }
    next();  // }
    if (members.empty()) throw GrammarFormatError(line, "empty set");
    return members;
  }

  std::vector<PItemNode> parse_items(bool in_group) {
    std::vector<PItemNode> out;
    for (;;) {
      if (pos >= toks.size()) {
        if (in_group) throw GrammarFormatError(toks.back().line, "unterminated group");
        return out;
      }
      if (at(";") || at("|")) {
        if (in_group) throw GrammarFormatError(peek().line, "unterminated group");
        return out;
      }
      if (at(")+")) {
        if (!in_group) throw GrammarFormatError(peek().line, "stray )+");
        return out;
      }
      if (at("(")) {
        int line = next().line;
        PItemNode g{PItemNode::Kind::Group, "", parse_items(true), {}};
        next();  // )+
        if (g.items.empty()) throw GrammarFormatError(line, "empty group");
        out.push_back(std::move(g));
        continue;
      }
      if (at("{")) {
        PItemNode s{PItemNode::Kind::Set, "", {}, parse_set()};
        out.push_back(std::move(s));
        continue;
      }
      Token t = next();
      if (!t.quoted && (t.text == ")" || t.text == "}"))
        throw GrammarFormatError(t.line, "unexpected " + t.text);
      if (is_nonterminal_token(t))
        out.push_back({PItemNode::Kind::NonTerm, t.text, {}, {}});
      else
        out.push_back({PItemNode::Kind::Term, t.text, {}, {}});
    }
  }
};

// Expands every Set node by cross product.
void expand_sets(const std::vector<PItemNode>& items, std::size_t i, Rhs cur,
                 std::vector<Rhs>& out) {
  if (i == items.size()) {
    out.push_back(std::move(cur));
    return;
  }
  const PItemNode& it = items[i];
  switch (it.kind) {
    case PItemNode::Kind::Term:
      cur.push_back(rterm(it.name));
      expand_sets(items, i + 1, std::move(cur), out);
      break;
    case PItemNode::Kind::NonTerm:
      cur.push_back(rnonterm(it.name));
      expand_sets(items, i + 1, std::move(cur), out);
      break;
    case PItemNode::Kind::Group: {
      std::vector<Rhs> inner;
      expand_sets(it.items, 0, {}, inner);
      for (const auto& body : inner) {
        Rhs c = cur;
        c.push_back(rgroup(body));
        expand_sets(items, i + 1, std::move(c), out);
      }
      break;
    }
    case PItemNode::Kind::Set:
      for (const auto& m : it.members) {
        Rhs c = cur;
        c.push_back(rnonterm(m));
        expand_sets(items, i + 1, std::move(c), out);
      }
      break;
  }
}

void collect_symbols(const Rhs& rhs, Copg& g) {
  for (const auto& it : rhs) {
    switch (it.kind) {
      case RhsItem::Kind::Term:
        if (!g.is_terminal(it.name)) g.terminals.push_back(it.name);
        break;
      case RhsItem::Kind::NonTerm:
        if (!g.is_nonterminal(it.name)) g.nonterminals.push_back(it.name);
        break;
      case RhsItem::Kind::Group:
        collect_symbols(it.items, g);
        break;
    }
  }
}

}  // namespace

Copg load_grammar(const std::string& text) {
  auto toks = scan(text);
  Copg g;
  Parser p{toks};
  while (p.pos < toks.size()) {
    Token head = p.next();
    if (!head.quoted && head.text == "axioms") {
      while (!p.at(";")) {
        Token t = p.next();
        if (!is_nonterminal_token(t))
          throw GrammarFormatError(t.line, "axioms must be nonterminals: " + t.text);
        g.axioms.push_back(t.text);
        if (!g.is_nonterminal(t.text)) g.nonterminals.push_back(t.text);
      }
      p.next();  // ;
      continue;
    }
    // rule statement: LHS (or set) -> alternatives ;
    std::vector<std::string> lhss;
    if (!head.quoted && head.text == "{") {
      --p.pos;
      lhss = p.parse_set();
    } else if (is_nonterminal_token(head)) {
      lhss.push_back(head.text);
    } else {
      throw GrammarFormatError(head.line, "expected a nonterminal lhs, got " + head.text);
    }
    Token arrow = p.next();
    if (arrow.quoted || arrow.text != "->")
      throw GrammarFormatError(arrow.line, "expected -> after the lhs");
    for (const auto& lhs : lhss)
      if (!g.is_nonterminal(lhs)) g.nonterminals.push_back(lhs);

    for (;;) {
      // one alternative
      int alt_line = p.peek().line;
      std::vector<PItemNode> items = p.parse_items(false);
      bool is_eps = items.size() == 1 && items[0].kind == PItemNode::Kind::Term &&
                    items[0].name == "ε";
      std::vector<Rhs> bodies;
      if (is_eps)
        bodies.push_back({});
      else
        expand_sets(items, 0, {}, bodies);
      if (items.empty()) throw GrammarFormatError(alt_line, "empty alternative");
      for (const auto& lhs : lhss)
        for (const auto& body : bodies) {
          collect_symbols(body, g);
          g.rules.push_back({lhs, body});
        }
      Token sep = p.next();
      if (!sep.quoted && sep.text == ";") break;
      if (sep.quoted || sep.text != "|")
        throw GrammarFormatError(sep.line, "expected | or ; in rule");
    }
  }
  return g;
}

Copg load_grammar_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_grammar(buf.str());
}

namespace {

bool needs_quoting(const std::string& t) {
  if (t.empty()) return true;
  if (std::isupper(static_cast<unsigned char>(t[0]))) return true;
  if (t == "(" || t == ")+" || t == "{" || t == "}" || t == "|" || t == ";" || t == "->" ||
      t == "axioms" || t == "ε")
    return true;
  for (char c : t)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '\'') return true;
  return false;
}

void write_items(const Rhs& rhs, std::ostringstream& out) {
  for (const auto& it : rhs) {
    switch (it.kind) {
      case RhsItem::Kind::Term:
        out << ' ' << (needs_quoting(it.name) ? "'" + it.name + "'" : it.name);
        break;
      case RhsItem::Kind::NonTerm:
        out << ' ' << it.name;
        break;
      case RhsItem::Kind::Group:
        out << " (";
        write_items(it.items, out);
        out << " )+";
        break;
    }
  }
}

}  // namespace

std::string write_grammar(const Copg& g) {
  std::ostringstream out;
  out << "axioms";
  for (const auto& ax : g.axioms) out << ' ' << ax;
  out << " ;\n";
  // alternatives grouped per lhs in first-appearance order
  std::vector<std::string> order;
  for (const auto& r : g.rules)
    if (std::find(order.begin(), order.end(), r.lhs) == order.end()) order.push_back(r.lhs);
  for (const auto& lhs : order) {
    out << lhs << " ->";
    bool first = true;
    for (const auto& r : g.rules) {
      if (r.lhs != lhs) continue;
      if (!first) out << " |";
      first = false;
      if (r.rhs.empty())
        out << " ε";
      else
        write_items(r.rhs, out);
    }
    out << " ;\n";
  }
  return out.str();
}

}  // namespace copg
