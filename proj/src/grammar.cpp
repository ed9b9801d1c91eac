#include "copg/grammar.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace copg {

std::string to_string(const Sym& s) { return s.name; }

std::string to_string(const VStr& s) {
  std::string out;
  for (const auto& x : s) out += x.name;
  return out;
}

RhsItem rterm(std::string n) { return RhsItem{RhsItem::Kind::Term, std::move(n), {}}; }
RhsItem rnonterm(std::string n) { return RhsItem{RhsItem::Kind::NonTerm, std::move(n), {}}; }
RhsItem rgroup(Rhs items) { return RhsItem{RhsItem::Kind::Group, "", std::move(items)}; }

bool Copg::is_terminal(const std::string& s) const {
  return std::find(terminals.begin(), terminals.end(), s) != terminals.end();
}

bool Copg::is_nonterminal(const std::string& s) const {
  return std::find(nonterminals.begin(), nonterminals.end(), s) != nonterminals.end();
}

std::optional<std::size_t> Copg::epsilon_rule() const {
  for (std::size_t i = 0; i < rules.size(); ++i)
    if (rules[i].rhs.empty()) return i;
  return std::nullopt;
}

// --- flattening ------------------------------------------------------------

static void flatten_into(const Rhs& rhs, VStr& out) {
  for (const auto& it : rhs) {
    switch (it.kind) {
      case RhsItem::Kind::Term: out.push_back(term(it.name)); break;
      case RhsItem::Kind::NonTerm: out.push_back(nonterm(it.name)); break;
      case RhsItem::Kind::Group: flatten_into(it.items, out); break;
    }
  }
}

VStr flatten(const Rhs& rhs) {
  VStr out;
  flatten_into(rhs, out);
  return out;
}

static void double_expand_into(const Rhs& rhs, VStr& out) {
  for (const auto& it : rhs) {
    switch (it.kind) {
      case RhsItem::Kind::Term: out.push_back(term(it.name)); break;
      case RhsItem::Kind::NonTerm: out.push_back(nonterm(it.name)); break;
      case RhsItem::Kind::Group: {
        VStr body;
        double_expand_into(it.items, body);
        out.insert(out.end(), body.begin(), body.end());
        out.insert(out.end(), body.begin(), body.end());
        break;
      }
    }
  }
}

VStr double_expand(const Rhs& rhs) {
  VStr out;
  double_expand_into(rhs, out);
  return out;
}

// --- validation --------------------------------------------------------------

static void check_groups(const Copg& g, const Rhs& rhs, int rule_idx, int top_pos,
                         std::vector<Violation>& out) {
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    const RhsItem& it = rhs[i];
    int pos = top_pos >= 0 ? top_pos : static_cast<int>(i);
    if (it.kind == RhsItem::Kind::Group) {
      if (it.items.empty()) {
        out.push_back({rule_idx, pos, "empty repetition group"});
        continue;
      }
      VStr body = flatten(it.items);
      if (body.empty() || !body.back().is_term)
        out.push_back({rule_idx, pos, "repetition group is not terminated by a terminal"});
      check_groups(g, it.items, rule_idx, pos, out);
    } else {
      bool known = it.kind == RhsItem::Kind::Term ? g.is_terminal(it.name)
                                                  : g.is_nonterminal(it.name);
      if (!known)
        out.push_back({rule_idx, pos,
                       std::string(it.kind == RhsItem::Kind::Term ? "undeclared terminal: "
                                                                  : "undeclared nonterminal: ") +
                           it.name});
    }
  }
}

std::vector<Violation> validate(const Copg& g) {
  std::vector<Violation> out;
  for (const auto& t : g.terminals) {
    if (t == kDelim) out.push_back({-1, -1, "the delimiter # cannot be a terminal"});
    if (g.is_nonterminal(t))
      out.push_back({-1, -1, "symbol in both alphabets: " + t});
  }
  if (g.axioms.empty()) out.push_back({-1, -1, "empty axiom set"});
  for (const auto& a : g.axioms)
    if (!g.is_nonterminal(a)) out.push_back({-1, -1, "axiom is not a nonterminal: " + a});

  int eps_count = 0;
  for (std::size_t r = 0; r < g.rules.size(); ++r) {
    const Rule& rule = g.rules[r];
    int ri = static_cast<int>(r);
    if (!g.is_nonterminal(rule.lhs))
      out.push_back({ri, -1, "rule lhs is not a nonterminal: " + rule.lhs});
    if (rule.rhs.empty()) {
      ++eps_count;
      if (std::find(g.axioms.begin(), g.axioms.end(), rule.lhs) == g.axioms.end())
        out.push_back({ri, -1, "empty rhs allowed only for an axiom"});
      for (std::size_t r2 = 0; r2 < g.rules.size(); ++r2) {
        if (r2 != r && g.rules[r2].lhs == rule.lhs)
          out.push_back({ri, -1, "lhs of the empty rule has other rules"});
        VStr f = flatten(g.rules[r2].rhs);
        for (const auto& s : f)
          if (!s.is_term && s.name == rule.lhs)
            out.push_back({ri, -1, "lhs of the empty rule occurs in a rhs"});
      }
      continue;
    }
    check_groups(g, rule.rhs, ri, -1, out);
    VStr d = double_expand(rule.rhs);
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
      if (!d[i].is_term && !d[i + 1].is_term) {
        out.push_back({ri, static_cast<int>(i),
                       "adjacent nonterminals " + d[i].name + " " + d[i + 1].name});
        break;  // one report per rule is enough
      }
  }
  if (eps_count > 1) out.push_back({-1, -1, "more than one empty rule"});
  return out;
}

std::string format_violations(const Copg& g, const std::vector<Violation>& vs) {
  std::ostringstream out;
  for (const auto& v : vs) {
    if (v.rule >= 0) {
      out << "rule " << v.rule << " (" << g.rules[v.rule].lhs << ")";
      if (v.position >= 0) out << " position " << v.position;
      out << ": ";
    }
    out << v.message << "\n";
  }
  return out.str();
}

// --- terminal sets -----------------------------------------------------------

TerminalSets terminal_sets(const Copg& g) {
  TerminalSets ts;
  for (const auto& nt : g.nonterminals) {
    ts.left[nt];
    ts.right[nt];
  }
  bool changed = true;
  while (changed) {
    changed = false;
    auto add = [&](std::set<std::string>& dst, const std::string& t) {
      if (dst.insert(t).second) changed = true;
    };
    auto add_all = [&](std::set<std::string>& dst, const std::set<std::string>& src) {
      for (const auto& t : src) add(dst, t);
    };
    for (const auto& rule : g.rules) {
      VStr f = flatten(rule.rhs);
      if (f.empty()) continue;
      auto& L = ts.left[rule.lhs];
      auto& R = ts.right[rule.lhs];
      if (f.front().is_term) {
        add(L, f.front().name);
      } else {
        add_all(L, ts.left[f.front().name]);
        if (f.size() >= 2 && f[1].is_term) add(L, f[1].name);
      }
      if (f.back().is_term) {
        add(R, f.back().name);
      } else {
        add_all(R, ts.right[f.back().name]);
        if (f.size() >= 2 && f[f.size() - 2].is_term) add(R, f[f.size() - 2].name);
      }
    }
  }
  return ts;
}

// --- precedence matrix extraction ---------------------------------------------

Opm compute_opm(const Copg& g, OpmContributors* contributors) {
  Opm m(g.terminals);
  TerminalSets ts = terminal_sets(g);
  auto note = [&](const std::string& a, const std::string& b, int rule) {
    if (contributors) (*contributors)[{a, b}].insert(rule);
  };
  for (std::size_t r = 0; r < g.rules.size(); ++r) {
    VStr d = double_expand(g.rules[r].rhs);
    int ri = static_cast<int>(r);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (!d[i].is_term) continue;
      const std::string& a = d[i].name;
      if (i + 1 < d.size()) {
        if (d[i + 1].is_term) {
          m.add(a, d[i + 1].name, PrecRel::Equals);
          note(a, d[i + 1].name, ri);
        } else {
          const std::string& B = d[i + 1].name;
          for (const auto& b : ts.left[B]) {
            m.add(a, b, PrecRel::Yields);
            note(a, b, ri);
          }
          if (i + 2 < d.size() && d[i + 2].is_term) {
            m.add(a, d[i + 2].name, PrecRel::Equals);
            note(a, d[i + 2].name, ri);
          }
        }
      }
      if (i > 0 && !d[i - 1].is_term) {
        const std::string& B = d[i - 1].name;
        for (const auto& b : ts.right[B]) {
          m.add(b, a, PrecRel::Takes);
          note(b, a, ri);
        }
      }
    }
  }
  for (const auto& ax : g.axioms) {
    for (const auto& b : ts.left[ax]) {
      m.add(kDelim, b, PrecRel::Yields);
      note(kDelim, b, -1);
    }
    for (const auto& a : ts.right[ax]) {
      m.add(a, kDelim, PrecRel::Takes);
      note(a, kDelim, -1);
    }
  }
  return m;
}

// --- rhs recognizers -----------------------------------------------------------

namespace {

// Thompson-style automaton over V with epsilon edges, built per rhs.
struct EpsNfa {
  std::vector<std::vector<std::pair<Sym, int>>> edges;
  std::vector<std::vector<int>> eps;
  int out = 0;

  int fresh() {
    edges.emplace_back();
    eps.emplace_back();
    return static_cast<int>(edges.size()) - 1;
  }

  int build_seq(const Rhs& items, int in) {
    int cur = in;
    for (const auto& it : items) {
      switch (it.kind) {
        case RhsItem::Kind::Term:
        case RhsItem::Kind::NonTerm: {
          int s = fresh();
          edges[cur].push_back({Sym{it.kind == RhsItem::Kind::Term, it.name}, s});
          cur = s;
          break;
        }
        case RhsItem::Kind::Group: {
          int gin = cur;
          int gout = build_seq(it.items, gin);
          eps[gout].push_back(gin);  // one or more iterations
          cur = gout;
          break;
        }
      }
    }
    return cur;
  }
};

}  // namespace

RhsRecognizer::RhsRecognizer(const Rhs& rhs) {
  EpsNfa n;
  int in = n.fresh();
  n.out = n.build_seq(rhs, in);
  int ns = static_cast<int>(n.edges.size());
  std::vector<std::vector<int>> clo(ns);
  for (int s = 0; s < ns; ++s) {
    std::vector<bool> seen(ns, false);
    std::deque<int> q{s};
    seen[s] = true;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      clo[s].push_back(v);
      for (int w : n.eps[v])
        if (!seen[w]) {
          seen[w] = true;
          q.push_back(w);
        }
    }
  }
  step_.resize(ns);
  accept_.assign(ns, false);
  for (int s = 0; s < ns; ++s) {
    for (int v : clo[s]) {
      if (v == n.out) accept_[s] = true;
      for (const auto& [sym, t] : n.edges[v]) {
        auto& vec = step_[s][sym];
        if (std::find(vec.begin(), vec.end(), t) == vec.end()) vec.push_back(t);
      }
    }
  }
}

std::vector<int> RhsRecognizer::start() const { return {0}; }

std::vector<int> RhsRecognizer::advance(const std::vector<int>& states, const Sym& sym) const {
  std::set<int> next;
  for (int s : states) {
    auto it = step_[s].find(sym);
    if (it == step_[s].end()) continue;
    next.insert(it->second.begin(), it->second.end());
  }
  return {next.begin(), next.end()};
}

bool RhsRecognizer::any_accepting(const std::vector<int>& states) const {
  for (int s : states)
    if (accept_[s]) return true;
  return false;
}

bool RhsRecognizer::matches(const VStr& w) const {
  std::vector<int> cur = start();
  for (const auto& sym : w) {
    cur = advance(cur, sym);
    if (cur.empty()) return false;
  }
  return any_accepting(cur);
}

bool RhsRecognizer::intersects(const RhsRecognizer& a, const RhsRecognizer& b) {
  std::set<std::pair<int, int>> seen;
  std::deque<std::pair<int, int>> q;
  q.push_back({0, 0});
  seen.insert({0, 0});
  while (!q.empty()) {
    auto [p, r] = q.front();
    q.pop_front();
    if (a.accept_[p] && b.accept_[r]) return true;
    for (const auto& [sym, ts] : a.step_[p]) {
      auto it = b.step_[r].find(sym);
      if (it == b.step_[r].end()) continue;
      for (int t1 : ts)
        for (int t2 : it->second)
          if (seen.insert({t1, t2}).second) q.push_back({t1, t2});
    }
  }
  return false;
}

bool rhs_matches(const Rhs& rhs, const VStr& s) { return RhsRecognizer(rhs).matches(s); }

BdReport is_bd(const Copg& g) {
  BdReport rep;
  std::vector<RhsRecognizer> recs;
  recs.reserve(g.rules.size());
  for (const auto& r : g.rules) recs.emplace_back(r.rhs);
  for (std::size_t i = 0; i < g.rules.size(); ++i)
    for (std::size_t j = i + 1; j < g.rules.size(); ++j) {
      if (g.rules[i].lhs == g.rules[j].lhs) continue;
      if (g.rules[i].rhs.empty() || g.rules[j].rhs.empty()) continue;
      if (RhsRecognizer::intersects(recs[i], recs[j]))
        rep.collisions.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
  rep.bd = rep.collisions.empty();
  return rep;
}

// --- bounded language enumeration ------------------------------------------------

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;

std::size_t seq_minlen(const Rhs& items, const std::map<std::string, std::size_t>& nt_min);

std::size_t item_minlen(const RhsItem& it, const std::map<std::string, std::size_t>& nt_min) {
  switch (it.kind) {
    case RhsItem::Kind::Term: return 1;
    case RhsItem::Kind::NonTerm: {
      auto f = nt_min.find(it.name);
      return f == nt_min.end() ? kInf : f->second;
    }
    case RhsItem::Kind::Group: return seq_minlen(it.items, nt_min);
  }
  return kInf;
}

std::size_t seq_minlen(const Rhs& items, const std::map<std::string, std::size_t>& nt_min) {
  std::size_t total = 0;
  for (const auto& it : items) {
    std::size_t m = item_minlen(it, nt_min);
    if (m >= kInf) return kInf;
    total += m;
    if (total >= kInf) return kInf;
  }
  return total;
}

std::map<std::string, std::size_t> nonterminal_minlens(const Copg& g) {
  std::map<std::string, std::size_t> nt_min;
  for (const auto& nt : g.nonterminals) nt_min[nt] = kInf;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& rule : g.rules) {
      std::size_t m = seq_minlen(rule.rhs, nt_min);
      if (m < nt_min[rule.lhs]) {
        nt_min[rule.lhs] = m;
        changed = true;
      }
    }
  }
  return nt_min;
}

std::size_t vstr_minlen(const VStr& s, const std::map<std::string, std::size_t>& nt_min) {
  std::size_t total = 0;
  for (const auto& sym : s) {
    if (sym.is_term) {
      total += 1;
    } else {
      auto f = nt_min.find(sym.name);
      std::size_t m = f == nt_min.end() ? kInf : f->second;
      if (m >= kInf) return kInf;
      total += m;
    }
    if (total >= kInf) return kInf;
  }
  return total;
}

// Plain bodies with a length budget: every group unrolled 1..k times while the
// minimum derivable length stays within the budget.
void expand_seq(const Rhs& items, std::size_t i, const VStr& prefix, std::size_t budget,
                const std::map<std::string, std::size_t>& nt_min, std::vector<VStr>& out) {
  if (i == items.size()) {
    out.push_back(prefix);
    return;
  }
  std::size_t rest = 0;
  for (std::size_t j = i + 1; j < items.size(); ++j) rest += item_minlen(items[j], nt_min);
  std::size_t used = vstr_minlen(prefix, nt_min);
  if (used >= kInf || used + rest > budget) return;
  std::size_t sub_budget = budget - rest;

  const RhsItem& it = items[i];
  switch (it.kind) {
    case RhsItem::Kind::Term:
    case RhsItem::Kind::NonTerm: {
      VStr next = prefix;
      next.push_back(Sym{it.kind == RhsItem::Kind::Term, it.name});
      if (vstr_minlen(next, nt_min) <= sub_budget)
        expand_seq(items, i + 1, next, budget, nt_min, out);
      break;
    }
    case RhsItem::Kind::Group: {
      std::vector<VStr> once;
      expand_seq(it.items, 0, {}, sub_budget, nt_min, once);
      // one or more repetitions, budget-pruned
      std::vector<VStr> reps = once;
      std::vector<VStr> frontier = once;
      while (!frontier.empty()) {
        std::vector<VStr> next_frontier;
        for (const auto& p : frontier)
          for (const auto& q : once) {
            VStr cat = p;
            cat.insert(cat.end(), q.begin(), q.end());
            if (vstr_minlen(prefix, nt_min) + vstr_minlen(cat, nt_min) <= sub_budget)
              next_frontier.push_back(std::move(cat));
          }
        std::sort(next_frontier.begin(), next_frontier.end());
        next_frontier.erase(std::unique(next_frontier.begin(), next_frontier.end()),
                            next_frontier.end());
        reps.insert(reps.end(), next_frontier.begin(), next_frontier.end());
        frontier = std::move(next_frontier);
      }
      std::sort(reps.begin(), reps.end());
      reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
      for (const auto& r : reps) {
        VStr next = prefix;
        next.insert(next.end(), r.begin(), r.end());
        if (vstr_minlen(next, nt_min) <= sub_budget)
          expand_seq(items, i + 1, next, budget, nt_min, out);
      }
      break;
    }
  }
}

struct BoundedLang {
  // words encoded as byte strings of terminal ids
  std::map<std::string, std::unordered_set<std::string>> langs;
  std::map<std::string, int> term_id;
  std::vector<std::string> term_name;
};

BoundedLang bounded_languages(const Copg& g, std::size_t maxlen) {
  BoundedLang bl;
  for (const auto& t : g.terminals) {
    bl.term_id[t] = static_cast<int>(bl.term_name.size());
    bl.term_name.push_back(t);
  }
  if (bl.term_name.size() > 250) throw std::invalid_argument("alphabet too large to enumerate");
  for (const auto& nt : g.nonterminals) bl.langs[nt];

  auto nt_min = nonterminal_minlens(g);
  // pre-expand plain bodies per rule
  std::vector<std::pair<std::string, std::vector<VStr>>> plain;
  for (const auto& rule : g.rules) {
    std::vector<VStr> bodies;
    expand_seq(rule.rhs, 0, {}, maxlen, nt_min, bodies);
    plain.push_back({rule.lhs, std::move(bodies)});
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [lhs, bodies] : plain) {
      auto& dst = bl.langs[lhs];
      for (const auto& body : bodies) {
        // DFS concatenation with remaining-minimum pruning
        std::vector<std::size_t> rest_min(body.size() + 1, 0);
        for (std::size_t i = body.size(); i-- > 0;) {
          std::size_t m = body[i].is_term ? 1 : nt_min[body[i].name];
          rest_min[i] = m >= kInf ? kInf : rest_min[i + 1] + m;
        }
        if (rest_min[0] > maxlen) continue;
        std::vector<std::string> acc{""};
        bool dead = false;
        for (std::size_t i = 0; i < body.size() && !dead; ++i) {
          std::vector<std::string> next;
          if (body[i].is_term) {
            char c = static_cast<char>(bl.term_id[body[i].name] + 1);
            for (const auto& p : acc)
              if (p.size() + 1 + rest_min[i + 1] <= maxlen) next.push_back(p + c);
          } else {
            const auto& sub = bl.langs[body[i].name];
            for (const auto& p : acc)
              for (const auto& w : sub)
                if (p.size() + w.size() + rest_min[i + 1] <= maxlen) next.push_back(p + w);
          }
          std::sort(next.begin(), next.end());
          next.erase(std::unique(next.begin(), next.end()), next.end());
          acc = std::move(next);
          if (acc.empty()) dead = true;
        }
        if (dead) continue;
        for (const auto& w : acc)
          if (dst.insert(w).second) changed = true;
      }
    }
  }
  return bl;
}

std::set<Word> decode_lang(const BoundedLang& bl, const std::unordered_set<std::string>& raw) {
  std::set<Word> out;
  for (const auto& w : raw) {
    Word word;
    for (char c : w) word.push_back(bl.term_name[static_cast<unsigned char>(c) - 1]);
    out.insert(std::move(word));
  }
  return out;
}

}  // namespace

std::set<Word> language_of(const Copg& g, const std::string& nt, std::size_t maxlen) {
  BoundedLang bl = bounded_languages(g, maxlen);
  auto it = bl.langs.find(nt);
  if (it == bl.langs.end()) throw std::domain_error("unknown nonterminal: " + nt);
  return decode_lang(bl, it->second);
}

std::set<Word> enumerate_language(const Copg& g, std::size_t maxlen) {
  BoundedLang bl = bounded_languages(g, maxlen);
  std::unordered_set<std::string> all;
  for (const auto& ax : g.axioms) {
    const auto& l = bl.langs[ax];
    all.insert(l.begin(), l.end());
  }
  return decode_lang(bl, all);
}

}  // namespace copg
