#include "copg/conversions.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

namespace copg {

// --- tilde / hat / prefix sets --------------------------------------------------

namespace {

std::set<VStr> concat_sets(const std::set<VStr>& a, const std::set<VStr>& b) {
  std::set<VStr> out;
  for (const auto& x : a)
    for (const auto& y : b) {
      VStr z = x;
      z.insert(z.end(), y.begin(), y.end());
      out.insert(std::move(z));
    }
  return out;
}

}  // namespace

std::set<VStr> tilde_of(const Rhs& rhs) {
  std::set<VStr> acc{{}};
  for (const auto& it : rhs) {
    std::set<VStr> piece;
    switch (it.kind) {
      case RhsItem::Kind::Term:
        piece = {{term(it.name)}};
        break;
      case RhsItem::Kind::NonTerm:
        piece = {{nonterm(it.name)}};
        break;
      case RhsItem::Kind::Group: {
        std::set<VStr> once = tilde_of(it.items);
        piece = once;
        for (const auto& s : concat_sets(once, once)) piece.insert(s);
        break;
      }
    }
    acc = concat_sets(acc, piece);
  }
  return acc;
}

VStr hat_of(const Rhs& rhs) { return flatten(rhs); }

std::set<VStr> tilde_set(const Copg& g) {
  std::set<VStr> out;
  for (const auto& r : g.rules) {
    if (r.rhs.empty()) continue;
    auto t = tilde_of(r.rhs);
    out.insert(t.begin(), t.end());
  }
  return out;
}

std::set<VStr> hat_set(const Copg& g) {
  std::set<VStr> out;
  for (const auto& r : g.rules)
    if (!r.rhs.empty()) out.insert(hat_of(r.rhs));
  return out;
}

std::set<VStr> prefix_set(const Copg& g) {
  std::set<VStr> out;
  for (const auto& s : tilde_set(g)) {
    for (std::size_t n = 1; n <= s.size(); ++n) {
      if (!s[n - 1].is_term) continue;
      out.insert(VStr(s.begin(), s.begin() + n));
    }
  }
  return out;
}

// --- grammar -> automaton -------------------------------------------------------

namespace {

// State of the construction: alpha is ε, a prefix string ending with a
// terminal, or a single nonterminal; beta is ε or such a prefix string.
struct ConvState {
  VStr alpha, beta;
  friend bool operator==(const ConvState&, const ConvState&) = default;
  friend auto operator<=>(const ConvState&, const ConvState&) = default;
};

std::string show_vstr(const VStr& s) {
  if (s.empty()) return "ε";  // ε
  return to_string(s);
}

std::string show_state(const ConvState& s) {
  return "(" + show_vstr(s.alpha) + "," + show_vstr(s.beta) + ")";
}

bool alpha_is_nonterm(const ConvState& s) {
  return s.alpha.size() == 1 && !s.alpha[0].is_term;
}

// A repetition group occurrence inside a rule: the flattened text before it,
// its flattened body, and the flattened text after it.
struct GroupSplit {
  VStr eta, zeta, theta;
};

void collect_groups(const Rhs& items, const VStr& before, const VStr& after,
                    std::vector<GroupSplit>& out) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].kind != RhsItem::Kind::Group) continue;
    VStr eta = before;
    for (std::size_t j = 0; j < i; ++j) {
      VStr f = flatten({items[j]});
      eta.insert(eta.end(), f.begin(), f.end());
    }
    VStr theta;
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      VStr f = flatten({items[j]});
      theta.insert(theta.end(), f.begin(), f.end());
    }
    theta.insert(theta.end(), after.begin(), after.end());
    out.push_back({eta, flatten(items[i].items), theta});
    collect_groups(items[i].items, eta, theta, out);
  }
}

}  // namespace

Opa grammar_to_opa(const Copg& g, ConvReport* report) {
  auto vs = validate(g);
  if (!vs.empty())
    throw std::invalid_argument("invalid grammar:\n" + format_violations(g, vs));
  Opm m = compute_opm(g);
  if (!m.conflict_free())
    throw std::invalid_argument("grammar has precedence conflicts");

  std::set<VStr> tildes = tilde_set(g);
  std::set<VStr> hats = hat_set(g);
  std::set<VStr> prefixes = prefix_set(g);

  struct RuleInfo {
    const Rule* rule;
    RhsRecognizer rec;
    std::vector<GroupSplit> groups;
  };
  std::vector<RuleInfo> rules;
  for (const auto& r : g.rules) {
    if (r.rhs.empty()) continue;
    std::vector<GroupSplit> groups;
    collect_groups(r.rhs, {}, {}, groups);
    rules.push_back({&r, RhsRecognizer(r.rhs), std::move(groups)});
  }

  std::map<ConvState, int> ids;
  std::vector<ConvState> states;
  std::deque<int> work;
  auto intern = [&](const ConvState& s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(states.size());
    ids[s] = id;
    states.push_back(s);
    work.push_back(id);
    return id;
  };

  struct SymTrans {
    int from;
    std::string sym;
    int to;
  };
  std::vector<SymTrans> pushes, shifts;
  struct PopTrans {
    int from, label, to;
  };
  std::vector<PopTrans> pops;

  auto push_targets = [&](const ConvState& s, const std::string& a) {
    std::vector<ConvState> out;
    if (alpha_is_nonterm(s)) {
      VStr na = s.alpha;
      na.push_back(term(a));
      if (prefixes.count(na)) out.push_back({na, s.beta});
    } else {
      VStr na{term(a)};
      if (prefixes.count(na)) out.push_back({na, s.alpha});
    }
    return out;
  };

  auto shift_targets = [&](const ConvState& s, const std::string& a) {
    std::vector<ConvState> out;
    bool is_nt = alpha_is_nonterm(s);
    VStr full = is_nt ? s.beta : s.alpha;
    if (is_nt) full.insert(full.end(), s.alpha.begin(), s.alpha.end());
    full.push_back(term(a));
    VStr memb_base = s.alpha;  // the condition string is αa·θ in both branches
    memb_base.push_back(term(a));
    for (const auto& ri : rules) {
      for (const auto& gs : ri.groups) {
        VStr doubled = gs.eta;
        doubled.insert(doubled.end(), gs.zeta.begin(), gs.zeta.end());
        doubled.insert(doubled.end(), gs.zeta.begin(), gs.zeta.end());
        if (doubled != full) continue;
        VStr test = memb_base;
        test.insert(test.end(), gs.theta.begin(), gs.theta.end());
        if (!tildes.count(test) || !ri.rec.matches(test)) continue;
        VStr cut = gs.eta;
        cut.insert(cut.end(), gs.zeta.begin(), gs.zeta.end());
        out.push_back({cut, s.beta});
      }
    }
    if (out.empty() && prefixes.count(full)) out.push_back({full, s.beta});
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  auto pop_targets = [&](const ConvState& s1, const ConvState& s2) {
    std::vector<ConvState> out;
    VStr recognized = alpha_is_nonterm(s1) ? s1.beta : s1.alpha;
    if (alpha_is_nonterm(s1)) recognized.insert(recognized.end(), s1.alpha.begin(), s1.alpha.end());
    if (recognized.empty() || !hats.count(recognized)) return out;
    VStr gamma = alpha_is_nonterm(s2) ? s2.beta : s2.alpha;
    for (const auto& ri : rules) {
      if (!ri.rec.matches(recognized)) continue;
      out.push_back({{nonterm(ri.rule->lhs)}, gamma});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  int start = intern({{}, {}});
  std::set<std::tuple<int, int, int>> pop_seen;
  // Closure: drain push/shift successors, then pair all known states for pops;
  // pops may create new states, so iterate until stable.
  bool grew = true;
  while (grew) {
    grew = false;
    while (!work.empty()) {
      int id = work.front();
      work.pop_front();
      ConvState s = states[id];
      for (const auto& a : g.terminals) {
        for (const auto& t : push_targets(s, a)) pushes.push_back({id, a, intern(t)});
        for (const auto& t : shift_targets(s, a)) shifts.push_back({id, a, intern(t)});
      }
    }
    std::size_t n = states.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& t : pop_targets(states[i], states[j])) {
          int to = intern(t);
          if (pop_seen.insert({static_cast<int>(i), static_cast<int>(j), to}).second)
            pops.push_back({static_cast<int>(i), static_cast<int>(j), to});
        }
    if (states.size() != n || !work.empty()) grew = true;
  }

  Opa out;
  out.opm = m;
  for (const auto& s : states) out.add_state(show_state(s));
  out.mark_initial(show_state(states[start]));
  for (const auto& ax : g.axioms) {
    ConvState f{{nonterm(ax)}, {}};
    if (ids.count(f)) out.mark_final(show_state(f));
  }
  if (g.epsilon_rule()) out.mark_final(show_state(states[start]));
  for (const auto& t : pushes)
    out.add_push(show_state(states[t.from]), t.sym, show_state(states[t.to]));
  for (const auto& t : shifts)
    out.add_shift(show_state(states[t.from]), t.sym, show_state(states[t.to]));
  for (const auto& t : pops)
    out.add_pop(show_state(states[t.from]), show_state(states[t.label]), show_state(states[t.to]));

  if (report) {
    report->state_count = states.size();
    report->prefix_count = prefixes.size();
    report->nonterminal_count = g.nonterminals.size();
    report->state_bound =
        (1 + prefixes.size() + g.nonterminals.size()) * (1 + prefixes.size());
  }
  return out;
}

// --- automaton -> grammar -------------------------------------------------------

namespace {

// Realizable support endpoints per chain context, computed by saturation.
struct SuppTable {
  // (left, right) -> entry state -> set of exit states
  std::map<std::pair<std::string, std::string>, std::map<StateId, std::set<StateId>>> table;

  const std::set<StateId>* exits(const std::string& l, const std::string& r, StateId q) const {
    auto it = table.find({l, r});
    if (it == table.end()) return nullptr;
    auto jt = it->second.find(q);
    return jt == it->second.end() ? nullptr : &jt->second;
  }
};

std::vector<std::string> symbols_with_delim(const Opa& a) {
  std::vector<std::string> out = a.opm.alphabet();
  out.push_back(kDelim);
  return out;
}

// Relation with the (#,#) cell conventionally nonempty.
std::optional<PrecRel> ctx_rel(const Opm& m, const std::string& x, const std::string& y) {
  if (x == kDelim && y == kDelim) return PrecRel::Equals;
  return m.rel_by_id(m.id_of(x), m.id_of(y));
}

SuppTable compute_supports(const Opa& a) {
  SuppTable supp;
  const Opm& m = a.opm;
  auto symbols = symbols_with_delim(a);
  const std::size_t nstates = a.state_count();

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& a0 : symbols) {
      for (const auto& b : symbols) {
        if (!ctx_rel(m, a0, b)) continue;
        for (const auto& a1 : m.alphabet()) {
          if (ctx_rel(m, a0, a1) != PrecRel::Yields) continue;
          for (StateId q0 = 0; q0 < static_cast<StateId>(nstates); ++q0) {
            std::vector<StateId> q0s{q0};
            if (const auto* ex = supp.exits(a0, a1, q0))
              q0s.insert(q0s.end(), ex->begin(), ex->end());
            for (StateId qp0 : q0s) {
              for (StateId q1 : a.push_targets(qp0, a1)) {
                // closure over (symbol, state) via shifts and nested supports
                std::set<std::pair<std::string, StateId>> seen;
                std::deque<std::pair<std::string, StateId>> queue;
                queue.push_back({a1, q1});
                seen.insert({a1, q1});
                while (!queue.empty()) {
                  auto [ai, qi] = queue.front();
                  queue.pop_front();
                  // end of the spine
                  if (ctx_rel(m, ai, b) == PrecRel::Takes) {
                    std::vector<StateId> qns{qi};
                    if (const auto* ex = supp.exits(ai, b, qi))
                      qns.insert(qns.end(), ex->begin(), ex->end());
                    for (StateId qn : qns)
                      for (StateId qe : a.pop_targets(qn, qp0))
                        if (supp.table[{a0, b}][q0].insert(qe).second) changed = true;
                  }
                  // continue the spine
                  for (const auto& a2 : m.alphabet()) {
                    if (ctx_rel(m, ai, a2) != PrecRel::Equals) continue;
                    std::vector<StateId> qis{qi};
                    if (const auto* ex = supp.exits(ai, a2, qi))
                      qis.insert(qis.end(), ex->begin(), ex->end());
                    for (StateId qq : qis)
                      for (StateId q2 : a.shift_targets(qq, a2))
                        if (seen.insert({a2, q2}).second) queue.push_back({a2, q2});
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  return supp;
}

}  // namespace

std::vector<EssentialSupport> essential_supports(const Opa& a) {
  const Opm& m = a.opm;
  SuppTable supp = compute_supports(a);
  std::vector<EssentialSupport> out;
  auto symbols = symbols_with_delim(a);

  // annotated spine edge: (state, gap choice, symbol, next state)
  using Edge = std::tuple<StateId, GapChoice, std::string, StateId>;

  for (const auto& a0 : symbols) {
    for (const auto& b : symbols) {
      if (!ctx_rel(m, a0, b)) continue;
      for (const auto& a1 : m.alphabet()) {
        if (ctx_rel(m, a0, a1) != PrecRel::Yields) continue;
        for (StateId q0 = 0; q0 < static_cast<StateId>(a.state_count()); ++q0) {
          std::vector<GapChoice> gap0s{{false, q0, q0}};
          if (const auto* ex = supp.exits(a0, a1, q0))
            for (StateId e : *ex) gap0s.push_back({true, q0, e});
          for (const auto& gap0 : gap0s) {
            for (StateId q1 : a.push_targets(gap0.exit, a1)) {
              EssentialSupport cur;
              cur.left = a0;
              cur.right = b;
              cur.q0 = q0;
              cur.gaps.push_back(gap0);
              cur.spine.push_back(a1);
              cur.arrivals.push_back(q1);
              std::map<Edge, int> edge_count;

              std::function<void(const std::string&, StateId)> dfs = [&](const std::string& ai,
                                                                          StateId qi) {
                // option: close the chain here
                if (ctx_rel(m, ai, b) == PrecRel::Takes) {
                  std::vector<GapChoice> gapns{{false, qi, qi}};
                  if (const auto* ex = supp.exits(ai, b, qi))
                    for (StateId e : *ex) gapns.push_back({true, qi, e});
                  for (const auto& gapn : gapns) {
                    for (StateId qe : a.pop_targets(gapn.exit, gap0.exit)) {
                      EssentialSupport done = cur;
                      done.gaps.push_back(gapn);
                      done.qend = qe;
                      out.push_back(std::move(done));
                    }
                  }
                }
                // option: extend the spine
                for (const auto& a2 : m.alphabet()) {
                  if (ctx_rel(m, ai, a2) != PrecRel::Equals) continue;
                  std::vector<GapChoice> gaps{{false, qi, qi}};
                  if (const auto* ex = supp.exits(ai, a2, qi))
                    for (StateId e : *ex) gaps.push_back({true, qi, e});
                  for (const auto& gap : gaps) {
                    for (StateId q2 : a.shift_targets(gap.exit, a2)) {
                      Edge e{qi, gap, a2, q2};
                      int& cnt = edge_count[e];
                      if (cnt >= 2) continue;
                      ++cnt;
                      cur.gaps.push_back(gap);
                      cur.spine.push_back(a2);
                      cur.arrivals.push_back(q2);
                      dfs(a2, q2);
                      cur.gaps.pop_back();
                      cur.spine.pop_back();
                      cur.arrivals.pop_back();
                      --cnt;
                    }
                  }
                }
              };
              dfs(a1, q1);
            }
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// --- rule synthesis ----------------------------------------------------------------

namespace {

// Unit of the folding alphabet: optional gap (with its left-context symbol),
// the spine symbol, and the arrival state. States take part in equality so
// that only genuinely cyclic segments are folded.
struct FoldTok {
  bool is_group = false;
  GapChoice gap;
  std::string gap_left;  // symbol to the left of the gap
  std::string sym;
  StateId arrival = -1;
  std::vector<FoldTok> group;

  friend bool operator==(const FoldTok&, const FoldTok&) = default;
};

// Innermost-first folding: repeatedly replaces the leftmost shortest adjacent
// duplicate run u u by a repetition group over u.
void fold_duplicates(std::vector<FoldTok>& seq) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t len = 1; !changed && len * 2 <= seq.size(); ++len) {
      for (std::size_t i = 0; !changed && i + 2 * len <= seq.size(); ++i) {
        bool dup = true;
        for (std::size_t k = 0; k < len; ++k)
          if (!(seq[i + k] == seq[i + len + k])) {
            dup = false;
            break;
          }
        if (!dup) continue;
        FoldTok grp;
        grp.is_group = true;
        grp.group.assign(seq.begin() + i, seq.begin() + i + len);
        seq.erase(seq.begin() + i, seq.begin() + i + 2 * len);
        seq.insert(seq.begin() + i, std::move(grp));
        changed = true;
      }
    }
  }
}

std::string quad_name(const std::string& l, const std::string& qs, const std::string& qe,
                      const std::string& r) {
  auto clean = [](std::string s) {
    for (auto& c : s)
      if (c == ' ') c = '_';
    return s;
  };
  return "Q[" + clean(l) + ";" + clean(qs) + ";" + clean(qe) + ";" + clean(r) + "]";
}

std::string print_rhs(const Rhs& r) {
  std::string out;
  for (const auto& it : r) {
    switch (it.kind) {
      case RhsItem::Kind::Term: out += "t:" + it.name + " "; break;
      case RhsItem::Kind::NonTerm: out += "n:" + it.name + " "; break;
      case RhsItem::Kind::Group: out += "( " + print_rhs(it.items) + ")+ "; break;
    }
  }
  return out;
}

}  // namespace

Copg opa_to_grammar(const Opa& a) {
  auto supports = essential_supports(a);

  Copg g;
  g.terminals = a.opm.alphabet();

  std::set<std::string> nts;
  std::set<std::string> axioms;
  std::vector<Rule> rules;
  std::set<std::pair<std::string, std::string>> rule_seen;  // lhs + printed rhs

  auto gap_nt = [&](const std::string& l, const GapChoice& gap, const std::string& r) {
    return quad_name(l, a.state_name(gap.entry), a.state_name(gap.exit), r);
  };

  for (const auto& s : supports) {
    const std::size_t n = s.spine.size();
    auto gap_left = [&](std::size_t i) { return i == 0 ? s.left : s.spine[i - 1]; };
    auto gap_right = [&](std::size_t i) { return i == n ? s.right : s.spine[i]; };

    std::vector<FoldTok> units;
    for (std::size_t i = 0; i < n; ++i) {
      FoldTok u;
      u.gap = s.gaps[i];
      u.gap_left = gap_left(i);
      u.sym = s.spine[i];
      u.arrival = s.arrivals[i];
      units.push_back(std::move(u));
    }
    fold_duplicates(units);

    std::function<void(const std::vector<FoldTok>&, Rhs&)> render =
        [&](const std::vector<FoldTok>& seq, Rhs& out) {
          for (const auto& tok : seq) {
            if (tok.is_group) {
              Rhs inner;
              render(tok.group, inner);
              out.push_back(rgroup(std::move(inner)));
            } else {
              if (tok.gap.present)
                out.push_back(rnonterm(gap_nt(tok.gap_left, tok.gap, tok.sym)));
              out.push_back(rterm(tok.sym));
            }
          }
        };
    Rhs rhs;
    render(units, rhs);
    if (s.gaps[n].present)
      rhs.push_back(rnonterm(gap_nt(gap_left(n), s.gaps[n], s.right)));

    std::string lhs = quad_name(s.left, a.state_name(s.q0), a.state_name(s.qend), s.right);
    if (!rule_seen.insert({lhs, print_rhs(rhs)}).second) continue;

    nts.insert(lhs);
    for (std::size_t i = 0; i <= n; ++i)
      if (s.gaps[i].present)
        nts.insert(quad_name(gap_left(i), a.state_name(s.gaps[i].entry),
                             a.state_name(s.gaps[i].exit), gap_right(i)));
    rules.push_back({lhs, std::move(rhs)});
    if (s.left == kDelim && s.right == kDelim && a.is_initial(s.q0) && a.is_final(s.qend))
      axioms.insert(lhs);
  }

  // the empty word
  if (accepts(a, {}).accepted) {
    std::string eps_ax = "Qempty";
    while (nts.count(eps_ax)) eps_ax += "_";
    nts.insert(eps_ax);
    axioms.insert(eps_ax);
    rules.push_back({eps_ax, {}});
  }

  g.nonterminals.assign(nts.begin(), nts.end());
  g.rules = std::move(rules);
  g.axioms.assign(axioms.begin(), axioms.end());

  // --- useless-symbol elimination ---
  // productive nonterminals
  std::set<std::string> productive;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : g.rules) {
      if (productive.count(r.lhs)) continue;
      bool ok = true;
      for (const auto& sym : flatten(r.rhs))
        if (!sym.is_term && !productive.count(sym.name)) {
          ok = false;
          break;
        }
      if (ok) {
        productive.insert(r.lhs);
        changed = true;
      }
    }
  }
  // reachable from productive axioms through productive rules
  std::set<std::string> reached;
  std::deque<std::string> queue;
  for (const auto& ax : g.axioms)
    if (productive.count(ax)) {
      if (reached.insert(ax).second) queue.push_back(ax);
    }
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    for (const auto& r : g.rules) {
      if (r.lhs != cur) continue;
      bool usable = true;
      for (const auto& sym : flatten(r.rhs))
        if (!sym.is_term && !productive.count(sym.name)) {
          usable = false;
          break;
        }
      if (!usable) continue;
      for (const auto& sym : flatten(r.rhs))
        if (!sym.is_term && reached.insert(sym.name).second) queue.push_back(sym.name);
    }
  }

  Copg trimmed;
  trimmed.terminals = g.terminals;
  for (const auto& nt : g.nonterminals)
    if (reached.count(nt)) trimmed.nonterminals.push_back(nt);
  for (const auto& ax : g.axioms)
    if (reached.count(ax)) trimmed.axioms.push_back(ax);
  for (const auto& r : g.rules) {
    if (!reached.count(r.lhs)) continue;
    bool usable = true;
    for (const auto& sym : flatten(r.rhs))
      if (!sym.is_term && !reached.count(sym.name)) {
        usable = false;
        break;
      }
    if (usable) trimmed.rules.push_back(r);
  }
  return trimmed;
}

}  // namespace copg
