#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>

#include "copg/grammar.hpp"
#include "copg/grammar_io.hpp"
#include "fixtures.hpp"

using namespace copg;

namespace {

Word w(std::initializer_list<const char*> toks) {
  Word out;
  for (auto t : toks) out.push_back(t);
  return out;
}

VStr vs(std::initializer_list<std::pair<bool, const char*>> syms) {
  VStr out;
  for (auto [t, n] : syms) out.push_back(Sym{t, n});
  return out;
}

}  // namespace

TEST_CASE("validation accepts the bundled grammars") {
  CHECK(validate(fx::arith()).empty());
  CHECK(validate(fx::arith_cyclic()).empty());
  CHECK(validate(fx::sum_paren()).empty());
}

TEST_CASE("validation rejects adjacent nonterminals") {
  Copg g;
  g.terminals = {"a"};
  g.nonterminals = {"A", "B", "C"};
  g.axioms = {"A"};
  g.rules = {{"A", {rnonterm("B"), rnonterm("C"), rterm("a")}}};
  auto vs = validate(g);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].rule == 0);
  CHECK(vs[0].position == 0);
  CHECK(vs[0].message.find("adjacent nonterminals") != std::string::npos);
}

TEST_CASE("validation rejects groups without a trailing terminal") {
  Copg g;
  g.terminals = {"a"};
  g.nonterminals = {"A", "B"};
  g.axioms = {"A"};
  g.rules = {{"A", {rgroup({rterm("a"), rnonterm("B")})}}, {"B", {rterm("a")}}};
  auto vs = validate(g);
  REQUIRE_FALSE(vs.empty());
  CHECK(vs[0].message.find("terminated by a terminal") != std::string::npos);
}

TEST_CASE("epsilon rule discipline") {
  Copg g;
  g.terminals = {"a"};
  g.nonterminals = {"S", "A"};
  g.axioms = {"S", "A"};
  g.rules = {{"S", {}}, {"A", {rterm("a")}}};
  CHECK(validate(g).empty());
  CHECK(g.epsilon_rule() == 0);

  // the ε lhs may not occur elsewhere
  g.rules.push_back({"A", {rnonterm("S"), rterm("a")}});
  CHECK_FALSE(validate(g).empty());
}

TEST_CASE("double expansion") {
  // (T +)+ T  →  T + T + T
  Rhs r1{rgroup({rnonterm("T"), rterm("+")}), rnonterm("T")};
  CHECK(to_string(double_expand(r1)) == "T+T+T");
  // a → a
  CHECK(to_string(double_expand({rterm("a")})) == "a");
  // (B a (b c)+)+ a → innermost-first doubling
  Rhs r2{rgroup({rnonterm("B"), rterm("a"), rgroup({rterm("b"), rterm("c")})}), rterm("a")};
  CHECK(to_string(double_expand(r2)) == "BabcbcBabcbca");
  CHECK(to_string(flatten(r2)) == "Babca");
}

TEST_CASE("terminal sets of the plus/times grammar") {
  auto ts = terminal_sets(fx::arith());
  CHECK(ts.left["E"] == std::set<std::string>{"+", "×", "n"});
  CHECK(ts.left["T"] == std::set<std::string>{"×", "n"});
  CHECK(ts.left["F"] == std::set<std::string>{"n"});
  CHECK(ts.right["E"] == std::set<std::string>{"+", "×", "n"});
  CHECK(ts.right["T"] == std::set<std::string>{"×", "n"});
  CHECK(ts.right["F"] == std::set<std::string>{"n"});
}

TEST_CASE("terminal sets, single rule and cyclic grammar") {
  Copg g;
  g.terminals = {"a"};
  g.nonterminals = {"A"};
  g.axioms = {"A"};
  g.rules = {{"A", {rterm("a")}}};
  auto ts = terminal_sets(g);
  CHECK(ts.left["A"] == std::set<std::string>{"a"});
  CHECK(ts.right["A"] == std::set<std::string>{"a"});

  auto tc = terminal_sets(fx::arith_cyclic());
  for (const auto& t : {"×", "-", "/", "⦇", "n"}) CHECK(tc.left["T"].count(t));
  CHECK_FALSE(tc.left["T"].count("+"));
}

TEST_CASE("matrix extraction matches the reference matrices") {
  CHECK(compute_opm(fx::arith()).same_cells(fx::arith_matrix()));
  Opm mc = compute_opm(fx::arith_cyclic());
  CHECK(mc.same_cells(fx::arith_cyclic_matrix()));
  CHECK(mc.lookup("+", "+") == PrecRel::Equals);
  CHECK(mc.lookup("×", "×") == PrecRel::Equals);
}

TEST_CASE("matrix extraction of a one-rule grammar") {
  Copg g;
  g.terminals = {"a"};
  g.nonterminals = {"A"};
  g.axioms = {"A"};
  g.rules = {{"A", {rterm("a")}}};
  Opm m = compute_opm(g);
  CHECK(m.filled_cells() == 2);
  CHECK(m.lookup("#", "a") == PrecRel::Yields);
  CHECK(m.lookup("a", "#") == PrecRel::Takes);
}

TEST_CASE("matrix extraction is monotone in the rule set") {
  Copg full = fx::arith();
  for (std::size_t drop = 0; drop < full.rules.size(); ++drop) {
    Copg sub = full;
    sub.rules.erase(sub.rules.begin() + drop);
    Opm ms = compute_opm(sub);
    Opm mf = compute_opm(full);
    for (const auto& a : std::vector<std::string>{"+", "×", "n", "#"})
      for (const auto& b : std::vector<std::string>{"+", "×", "n", "#"})
        for (PrecRel r : ms.cell(a, b)) {
          auto cell = mf.cell(a, b);
          CHECK(std::find(cell.begin(), cell.end(), r) != cell.end());
        }
  }
}

TEST_CASE("conflict reporting names contributing rules") {
  // A → a B b | a c with b ⩵-vs-⋖ conflict on (a,c): build a clash directly
  Copg g;
  g.terminals = {"a", "b"};
  g.nonterminals = {"S", "B"};
  g.axioms = {"S"};
  g.rules = {{"S", {rterm("a"), rnonterm("B"), rterm("b")}},  // a ⩵ b
             {"B", {rterm("b")}}};                            // a ⋖ b via L(B)
  OpmContributors contrib;
  Opm m = compute_opm(g, &contrib);
  CHECK_FALSE(m.conflict_free());
  auto cs = m.conflicts();
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].a == "a");
  CHECK(cs[0].b == "b");
  CHECK(contrib[{"a", "b"}].count(0));
}

TEST_CASE("rhs language membership") {
  Rhs sum{rgroup({rnonterm("T"), rterm("+")}), rnonterm("T")};
  CHECK(rhs_matches(sum, vs({{false, "T"}, {true, "+"}, {false, "T"}, {true, "+"}, {false, "T"}})));
  CHECK_FALSE(rhs_matches(sum, vs({{false, "T"}})));
  Rhs prod{rgroup({rnonterm("F"), rterm("×")}), rnonterm("F")};
  CHECK(rhs_matches(prod, vs({{false, "F"}, {true, "×"}, {false, "F"}})));
}

TEST_CASE("every k-fold group expansion matches its own rule") {
  for (const Copg& g : {fx::arith_cyclic(), fx::sum_paren()}) {
    for (const auto& rule : g.rules) {
      if (rule.rhs.empty()) continue;
      for (int k = 1; k <= 4; ++k) {
        // expand every group exactly k times
        std::function<VStr(const Rhs&)> expand = [&](const Rhs& items) {
          VStr out;
          for (const auto& it : items) {
            switch (it.kind) {
              case RhsItem::Kind::Term: out.push_back(term(it.name)); break;
              case RhsItem::Kind::NonTerm: out.push_back(nonterm(it.name)); break;
              case RhsItem::Kind::Group: {
                VStr body = expand(it.items);
                for (int i = 0; i < k; ++i) out.insert(out.end(), body.begin(), body.end());
                break;
              }
            }
          }
          return out;
        };
        CHECK(rhs_matches(rule.rhs, expand(rule.rhs)));
      }
    }
  }
}

TEST_CASE("backward determinism") {
  auto rep = is_bd(fx::arith());
  CHECK_FALSE(rep.bd);
  // E → T × F and T → T × F share their rhs
  bool found = false;
  Copg g = fx::arith();
  for (auto [i, j] : rep.collisions)
    if (g.rules[i].lhs != g.rules[j].lhs && g.rules[i].rhs == g.rules[j].rhs) found = true;
  CHECK(found);

  CHECK_FALSE(is_bd(fx::arith_cyclic()).bd);

  Copg two;
  two.terminals = {"a", "b"};
  two.nonterminals = {"A", "B"};
  two.axioms = {"A", "B"};
  two.rules = {{"A", {rterm("a")}}, {"B", {rterm("b")}}};
  CHECK(is_bd(two).bd);
}

TEST_CASE("bounded enumeration") {
  auto l3 = enumerate_language(fx::arith(), 3);
  CHECK(l3 == std::set<Word>{w({"n"}), w({"n", "+", "n"}), w({"n", "×", "n"})});

  // ε only through the designated ε-rule
  Copg eps;
  eps.terminals = {"a"};
  eps.nonterminals = {"S", "A"};
  eps.axioms = {"S", "A"};
  eps.rules = {{"S", {}}, {"A", {rterm("a")}}};
  CHECK(enumerate_language(eps, 0) == std::set<Word>{{}});
  Copg noeps;
  noeps.terminals = {"a"};
  noeps.nonterminals = {"A"};
  noeps.axioms = {"A"};
  noeps.rules = {{"A", {rterm("a")}}};
  CHECK(enumerate_language(noeps, 0).empty());

  // group pumped once and twice
  Copg ab;
  ab.terminals = {"a", "b"};
  ab.nonterminals = {"A"};
  ab.axioms = {"A"};
  ab.rules = {{"A", {rgroup({rterm("a"), rterm("b")}), rterm("b")}}};
  CHECK(enumerate_language(ab, 5) ==
        std::set<Word>{w({"a", "b", "b"}), w({"a", "b", "a", "b", "b"})});
}

TEST_CASE("enumeration grows monotonically with the bound") {
  for (const Copg& g : {fx::arith(), fx::arith_cyclic(), fx::sum_paren()}) {
    for (std::size_t n = 0; n < 5; ++n) {
      auto small = enumerate_language(g, n);
      auto big = enumerate_language(g, n + 1);
      CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
    }
  }
}

TEST_CASE("group-free acyclic grammars have short rule bodies") {
  // terminals per rhs bounded by the longest equals-linked path
  for (const Copg& g : {fx::arith()}) {
    Opm m = compute_opm(g);
    REQUIRE(m.eq_acyclic());
    // longest path in the equals digraph, counted in nodes
    std::size_t longest = 1;
    const auto& alpha = m.alphabet();
    std::function<std::size_t(const std::string&, std::set<std::string>&)> walk =
        [&](const std::string& a, std::set<std::string>& seen) -> std::size_t {
      std::size_t best = 1;
      for (const auto& b : alpha) {
        if (m.lookup(a, b) != PrecRel::Equals || seen.count(b)) continue;
        seen.insert(b);
        best = std::max(best, 1 + walk(b, seen));
        seen.erase(b);
      }
      return best;
    };
    for (const auto& a : alpha) {
      std::set<std::string> seen{a};
      longest = std::max(longest, walk(a, seen));
    }
    for (const auto& rule : g.rules) {
      std::size_t terms = 0;
      for (const auto& s : flatten(rule.rhs))
        if (s.is_term) ++terms;
      CHECK(terms <= longest);
    }
  }
}

TEST_CASE("grammar text loader") {
  Copg g = load_grammar("// comment\naxioms E ;\nE -> E + T | n ;\nT -> n ;\n");
  CHECK(g.axioms == std::vector<std::string>{"E"});
  CHECK(g.rules.size() == 3);
  CHECK(g.rules[0].rhs == Rhs{rnonterm("E"), rterm("+"), rnonterm("T")});

  // sets expand on both sides, cross-producted
  Copg s = load_grammar("axioms A B ;\n{ A B } -> x { A B } y | z ;\n");
  CHECK(s.rules.size() == 6);  // 2 lhs × (2 set bodies + 1 z body)

  // quoted terminals may collide with keywords
  Copg q = load_grammar("axioms A ;\nA -> '(' B ')' ;\nB -> x ;\n");
  CHECK(q.rules[0].rhs == Rhs{rterm("("), rnonterm("B"), rterm(")")});

  // groups
  Copg gr = load_grammar("axioms A ;\nA -> ( B a )+ b ;\nB -> b ;\n");
  CHECK(gr.rules[0].rhs == Rhs{rgroup({rnonterm("B"), rterm("a")}), rterm("b")});

  // ε alternative
  Copg ge = load_grammar("axioms S A ;\nS -> ε ;\nA -> a ;\n");
  CHECK(ge.epsilon_rule() == 0);
}

TEST_CASE("loader reports line numbers") {
  try {
    load_grammar("axioms E ;\nE -> ( a ;\n");
    FAIL("expected a format error");
  } catch (const GrammarFormatError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("set member cross product count") {
  // {A B} -> x {A B} y gives 2 lhs × 2 members = 4 rules, plus z per lhs
  Copg s = load_grammar("axioms A B ;\n{ A B } -> x { A B } y | z ;\n");
  int xy = 0, z = 0;
  for (const auto& r : s.rules) {
    if (r.rhs.size() == 3) ++xy;
    if (r.rhs.size() == 1) ++z;
  }
  CHECK(xy == 4);
  CHECK(z == 2);
  CHECK(s.rules.size() == 6);
}

TEST_CASE("writer round trip") {
  for (const Copg& g : {fx::arith(), fx::arith_cyclic(), fx::sum_paren()}) {
    Copg back = load_grammar(write_grammar(g));
    CHECK(back.axioms == g.axioms);
    REQUIRE(back.rules.size() == g.rules.size());
    CHECK(enumerate_language(back, 4) == enumerate_language(g, 4));
  }
}
