#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "copg/chain.hpp"
#include "copg/grammar.hpp"
#include "copg/parser.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace copg;

namespace {

TreePtr leaf(const std::string& t) { return SyntaxTree::make_leaf(t); }
TreePtr node(std::vector<TreePtr> kids) { return SyntaxTree::make_node(std::move(kids)); }
TreePtr lnode(const std::string& l, std::vector<TreePtr> kids) {
  return SyntaxTree::make_node(std::move(kids), l);
}

}  // namespace

TEST_CASE("annotation of the plus/times example") {
  Opm m = fx::arith_matrix();
  auto a = annotate(m, fx::tok("n+n×n+n"));
  CHECK(a.format() == "# ⋖ n ⋗ + ⋖ n ⋗ × ⋖ n ⋗ + ⋖ n ⋗ #");

  try {
    annotate(m, fx::tok("nn"));
    FAIL("expected a missing relation");
  } catch (const NoRelationError& e) {
    CHECK(e.a == "n");
    CHECK(e.b == "n");
    CHECK(e.position == 2);
  }

  CHECK(annotate(m, {}).format() == "# ⩵ #");
}

TEST_CASE("matrix-driven parsing of the plus/times example") {
  Opm m = fx::arith_matrix();
  TreePtr t = parse_opm(m, fx::tok("n+n×n+n"));
  TreePtr expected = node({node({node({leaf("n")}), leaf("+"),
                                 node({node({leaf("n")}), leaf("×"), node({leaf("n")})})}),
                           leaf("+"), node({leaf("n")})});
  CHECK(tree_equal(t, expected));
  CHECK(frontier(t) == fx::tok("n+n×n+n"));
}

TEST_CASE("flat node under the cyclic matrix") {
  Opm m = fx::arith_cyclic_matrix();
  TreePtr t = parse_opm(m, fx::tok("n+n+n"));
  TreePtr expected = node({node({leaf("n")}), leaf("+"), node({leaf("n")}), leaf("+"),
                           node({leaf("n")})});
  CHECK(tree_equal(t, expected));
}

TEST_CASE("plus-only words associate to the left") {
  Opm m = fx::arith_matrix();
  TreePtr t = parse_opm(m, fx::tok("+++"));
  TreePtr expected = node({node({node({leaf("+")}), leaf("+")}), leaf("+")});
  CHECK(tree_equal(t, expected));
}

TEST_CASE("parse failures") {
  Opm m = fx::arith_matrix();
  CHECK_THROWS_AS(parse_opm(m, fx::tok("nn")), NoRelationError);
  CHECK_FALSE(is_compatible(m, fx::tok("nn")));
  CHECK(is_compatible(m, fx::tok("n+n×n+n")));
  CHECK(is_compatible(m, {}));  // the empty word, by convention
  TreePtr empty = parse_opm(m, {});
  CHECK(empty->children.empty());
  CHECK_FALSE(empty->leaf);
}

TEST_CASE("labeled parsing of the plus/times grammar") {
  TreePtr t = parse_labeled(fx::arith(), fx::tok("n+n"));
  TreePtr expected = lnode("E", {lnode("E", {leaf("n")}), leaf("+"), lnode("T", {leaf("n")})});
  CHECK(tree_equal(t, expected));
  CHECK(to_sexpr(t) == "(E (E n) + (T n))");
}

TEST_CASE("labeled parsing reproduces the published cyclic-grammar tree") {
  Copg g = fx::arith_cyclic();
  TreePtr t = parse_labeled(g, fx::tok("n-n-n×n+n+n×n/n×n+⦇n+n⦈/n+n+n"));
  REQUIRE(t);
  CHECK(t->label == "P");
  REQUIRE(t->children.size() == 11);
  CHECK(to_sexpr(t) ==
        "(P (T (M (M n) - (N n)) - (N (F n) × (F n))) + (T n) + "
        "(T (F n) × (F (D n) / (E n)) × (F n)) + "
        "(T (D ⦇ (P (T n) + (T n)) ⦈) / (E n)) + (T n) + (T n))");
}

TEST_CASE("labeled parsing rejects foreign symbols and non-sentences") {
  Copg g;
  g.terminals = {"a"};
  g.nonterminals = {"A"};
  g.axioms = {"A"};
  g.rules = {{"A", {rterm("a")}}};
  CHECK_THROWS_AS(parse_labeled(g, fx::tok("b")), ParseError);

  // a parse that only works with a non-axiom root
  Copg h = fx::arith();
  h.axioms = {"F"};  // only F → n is axiomatic now
  CHECK_THROWS_AS(parse_labeled(h, fx::tok("n+n")), RootNotAxiomError);
}

TEST_CASE("labels erase to the matrix parse") {
  Copg g = fx::arith();
  Opm m = compute_opm(g);
  for (const auto& w : enumerate_language(g, 5)) {
    TreePtr labeled = parse_labeled(g, w);
    TreePtr anon = parse_opm(m, w);
    CHECK(tree_equal(erase_labels(labeled), anon));
  }
}

TEST_CASE("every enumerated sentence parses with labels") {
  for (const Copg& g : {fx::arith_cyclic(), fx::sum_paren()}) {
    for (const auto& w : enumerate_language(g, 5)) {
      TreePtr t = parse_labeled(g, w);
      REQUIRE(t);
      CHECK(frontier(t) == w);
    }
  }
}

TEST_CASE("single-pass parse equals the naive rescan oracle") {
  for (auto [mat, seed] :
       {std::pair{fx::arith_matrix(), 11u}, std::pair{fx::arith_cyclic_matrix(), 12u}}) {
    oracle::CompatibleGen gen(mat, seed);
    int done = 0;
    for (int i = 0; i < 60; ++i) {
      auto w = gen.word(14);
      if (!w) continue;
      ++done;
      auto expect = oracle::rescan_parse(mat, *w);
      REQUIRE(expect.has_value());
      CHECK(tree_equal(parse_opm(mat, *w), *expect));
      CHECK(frontier(parse_opm(mat, *w)) == *w);
    }
    CHECK(done > 20);
  }
}

TEST_CASE("incompatible words fail both routes") {
  Opm m = fx::arith_matrix();
  std::mt19937 rng(3);
  std::vector<std::string> alpha = m.alphabet();
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> w;
    std::size_t len = 1 + rng() % 6;
    for (std::size_t j = 0; j < len; ++j) w.push_back(alpha[rng() % alpha.size()]);
    bool fast = is_compatible(m, w);
    bool slow = oracle::rescan_parse(m, w).has_value();
    CHECK(fast == slow);
    if (fast) CHECK(tree_equal(parse_opm(m, w), *oracle::rescan_parse(m, w)));
  }
}

TEST_CASE("chain decomposition and depth") {
  Opm m2 = fx::arith_matrix();
  Opm m4 = fx::arith_cyclic_matrix();

  // single terminal: a simple chain of depth 1
  Chain single = chain_decompose(m2, fx::tok("n"));
  CHECK(single.simple());
  CHECK(single.spine == std::vector<std::string>{"n"});
  CHECK(chain_depth(single) == 1);

  // flat sum: three simple chains under one composed chain
  Chain flat = chain_decompose(m4, fx::tok("n+n+n"));
  CHECK(chain_depth(flat) == 2);
  CHECK(flat.spine == std::vector<std::string>{"+", "+"});

  // the plus/times example; the recursive depth formula yields 4 here
  Chain deep = chain_decompose(m2, fx::tok("n+n×n+n"));
  CHECK(deep.spine == std::vector<std::string>{"+"});
  CHECK(chain_depth(deep) == 4);

  CHECK_THROWS_AS(chain_decompose(m2, {}), std::invalid_argument);
}

TEST_CASE("chains validate and invert") {
  for (auto [mat, seed] :
       {std::pair{fx::arith_matrix(), 21u}, std::pair{fx::arith_cyclic_matrix(), 22u}}) {
    oracle::CompatibleGen gen(mat, seed);
    for (int i = 0; i < 40; ++i) {
      auto w = gen.word(12);
      if (!w) continue;
      Chain c = chain_decompose(mat, *w);
      CHECK(chain_valid(mat, c));
      CHECK(c.body() == *w);
      CHECK(tree_equal(chain_to_tree(c), parse_opm(mat, *w)));
      // and back again
      Chain c2 = chain_decompose(mat, c.body());
      CHECK(chain_equal(c, c2));
    }
  }
}

TEST_CASE("parse is deterministic across repeated calls") {
  Opm m = fx::arith_cyclic_matrix();
  auto w = fx::tok("n+n×n-n/n+n");
  TreePtr a = parse_opm(m, w);
  TreePtr b = parse_opm(m, w);
  CHECK(tree_equal(a, b));
}

TEST_CASE("tree serialization round trip") {
  Opm m = fx::arith_matrix();
  TreePtr t = parse_opm(m, fx::tok("n+n×n+n"));
  CHECK(tree_equal(tree_from_json(tree_to_json(t)), t));
  TreePtr l = parse_labeled(fx::arith(), fx::tok("n+n"));
  auto j = tree_to_json(l);
  CHECK(j["nt"] == "E");
  CHECK(tree_equal(tree_from_json(j), l));
  // anonymized nodes serialize with a null label
  CHECK(tree_to_json(t)["nt"].is_null());
}
