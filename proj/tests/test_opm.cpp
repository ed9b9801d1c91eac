#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "copg/grammar.hpp"
#include "copg/opm.hpp"
#include "fixtures.hpp"

using namespace copg;

TEST_CASE("lookup on the plus/times matrix") {
  Opm m = fx::arith_matrix();
  CHECK(m.lookup("+", "×") == PrecRel::Yields);
  CHECK(m.lookup("×", "+") == PrecRel::Takes);
  CHECK(m.lookup("n", "n") == std::nullopt);
  CHECK(m.lookup("#", "n") == PrecRel::Yields);
  CHECK_THROWS_AS(m.lookup("z", "n"), std::domain_error);
  // no symmetry: the two orders of the same pair differ
  CHECK(m.lookup("+", "n") == PrecRel::Yields);
  CHECK(m.lookup("n", "+") == PrecRel::Takes);
}

TEST_CASE("the (#,#) cell is forced to equals") {
  Opm m({"a"});
  CHECK_THROWS_AS(m.add("#", "#", PrecRel::Yields), std::invalid_argument);
  m.add("#", "#", PrecRel::Equals);
  CHECK(m.lookup("#", "#") == PrecRel::Equals);
}

TEST_CASE("conflict detection") {
  Opm m = fx::arith_matrix();
  CHECK(m.conflict_free());
  CHECK(fx::arith_cyclic_matrix().conflict_free());

  Opm c({"+"});
  c.add("+", "+", PrecRel::Takes);
  c.add("+", "+", PrecRel::Equals);
  CHECK_FALSE(c.conflict_free());
  auto confl = c.conflicts();
  REQUIRE(confl.size() == 1);
  CHECK(confl[0].a == "+");
  CHECK(confl[0].b == "+");
  CHECK(confl[0].rels.size() == 2);
  CHECK_THROWS_AS(c.lookup("+", "+"), std::logic_error);
}

TEST_CASE("totality") {
  CHECK_FALSE(fx::arith_matrix().is_total());         // (n,n) empty
  CHECK_FALSE(fx::arith_cyclic_matrix().is_total());  // (⦇,#) empty
  Opm t({"a"});
  t.add("a", "a", PrecRel::Equals);
  t.add("a", "#", PrecRel::Takes);
  t.add("#", "a", PrecRel::Yields);
  t.add("#", "#", PrecRel::Equals);
  CHECK(t.is_total());
}

TEST_CASE("equals-cycles") {
  CHECK(fx::arith_matrix().eq_acyclic());
  auto cyc = fx::arith_cyclic_matrix().eq_cycle();
  REQUIRE(cyc.has_value());
  CHECK(cyc->size() == 2);
  CHECK(cyc->front() == cyc->back());  // self-loop witness a ⩵ a

  Opm two({"a", "b"});
  two.add("a", "b", PrecRel::Equals);
  two.add("b", "a", PrecRel::Equals);
  auto w = two.eq_cycle();
  REQUIRE(w.has_value());
  CHECK(w->size() == 3);
  CHECK(w->front() == w->back());

  // a self-loop anywhere makes the matrix cyclic
  Opm loop({"a", "b"});
  loop.add("a", "a", PrecRel::Equals);
  CHECK_FALSE(loop.eq_acyclic());

  // the delimiter row/column never counts
  Opm d({"a"});
  d.add("#", "#", PrecRel::Equals);
  CHECK(d.eq_acyclic());
}

TEST_CASE("union and compatibility") {
  Opm m = fx::arith_matrix();
  CHECK(Opm::unite(m, m).same_cells(m));  // idempotent
  CHECK(Opm::compatible(m, m));

  // the paren-expression matrix restricted to the plus/times alphabet agrees
  Opm paren = fx::paren_expr_opa().opm;
  Opm restricted({"+", "×", "n"});
  for (const auto& a : std::vector<std::string>{"+", "×", "n", "#"})
    for (const auto& b : std::vector<std::string>{"+", "×", "n", "#"})
      for (PrecRel r : paren.cell(a, b)) restricted.add(a, b, r);
  CHECK(Opm::compatible(m, restricted));
  CHECK(restricted.same_cells(m));

  Opm bad({"+", "×"});
  bad.add("+", "×", PrecRel::Takes);
  CHECK_FALSE(Opm::compatible(m, bad));
}

TEST_CASE("union is associative, commutative, idempotent") {
  std::mt19937 rng(7);
  std::vector<std::string> alpha{"a", "b", "c"};
  auto random_matrix = [&] {
    Opm m(alpha);
    std::uniform_int_distribution<int> pick(0, 3);
    for (const auto& a : alpha)
      for (const auto& b : alpha) {
        int r = pick(rng);
        if (r < 3) m.add(a, b, static_cast<PrecRel>(r));
      }
    return m;
  };
  for (int i = 0; i < 50; ++i) {
    Opm x = random_matrix(), y = random_matrix(), z = random_matrix();
    CHECK(Opm::unite(x, y).same_cells(Opm::unite(y, x)));
    CHECK(Opm::unite(Opm::unite(x, y), z).same_cells(Opm::unite(x, Opm::unite(y, z))));
    CHECK(Opm::unite(x, x).same_cells(x));
  }
}

TEST_CASE("json round trip and table form") {
  Opm m = fx::arith_cyclic_matrix();
  Opm back = Opm::from_json(m.to_json());
  CHECK(back.same_cells(m));
  CHECK(fx::load_opm("arith.opm.json").same_cells(fx::arith_matrix()));
  CHECK(fx::load_opm("arith_cyclic.opm.json").same_cells(m));
  std::string table = m.to_table();
  CHECK(table.find("⋖") != std::string::npos);
  CHECK(table.find("⩵") != std::string::npos);
}
