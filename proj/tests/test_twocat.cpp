#include "doctest.h"
#include "oracles.hpp"
#include "twobundle/error.hpp"
#include "twobundle/adjoint.hpp"
#include "twobundle/constructions.hpp"
#include "twobundle/two_category.hpp"

using namespace twobundle;

namespace {

// One object, one 1-cell, 2-cells {id, a} composing vertically by the table `v` (v[psi][phi]).
TwoCategory one_cell_category(const std::vector<std::vector<std::uint32_t>>& v) {
  TwoCategory::Builder b;
  auto x = b.add_object();
  auto e = b.add_one_cell(x, x);
  b.set_identity(x, e);
  b.set_compose(e, e, e);
  for (std::uint32_t i = 0; i < v.size(); ++i) b.add_two_cell(e, e);
  b.set_identity(e, TwoCellId{0});
  for (std::uint32_t i = 0; i < v.size(); ++i) {
    b.set_lwhisker(e, TwoCellId{i}, TwoCellId{i});
    b.set_rwhisker(TwoCellId{i}, e, TwoCellId{i});
    for (std::uint32_t j = 0; j < v.size(); ++j) b.set_vcomp(TwoCellId{i}, TwoCellId{j}, TwoCellId{v[i][j]});
  }
  return std::move(b).build();
}

}  // namespace

TEST_SUITE("twocat") {
  TEST_CASE("deloopings and gerbes validate and are strict") {
    auto z2 = delooping(cyclic_group(2));
    CHECK(validate_bicategory(z2).ok());
    CHECK(is_strict(z2));
    CHECK(z2.one_cell_count() == 2);
    CHECK(z2.two_cell_count() == 2);
    auto trivial = delooping(trivial_group());
    CHECK(trivial.object_count() == 1);
    CHECK(trivial.one_cell_count() == 1);
    CHECK(trivial.two_cell_count() == 1);
    auto s3 = delooping(symmetric_group(3));
    CHECK(s3.one_cell_count() == 6);
    CHECK(validate_bicategory(s3).ok());
    for (std::size_t n : {1, 2, 3, 12}) {
      auto g = cyclic_gerbe(n);
      CHECK(g.two_cell_count() == n);
      CHECK(validate_bicategory(g).ok());
      CHECK(is_strict(g));
    }
  }

  TEST_CASE("a non-commutative vertical table breaks interchange") {
    auto good = one_cell_category({{0, 1}, {1, 0}});
    CHECK(validate_bicategory(good).ok());
    // vcomp(1, 0) changed from 1 to 0
    auto bad = one_cell_category({{0, 1}, {0, 0}});
    auto rep = validate_bicategory(bad);
    CHECK_FALSE(rep.ok());
    CHECK(rep.contains("interchange"));
  }

  TEST_CASE("malformed tables are rejected") {
    auto dangling = [] {
      TwoCategory::Builder b;
      auto x = b.add_object();
      b.add_one_cell(x, ObjectId{3});
      return std::move(b).build();
    };
    CHECK_THROWS_AS(dangling(), Error);
    auto no_identity = [] {
      TwoCategory::Builder b;
      b.add_object();
      return std::move(b).build();
    };
    CHECK_THROWS_AS(no_identity(), Error);
    FiniteMonoid m = cyclic_group(3);
    m.table[1] = 2;
    CHECK_THROWS_AS(check_monoid(m), Error);
    CHECK_THROWS_AS(delooping(m), Error);
  }

  TEST_CASE("empty 2-category") {
    auto empty = std::move(TwoCategory::Builder{}).build();
    CHECK(validate_bicategory(empty).ok());
    CHECK(is_two_groupoid(empty));
  }

  TEST_CASE("2-groupoid recognition") {
    CHECK(is_two_groupoid(delooping(cyclic_group(2))));
    CHECK_FALSE(is_two_groupoid(delooping(idempotent_monoid())));
    for (std::size_t n = 1; n <= 8; ++n) CHECK(is_two_groupoid(cyclic_gerbe(n)));
    CHECK(is_two_groupoid(two_group(2, 2, true)));
  }

  TEST_CASE("vertical inverses") {
    auto g5 = cyclic_gerbe(5);
    CHECK(vertical_inverse(g5, TwoCellId{2}) == TwoCellId{3});
    CHECK(vertical_inverse(g5, TwoCellId{0}) == TwoCellId{0});
    for (std::uint32_t a = 0; a < 5; ++a) CHECK(vertical_inverse(g5, vertical_inverse(g5, TwoCellId{a})) == TwoCellId{a});
    // a*a = a vertically: not invertible
    auto idem = one_cell_category({{0, 1}, {1, 1}});
    CHECK(validate_bicategory(idem).ok());
    CHECK_THROWS_AS(vertical_inverse(idem, TwoCellId{1}), Error);
    CHECK_FALSE(is_two_groupoid(idem));
  }

  TEST_CASE("adjoint equivalences") {
    auto z3 = delooping(cyclic_group(3));
    auto id = z3.identity(ObjectId{0});
    auto at_id = find_adjoint_equivalences(z3, id);
    REQUIRE(at_id.size() == 1);
    CHECK(at_id[0].g == id);
    auto adj = find_adjoint_equivalences(z3, OneCellId{1});
    REQUIRE(adj.size() == 1);
    CHECK(adj[0].g == OneCellId{2});
    CHECK(z3.is_identity(adj[0].eta));
    CHECK(z3.is_identity(adj[0].eps));
    CHECK(find_adjoint_equivalences(delooping(idempotent_monoid()), OneCellId{1}).empty());
    // every adjoint equivalence of the twisted 2-group satisfies both zigzags
    auto tg = two_group(2, 2, true);
    for (std::uint32_t f = 0; f < tg.one_cell_count(); ++f)
      for (const auto& a : find_adjoint_equivalences(tg, OneCellId{f})) CHECK(is_adjoint_equivalence(tg, a));
  }

  TEST_CASE("whisker equations have exactly the brute-force solution") {
    auto z2 = delooping(cyclic_group(2));
    auto trivial = *first_adjoint_equivalence(z2, z2.identity(ObjectId{0}));
    auto e = z2.identity(ObjectId{0});
    CHECK(solve_left_whisker(z2, z2.identity(e), trivial, e, e) == z2.identity(e));

    for (std::size_t n : {3, 4}) {
      auto g = cyclic_gerbe(n);
      OneCellId e1{0};
      auto adj = *first_adjoint_equivalence(g, e1);
      for (std::uint32_t a = 0; a < n; ++a) {
        CHECK(solve_left_whisker(g, TwoCellId{a}, adj, e1, e1) == TwoCellId{a});
        CHECK(solve_right_whisker(g, TwoCellId{a}, adj, e1, e1) == TwoCellId{a});
      }
    }

    auto tg = two_group(3, 3, true);
    std::size_t checked = 0;
    for (std::uint32_t fi = 0; fi < tg.one_cell_count(); ++fi) {
      OneCellId f{fi};
      auto adj = *first_adjoint_equivalence(tg, f);
      for (auto hs : tg.one_cells_from(tg.target(f)))
        for (auto ht : tg.one_cells_between(tg.target(f), tg.target(hs)))
          for (auto psi : tg.two_cells_between(tg.compose(hs, f), tg.compose(ht, f))) {
            auto brute = oracle::left_whisker_solutions(tg, psi, f, hs, ht);
            REQUIRE(brute.size() == 1);
            CHECK(solve_left_whisker(tg, psi, adj, hs, ht) == brute[0]);
            ++checked;
          }
    }
    for (std::uint32_t fi = 0; fi < tg.one_cell_count(); ++fi) {
      OneCellId f{fi};
      auto adj = *first_adjoint_equivalence(tg, f);
      for (auto hs : tg.one_cells_to(tg.source(f)))
        for (auto ht : tg.one_cells_between(tg.source(hs), tg.source(f)))
          for (auto psi : tg.two_cells_between(tg.compose(f, hs), tg.compose(f, ht))) {
            auto brute = oracle::right_whisker_solutions(tg, psi, f, hs, ht);
            REQUIRE(brute.size() == 1);
            CHECK(solve_right_whisker(tg, psi, adj, hs, ht) == brute[0]);
            ++checked;
          }
    }
    CHECK(checked > 0);
  }

  TEST_CASE("twisted 2-group is valid but not strict") {
    auto tg = two_group(2, 2, true);
    CHECK(validate_bicategory(tg).ok());
    CHECK(tg.has_explicit_coherence());
    CHECK_FALSE(is_strict(tg));
    CHECK(is_strict(two_group(2, 2, false)));
  }
}
