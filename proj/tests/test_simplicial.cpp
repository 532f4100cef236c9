#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "twobundle/error.hpp"
#include "twobundle/complex.hpp"
#include "twobundle/constructions.hpp"
#include "twobundle/nerve.hpp"
#include "twobundle/simplicial.hpp"

using namespace twobundle;

namespace {

std::vector<int> all_indices(int n) {
  std::vector<int> v;
  for (int i = 0; i <= n; ++i) v.push_back(i);
  return v;
}

}  // namespace

TEST_SUITE("simplicial") {
  TEST_CASE("simplicial identities") {
    CHECK(validate_ssets(standard_simplex(2, 3)).ok());
    CHECK(validate_ssets(FinSimplicialSet{}).ok());

    auto t = standard_simplex(1, 2).tables();
    // Corrupt d_1 on one 2-simplex: d_0 d_1 no longer matches d_0 d_0.
    t.faces[2][1][0] = t.faces[2][1][0] == 0 ? 1 : 0;
    auto rep = validate_ssets(FinSimplicialSet(t));
    CHECK_FALSE(rep.ok());
    CHECK(rep.contains("face-face"));

    auto bad = standard_simplex(1, 1).tables();
    bad.faces[1][0][0] = 7;
    CHECK_THROWS_AS(FinSimplicialSet{bad}, Error);
  }

  TEST_CASE("cohorn enumeration") {
    auto d1 = standard_simplex(1, 1);
    CHECK(cohorns(d1, 1, {0}).size() == 2);
    auto z2 = duskin_nerve(delooping(cyclic_group(2)), 3);
    CHECK(cohorns(z2.sset(), 2, {0, 2}).size() == 4);
    CHECK_THROWS_AS(cohorns(d1, 2, {0}), Error);
    CHECK_THROWS_AS(cohorns(d1, 1, {0, 1}), Error);
    for (const auto& c : cohorns(z2.sset(), 3, {0, 1, 3})) CHECK(is_compatible(z2.sset(), c));
  }

  TEST_CASE("restriction forgets entries in either order") {
    auto x = duskin_nerve(cyclic_gerbe(2), 3).sset();
    for (const auto& c : cohorns(x, 3, {0, 1, 2})) {
      auto a = cohorn_restrict(cohorn_restrict(c, 0), 2);
      auto b = cohorn_restrict(cohorn_restrict(c, 2), 0);
      CHECK(a == b);
      CHECK(a.indices == std::vector<int>{1});
      CHECK(is_compatible(x, a));
    }
    auto full = cohorn_of(x, 3, 5, all_indices(3));
    CHECK(is_compatible(x, cohorn_restrict(full, 1)));
  }

  TEST_CASE("projection and the pullback square") {
    auto x = duskin_nerve(delooping(cyclic_group(2)), 3).sset();
    const int n = 3;
    // all-degenerate input
    auto deg = cohorn_of(x, n, x.degeneracy(2, 0, x.degeneracy(1, 0, x.degeneracy(0, 0, 0))), {0, 1});
    auto pd = cohorn_project(x, deg, 3);
    for (auto e : pd.entries) CHECK(e == x.degeneracy(0, 0, 0));

    for (const std::vector<int>& I : {std::vector<int>{0, 1}, {0, 2}, {1, 3}, {0, 1, 3}, {2}}) {
      for (int k = 0; k <= n; ++k) {
        if (std::find(I.begin(), I.end(), k) != I.end()) continue;
        std::vector<int> J = I;
        J.push_back(k);
        std::sort(J.begin(), J.end());
        if (static_cast<int>(J.size()) > n) continue;  // J must stay proper
        // left side: J-cohorns; right side: pairs (z, c) over the fiber product
        auto left = cohorns(x, n, J);
        std::size_t right = 0;
        for (const auto& c : cohorns(x, n, I)) {
          auto p = cohorn_project(x, c, k);
          CHECK(is_compatible(x, p));
          for (std::uint32_t z = 0; z < x.size(n - 1); ++z)
            if (cohorn_of(x, n - 1, z, p.indices) == p) ++right;
        }
        CHECK(left.size() == right);
        std::set<std::pair<std::uint32_t, std::vector<std::uint32_t>>> images;
        for (const auto& c : left) {
          auto r = cohorn_restrict(c, k);
          auto z = *c.entry(k);
          auto p = cohorn_project(x, r, k);
          CHECK(cohorn_of(x, n - 1, z, p.indices) == p);
          images.insert({z, r.entries});
        }
        CHECK(images.size() == left.size());
      }
    }
  }

  TEST_CASE("horn fillers") {
    auto z2 = duskin_nerve(delooping(cyclic_group(2)), 3).sset();
    for (int k = 0; k <= 2; ++k)
      for (const auto& h : cohorns(z2, 2, horn_indices(2, k))) CHECK(horn_fillers(z2, h).size() == 1);
    for (std::uint32_t z = 0; z < z2.size(3); ++z) {
      auto fs = horn_fillers(z2, cohorn_of(z2, 3, z, horn_indices(3, 1)));
      CHECK(std::find(fs.begin(), fs.end(), z) != fs.end());
    }
    auto monoid = duskin_nerve(delooping(idempotent_monoid()), 2).sset();
    bool empty_found = false;
    for (const auto& h : cohorns(monoid, 2, horn_indices(2, 0))) empty_found |= horn_fillers(monoid, h).empty();
    CHECK(empty_found);
  }

  TEST_CASE("discrete Kan condition") {
    CHECK(check_discrete_kan(standard_simplex(0, 3), 3).kan);
    auto monoid = check_discrete_kan(duskin_nerve(delooping(idempotent_monoid()), 4).sset(), 4);
    CHECK_FALSE(monoid.kan);
    REQUIRE(monoid.first_failure());
    CHECK(monoid.first_failure()->n == 2);
    CHECK(monoid.first_failure()->k == 0);
    CHECK(check_discrete_kan(duskin_nerve(cyclic_gerbe(3), 4).sset(), 4).kan);
    CHECK_THROWS_AS(check_discrete_kan(standard_simplex(0, 2), 3), Error);
  }

  TEST_CASE("coskeletality") {
    auto cat = nerve_of_category(one_object_category(cyclic_group(2)), 4);
    CHECK(is_coskeletal(cat.sset, 2));
    CHECK_FALSE(is_coskeletal(cat.sset, 1));
    auto gerbe = duskin_nerve(cyclic_gerbe(2), 4).sset();
    CHECK(is_coskeletal(gerbe, 3));
    CHECK(gerbe.size(4) == oracle::boundary_tuple_count(gerbe, 4));
    for (int k : {2, 3}) {
      auto free = free_two_category_2XU(simplex_complex(k));
      auto x = duskin_nerve(free.cat, 4).sset();
      CHECK(is_coskeletal(x, 2));
    }
    CHECK_THROWS_AS(coskeletal_report(gerbe, 4), Error);
  }

  TEST_CASE("prisms") {
    auto p0 = prism(point_complex());
    CHECK(p0.complex.vertex_count() == 2);
    CHECK(p0.complex.dimension() == 1);
    CHECK(p0.complex.count(1) == 1);
    auto p1 = prism(simplex_complex(1));
    CHECK(p1.complex.count(2) == 2);
    CHECK(p1.complex.count(1) == 5);
    auto ps = prism(simplex_boundary(3));
    CHECK(ps.complex.vertex_count() == 8);
    // a k-simplex contributes k + 1 top simplices: 4 triangles x 3
    CHECK(ps.complex.count(3) == 12);
    CHECK(ps.complex.maximal_simplices().size() == 12);
    check_base_map(ps.bottom);
    check_base_map(ps.top);
    check_base_map(ps.projection);
    for (const auto& s : ps.complex.simplices(3)) {
      // monotone in the level order
      CHECK(std::is_sorted(s.begin(), s.end()));
    }
  }

  TEST_CASE("cochain cohomology") {
    CHECK(cochain_cohomology(point_complex(), 2, 0) == 1);
    auto sphere = simplex_boundary(3);
    CHECK(cochain_cohomology(sphere, 2, 0) == 1);
    CHECK(cochain_cohomology(sphere, 2, 1) == 0);
    CHECK(cochain_cohomology(sphere, 2, 2) == 1);
    CHECK(cochain_cohomology(circle_complex(3), 3, 1) == 1);
    for (const auto& k : {sphere, circle_complex(3), simplex_complex(3), circle_complex(4)})
      for (std::uint32_t p : {2u, 3u, 5u}) {
        long alt = 0;
        for (int d = 0; d <= k.dimension(); ++d) {
          auto betti = cochain_cohomology(k, p, d);
          CHECK(oracle::ipow(p, betti) == oracle::cohomology_order(k, p, d));
          alt += (d % 2 ? -1 : 1) * static_cast<long>(betti);
        }
        CHECK(alt == euler_characteristic(k));
      }
  }
}
