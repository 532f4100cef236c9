#include "doctest.h"
#include "oracles.hpp"
#include "twobundle/error.hpp"
#include "twobundle/bundle.hpp"
#include "twobundle/constructions.hpp"
#include "twobundle/examples.hpp"

using namespace twobundle;

namespace {

StructurePtr share(TwoCategory c) { return std::make_shared<const TwoCategory>(std::move(c)); }

// Alternating sum of the triangle labels of a cyclic-gerbe bundle over the boundary of a tetrahedron.
std::uint32_t sphere_class(const Bundle& b, std::uint32_t n) {
  auto a = [&](int i, int j, int k) { return b.triangle(i, j, k).value; };
  return (a(1, 2, 3) + n - a(0, 2, 3) + a(0, 1, 3) + n - a(0, 1, 2)) % n;
}

bool simplicial_map_complete(const SimplicialMap& m) {
  for (const auto& level : m.images)
    for (auto z : level)
      if (z == kAbsent) return false;
  return true;
}

}  // namespace

TEST_SUITE("bundle") {
  TEST_CASE("trivial bundles are valid") {
    for (auto s : {share(cyclic_gerbe(3)), share(delooping(symmetric_group(3))), share(two_group(2, 2, true))}) {
      for (const auto& base : {point_complex(), simplex_complex(3), simplex_boundary(3), circle_complex(4)}) {
        auto b = trivial_bundle(s, base, ObjectId{0});
        CHECK(validate_bundle(b).ok());
      }
    }
  }

  TEST_CASE("coboundaries pass and a perturbation fails at one tetrahedron") {
    auto s = share(cyclic_gerbe(3));
    auto tetra = simplex_complex(3);
    auto b = trivial_bundle(s, tetra, ObjectId{0});
    // delta of the 1-cochain c with c01 = 1: (delta c)_{abc} = c_bc - c_ac + c_ab
    for (std::size_t t = 0; t < tetra.count(2); ++t) {
      const auto& tri = tetra.simplices(2)[t];
      auto c = [&](int x, int y) { return x == 0 && y == 1 ? 1u : 0u; };
      b.phi[t] = TwoCellId{(c(tri[1], tri[2]) + 3 - c(tri[0], tri[2]) + c(tri[0], tri[1])) % 3};
    }
    CHECK(validate_bundle(b).ok());
    b.phi[0] = TwoCellId{(b.phi[0].value + 1) % 3};
    auto rep = validate_bundle(b);
    CHECK(rep.total == 1);
    REQUIRE(rep.contains("tetrahedron"));
    CHECK(rep.violations[0].witness.find("0<1<2<3") != std::string::npos);

    auto wrong = b;
    wrong.phi.pop_back();
    CHECK_THROWS_AS(validate_bundle(wrong), Error);
  }

  TEST_CASE("bundles and simplicial maps") {
    auto s = share(cyclic_gerbe(2));
    auto tetra = simplex_complex(3);
    auto cech = ordered_simplicial_set(tetra, 3);
    auto nerve = duskin_nerve(*s, 3);
    auto b = trivial_bundle(s, tetra, ObjectId{0});
    std::size_t valid = 0;
    oracle::for_each_tuple(tetra.count(2), 2, [&](const std::vector<std::size_t>& t) {
      for (std::size_t i = 0; i < t.size(); ++i) b.phi[i] = TwoCellId{static_cast<std::uint32_t>(t[i])};
      auto m = bundle_to_simplicial_map(b, cech, nerve);
      bool is_map = simplicial_map_complete(m) && validate_simplicial_map(cech.sset, nerve.sset(), m).ok();
      CHECK(is_map == validate_bundle(b).ok());
      if (is_map) {
        ++valid;
        CHECK(simplicial_map_to_bundle(m, cech, nerve, tetra, s) == b);
      }
    });
    CHECK(valid == 8);

    // degenerate sequences use identities
    auto z3 = share(delooping(cyclic_group(3)));
    auto tb = trivial_bundle(z3, tetra, ObjectId{0});
    auto deg = bundle_simplex(tb, {0, 0, 1});
    CHECK(z3->is_identity(deg.edge(0, 1)));
  }

  TEST_CASE("pullback") {
    auto z3 = share(delooping(cyclic_group(3)));
    auto c3 = circle_complex(3);
    auto bundles = enumerate_bundles(z3, c3);
    CHECK(bundles.size() == 27);
    for (const auto& b : bundles) CHECK(pullback(b, identity_map(c3)) == b);

    auto c6 = CombinatorialBase::from_simplices({0, 1, 2, 3, 4, 5}, {{0, 2}, {2, 4}, {1, 4}, {1, 3}, {3, 5}, {0, 5}});
    BaseMap wrap{c6, c3, {0, 0, 1, 1, 2, 2}};
    check_base_map(wrap);
    for (const auto& b : bundles) {
      auto holonomy = (b.edge(0, 1).value + b.edge(1, 2).value + 3 - b.edge(0, 2).value) % 3;
      auto p = pullback(b, wrap);
      CHECK(validate_bundle(p).ok());
      // the cycle 0-2-4-1-3-5-0 runs twice around the triangle
      auto around = (p.edge(0, 2).value + p.edge(2, 4).value + 3 - p.edge(1, 4).value + p.edge(1, 3).value +
                     p.edge(3, 5).value + 3 - p.edge(0, 5).value) % 3;
      CHECK(around == (2 * holonomy) % 3);
    }

    auto pt = CombinatorialBase::from_simplices({7}, {{7}});
    for (int v = 0; v < 3; ++v) {
      auto p = pullback(bundles[5], BaseMap{pt, c3, {v}});
      CHECK(p.V.size() == 1);
      CHECK(p.V[0] == bundles[5].V[v]);
    }
    CHECK_THROWS_AS(pullback(bundles[0], BaseMap{c6, c6, {0, 0, 1, 1, 2, 2}}), Error);
  }

  TEST_CASE("restriction") {
    auto s = share(cyclic_gerbe(2));
    auto sphere = simplex_boundary(3);
    auto north = CombinatorialBase::from_simplices(sphere.labels(), {{0, 1, 2}, {0, 2, 3}});
    for (const auto& b : enumerate_bundles(s, sphere)) {
      auto r = restrict_bundle(b, north);
      CHECK(r.triangle(0, 1, 2) == b.triangle(0, 1, 2));
      CHECK(r.triangle(0, 2, 3) == b.triangle(0, 2, 3));
    }
    auto other = CombinatorialBase::from_simplices({0, 9}, {{0, 9}});
    CHECK_THROWS_AS(restrict_bundle(trivial_bundle(s, sphere, ObjectId{0}), other), Error);
  }

  TEST_CASE("gluing") {
    auto s = share(cyclic_gerbe(2));
    auto sphere = simplex_boundary(3);
    auto north = CombinatorialBase::from_simplices(sphere.labels(), {{0, 1, 2}, {0, 2, 3}});
    auto south = CombinatorialBase::from_simplices(sphere.labels(), {{0, 1, 3}, {1, 2, 3}});
    auto equator = CombinatorialBase::from_simplices(sphere.labels(), {{0, 1}, {1, 2}, {2, 3}, {0, 3}});

    auto tn = trivial_bundle(s, north, ObjectId{0}), ts = trivial_bundle(s, south, ObjectId{0});
    auto glued = glue(tn, ts, inclusion(equator, south));
    CHECK(glued.base == sphere);
    CHECK(glued == trivial_bundle(s, sphere, ObjectId{0}));

    auto twisted = tn;
    twisted.phi[*north.index_of({0, 1, 2})] = TwoCellId{1};
    auto g = glue(twisted, ts, inclusion(equator, south));
    CHECK(validate_bundle(g).ok());
    CHECK(sphere_class(g, 2) == 1);
    CHECK(sphere_class(glued, 2) == 0);

    // E_01 differs on the shared edge
    auto z2 = share(delooping(cyclic_group(2)));
    auto zn = enumerate_bundles(z2, north);
    auto zs = trivial_bundle(z2, south, ObjectId{0});
    auto it = std::find_if(zn.begin(), zn.end(), [](const Bundle& b) { return b.edge(0, 1).value == 1; });
    REQUIRE(it != zn.end());
    try {
      glue(*it, zs, inclusion(equator, south));
      FAIL("expected MismatchOnA");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::mismatch_on_a);
    }

    // attaching the endpoints of one edge crosswise to another reverses the order
    auto x = CombinatorialBase::from_simplices({10, 11}, {{10, 11}});
    auto b = CombinatorialBase::from_simplices({0, 1}, {{0, 1}});
    auto ends = CombinatorialBase::from_simplices({10, 11}, {{10}, {11}});
    try {
      glue(trivial_bundle(s, x, ObjectId{0}), trivial_bundle(s, b, ObjectId{0}), BaseMap{ends, b, {1, 0}});
      FAIL("expected OrderConflict");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::order_conflict);
    }
  }

  TEST_CASE("enumeration") {
    CHECK(enumerate_bundles(share(cyclic_gerbe(2)), simplex_boundary(3)).size() == 16);
    CHECK(enumerate_bundles(share(cyclic_gerbe(2)), simplex_complex(3)).size() == 8);
    CHECK(enumerate_bundles(share(delooping(trivial_group())), circle_complex(4)).size() == 1);
    auto s3 = share(delooping(symmetric_group(3)));
    CHECK(enumerate_bundles(s3, point_complex()).size() == 1);
    // over an edge: one bundle per 1-cell
    CHECK(enumerate_bundles(s3, simplex_complex(1)).size() == 6);
    // over a triangle E_02 is forced
    CHECK(enumerate_bundles(s3, simplex_complex(2)).size() == 36);
    for (const auto& b : enumerate_bundles(share(two_group(2, 2, true)), simplex_complex(2))) CHECK(validate_bundle(b).ok());
    CHECK_THROWS_AS(enumerate_bundles(share(cyclic_gerbe(5)), simplex_boundary(3), 10), Error);
  }

  TEST_CASE("concordance") {
    auto s = share(cyclic_gerbe(2));
    auto sphere = simplex_boundary(3);
    auto all = enumerate_bundles(s, sphere);
    auto trivial = trivial_bundle(s, sphere, ObjectId{0});
    for (const auto& b : all) {
      auto c = elementary_concordant(trivial, b);
      CHECK(c.has_value() == (sphere_class(b, 2) == 0));
      if (c) {
        CHECK(validate_bundle(c->bundle).ok());
        CHECK(pullback(c->bundle, c->prism.bottom) == trivial);
        CHECK(pullback(c->bundle, c->prism.top) == b);
      }
    }
    auto classes = concordance_classes(s, sphere);
    CHECK(classes.count() == 2);
    for (std::size_t i = 0; i < classes.bundles.size(); ++i) {
      bool same_class = classes.class_of[i] == classes.class_of[0];
      bool same_sum = sphere_class(classes.bundles[i], 2) == sphere_class(classes.bundles[0], 2);
      CHECK(same_class == same_sum);
    }
    CHECK(concordance_classes(share(delooping(cyclic_group(2))), circle_complex(3)).count() == 2);
    CHECK(concordance_classes(share(delooping(symmetric_group(3))), point_complex()).count() == 1);
    // conjugacy classes of S3
    CHECK(concordance_classes(share(delooping(symmetric_group(3))), circle_complex(3)).count() == 3);
  }

  TEST_CASE("classes over 2B match the product of deloopings") {
    // the homology blocks split each cocycle into two ordinary ones
    for (std::uint32_t p : {2u, 3u}) {
      BCOptions o;
      o.variant = BCVariant::weak;
      o.b1 = 1;
      o.b0 = 1;
      o.p = p;
      o.dim_b_bound = p == 2 ? 1 : 0;
      auto b = build_2B(o);
      auto product = share(delooping(product_monoid(general_linear_group(1, p), general_linear_group(1, p))));
      auto bc = share(b.cat);
      for (const auto& k : {point_complex(), circle_complex(3)})
        CHECK(concordance_classes(bc, k).count() == concordance_classes(product, k).count());
    }
  }

  TEST_CASE("the free 2-category on a simplex") {
    auto f2 = free_two_category_2XU(simplex_complex(2));
    auto from_to = [](const FreeTwoCategory& f, int a, int b) {
      std::vector<OneCellId> out;
      for (std::uint32_t z = 0; z < f.cat.one_cell_count(); ++z) {
        OneCellId c{z};
        if (f.cat.source(c) == ObjectId{static_cast<std::uint32_t>(a)} && f.cat.target(c) == ObjectId{static_cast<std::uint32_t>(b)})
          out.push_back(c);
      }
      return out;
    };
    auto cells = from_to(f2, 0, 2);
    CHECK(cells.size() == 2);
    CHECK(from_to(free_two_category_2XU(simplex_complex(3)), 0, 3).size() == 5);
    CHECK(validate_bicategory(f2.cat).ok());
    // exactly one 2-cell x_02 => x_12 * x_01
    OneCellId x01 = f2.generators[0], x02 = f2.generators[1], x12 = f2.generators[2];
    auto composite = f2.cat.compose(x12, x01);
    CHECK(f2.cat.two_cells_between(x02, composite).size() == 1);
    CHECK(f2.cat.two_cells_between(composite, x02).empty());
  }

  TEST_CASE("bundles give strict functors") {
    auto s = share(cyclic_gerbe(3));
    for (const auto& b : enumerate_bundles(s, simplex_complex(3))) {
      auto d = bundle_to_strict_functor(b);
      CHECK(d.tetrahedra_checked == 1);
      CHECK(d.generator_two_cells == b.phi);
    }
    auto bad = trivial_bundle(s, simplex_complex(3), ObjectId{0});
    bad.phi[0] = TwoCellId{1};
    try {
      bundle_to_strict_functor(bad);
      FAIL("expected CoherenceFailure");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::coherence_failure);
    }
  }
}
