#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "twobundle/error.hpp"
#include "twobundle/bundle.hpp"
#include "twobundle/constructions.hpp"
#include "twobundle/examples.hpp"

using namespace twobundle;

namespace {

BCOptions weak(std::size_t b1, std::size_t b0, std::uint32_t p, std::size_t bound) {
  BCOptions o;
  o.variant = BCVariant::weak;
  o.b1 = b1;
  o.b0 = b0;
  o.p = p;
  o.dim_b_bound = bound;
  return o;
}

ChainComplex2 random_complex(std::mt19937& rng, std::uint32_t p, std::size_t c1, std::size_t c0) {
  FpMatrix d(p, c0, c1);
  for (std::size_t r = 0; r < c0; ++r)
    for (std::size_t c = 0; c < c1; ++c) d.set(r, c, static_cast<long>(rng() % p));
  return ChainComplex2{p, c1, c0, d};
}

}  // namespace

TEST_SUITE("examples") {
  TEST_CASE("normal form frames") {
    auto nf = normal_form_complex(2, 1, 2, 1);
    CHECK(nf.c1 == 3);
    CHECK(nf.c0 == 3);
    CHECK(nf.d.rank() == 2);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
      const std::uint32_t p = trial % 2 ? 3 : 2;
      auto c = random_complex(rng, p, 1 + rng() % 3, 1 + rng() % 3);
      auto fr = block_frame(c);
      CHECK(fr.dim_b == c.d.rank());
      CHECK(fr.b1 == c.c1 - fr.dim_b);
      CHECK(fr.b0 == c.c0 - fr.dim_b);
      CHECK(fr.s1 * fr.s1_inv == FpMatrix::identity(p, c.c1));
      CHECK(fr.s0 * fr.s0_inv == FpMatrix::identity(p, c.c0));
      CHECK(fr.normal_d() == normal_form_complex(p, fr.b1, fr.dim_b, fr.b0).d);
    }
    auto zero = ChainComplex2{2, 0, 0, FpMatrix(2, 0, 0)};
    CHECK(block_frame(zero).dim_b == 0);
  }

  TEST_CASE("chain map blocks and equivalences") {
    std::mt19937 rng(11);
    std::size_t maps = 0, equivalences = 0;
    for (int trial = 0; trial < 6; ++trial) {
      auto c = random_complex(rng, 2, 2, 1 + trial % 2);
      auto c2 = random_complex(rng, 2, 1 + trial % 2, 2);
      auto fc = block_frame(c), fc2 = block_frame(c2);
      for (const auto& [f1, f0] : oracle::chain_maps(c.d, c2.d)) {
        ChainMap f{c, c2, f1, f0};
        REQUIRE(is_chain_map(f));
        auto blocks = chain_map_blocks(f, fc, fc2);
        auto back = reassemble(blocks, fc, fc2);
        CHECK(back.f1 == f.f1);
        CHECK(back.f0 == f.f0);
        bool eq = blocks.is_equivalence();
        CHECK(eq == oracle::has_homotopy_inverse(f.f1, f.f0, c.d, c2.d));
        ++maps;
        equivalences += eq;
      }
    }
    CHECK(maps > 0);
    auto c = normal_form_complex(2, 1, 1, 1);
    auto fr = block_frame(c);
    ChainMap broken{c, c, FpMatrix::identity(2, 2), FpMatrix(2, 2, 2)};
    CHECK_THROWS_AS(chain_map_blocks(broken, fr, fr), Error);
  }

  TEST_CASE("homotopies") {
    auto c = normal_form_complex(2, 1, 1, 1);
    auto id = identity_chain_map(c);
    // phi: C_0 -> C_1 with phi d = 0 and d phi = 0
    auto hs = all_homotopies(id, id);
    CHECK(hs.size() == 2);
    for (const auto& h : hs) CHECK(is_chain_homotopy({id, id, h}));
    auto fr = block_frame(c);
    for (const auto& h : hs) {
      auto blocks = homotopy_blocks(h, fr, fr);
      CHECK(blocks.b_h1.is_zero());
      CHECK(blocks.b_b.is_zero());
      CHECK(blocks.h0_b.is_zero());
    }
  }

  TEST_CASE("2B instances") {
    auto trivial = build_2B(weak(0, 0, 2, 1));
    CHECK(validate_bicategory(trivial.cat).ok());
    CHECK(trivial.cat.object_count() == 2);

    auto small = build_2B(weak(1, 1, 2, 0));
    CHECK(small.cat.object_count() == 1);
    CHECK(small.cat.one_cell_count() == 1);
    // homotopies H_0 -> H_1 are free: p^(b1 b0)
    CHECK(small.cat.two_cell_count() == 2);
    CHECK(validate_bicategory(small.cat).ok());
    auto three = build_2B(weak(1, 1, 3, 0));
    CHECK(three.cat.one_cell_count() == 4);
    CHECK(three.cat.two_cell_count() == 4 * 3);

    auto b = build_2B(weak(1, 1, 2, 1));
    CHECK(b.cat.object_count() == 2);
    CHECK(b.cat.one_cell_count() == 13);
    CHECK(b.cat.two_cell_count() == 146);
    CHECK(validate_bicategory(b.cat).ok());
    CHECK(is_strict(b.cat));

    BCOptions eq = weak(1, 0, 2, 1);
    eq.variant = BCVariant::eq;
    auto ad_o = eq;
    ad_o.variant = BCVariant::ad;
    auto e = build_2B(eq), a = build_2B(ad_o);
    CHECK(a.one_cells.size() <= e.one_cells.size());
    for (const auto& cell : a.one_cells) CHECK(e.find_one_cell(cell).has_value());
    CHECK(validate_bicategory(a.cat).ok());

    BCOptions strict = weak(1, 1, 2, 1);
    strict.variant = BCVariant::strict;
    auto s = build_2B(strict);
    for (const auto& f : s.one_cells) CHECK(s.dim_b[f.source] == s.dim_b[f.target]);

    auto limited = weak(1, 1, 2, 1);
    limited.cell_bound = 10;
    CHECK_THROWS_AS(build_2B(limited), Error);
  }

  TEST_CASE("the literal epsilon rule") {
    BCOptions o = weak(1, 1, 2, 1);
    o.variant = BCVariant::eq;
    o.literal_epsilon = true;
    try {
      build_2B(o);
      FAIL("expected an error for the multi-object scope");
    } catch (const Error& err) {
      CHECK(err.code() == Errc::index_mismatch);
    }
    o.scope = BCScope::single;
    try {
      build_2B(o);
      FAIL("expected CoherenceFailure");
    } catch (const Error& err) {
      CHECK(err.code() == Errc::coherence_failure);
    }
  }

  TEST_CASE("the homotopy quotient") {
    for (auto [b1, b0] : {std::pair<std::size_t, std::size_t>{1, 0}, {0, 1}}) {
      auto b = build_2B(weak(b1, b0, 2, 1));
      auto ho = quotient_to_Ho(b);
      CHECK(ho.well_defined());
      CHECK(ho.cat.two_cell_count() == b.cat.two_cell_count());
    }
    auto small = build_2B(weak(1, 1, 2, 0));
    auto hs = quotient_to_Ho(small);
    CHECK(hs.cat.two_cell_count() == 1);
    CHECK(hs.members[0].size() == 2);
    CHECK(validate_bicategory(hs.cat).ok());

    auto b = build_2B(weak(1, 1, 2, 1));
    auto ho = quotient_to_Ho(b);
    CHECK(ho.well_defined());
    CHECK(ho.cat.two_cell_count() == 73);
    for (const auto& m : ho.members) CHECK(m.size() == 2);
    CHECK(validate_bicategory(ho.cat).ok());
  }

  TEST_CASE("the homology functor") {
    auto count = [](BCOptions o) { return homology_functor(build_2B(o)).elements; };
    CHECK(count(weak(1, 1, 2, 0)) == 1);
    CHECK(count(weak(1, 1, 3, 0)) == 4);
    CHECK(count(weak(2, 0, 2, 0)) == oracle::invertible_matrix_count(2, 2));
    CHECK(count(weak(2, 0, 2, 0)) == 6);
    auto h = homology_functor(build_2B(weak(1, 1, 3, 1)));
    CHECK(h.ok());
    BCOptions single = weak(1, 1, 2, 1);
    single.scope = BCScope::single;
    CHECK_THROWS_AS(homology_functor(build_2B(single)), Error);
  }

  TEST_CASE("sigma") {
    auto b = build_2B(weak(1, 1, 2, 1));
    auto sd = sigma_data(b);
    CHECK(sd.projection.size() == 2);
    CHECK(sd.ih.size() == b.cat.one_cell_count());
    for (std::uint32_t x = 0; x < b.cat.object_count(); ++x) {
      auto e = b.cat.identity(ObjectId{x});
      CHECK(b.cat.is_identity(sigma_component(b, e)));
    }
    for (std::uint32_t f = 0; f < b.cat.one_cell_count(); ++f) {
      auto s = sigma_component(b, OneCellId{f});
      CHECK(b.cat.source(s) == b.cat.compose(sd.projection[b.one_cells[f].target], OneCellId{f}));
      // the H_0 -> H_1 part of every component vanishes
      CHECK(b.two_cells[s.value].phi.block(0, b.dim_b[b.one_cells[f].source], 1, 1).is_zero());
    }
    BCOptions eq = weak(1, 1, 2, 0);
    eq.variant = BCVariant::eq;
    CHECK_THROWS_AS(sigma_data(build_2B(eq)), Error);
  }

  TEST_CASE("sigma is colax in the quotient only") {
    auto b = build_2B(weak(1, 1, 2, 1));
    auto ho = quotient_to_Ho(b);
    auto in_ho = verify_sigma_colax(b, &ho);
    CHECK(in_ho.ok());
    CHECK(in_ho.pairs > 0);
    auto in_2b = verify_sigma_colax(b, nullptr);
    CHECK_FALSE(in_2b.ok());
    REQUIRE(in_2b.witness);
    auto sampled = verify_sigma_colax(b, &ho, 50, 3);
    CHECK(sampled.pairs == 50);
    CHECK(sampled.ok());
    // nothing to lose when one homology group vanishes
    auto split = build_2B(weak(1, 0, 2, 1));
    CHECK(verify_sigma_colax(split, nullptr).ok());
  }

  TEST_CASE("integer matrices") {
    auto kv = kv_skeleton(2, 2);
    // products leaving the entry bound are undefined, so only totality can fail
    CHECK(kv.undefined_products > 0);
    auto rep = validate_bicategory(kv.cat);
    CHECK(rep.total > 0);
    CHECK(rep.count("totality") == rep.violations.size());
    for (const auto& m : kv.matrices) CHECK(std::abs(integer_determinant(m)) == 1);
    auto find = [&](const std::vector<std::vector<long>>& m) {
      auto it = std::find(kv.matrices.begin(), kv.matrices.end(), m);
      REQUIRE(it != kv.matrices.end());
      return OneCellId{static_cast<std::uint32_t>(it - kv.matrices.begin())};
    };
    auto id = find({{1, 0}, {0, 1}});
    CHECK(kv.cat.identity(ObjectId{0}) == id);
    auto f = find({{1, 1}, {0, 1}}), g = find({{1, 0}, {1, 1}});
    // g * f is the matrix product f g
    CHECK(kv.cat.compose(g, f) == find({{2, 1}, {1, 1}}));
    CHECK_FALSE(kv.cat.try_compose(f, find({{2, 1}, {1, 1}})).has_value());

    // over a triangle the cocycle condition reads E_02 = E_01 E_12
    auto s = std::make_shared<const TwoCategory>(kv.cat);
    auto bundles = enumerate_bundles(s, simplex_complex(2));
    CHECK_FALSE(bundles.empty());
    for (const auto& b : bundles) {
      const auto& a = kv.matrices[b.edge(0, 1).value];
      const auto& c = kv.matrices[b.edge(1, 2).value];
      std::vector<std::vector<long>> prod(2, std::vector<long>(2, 0));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k) prod[i][j] += a[i][k] * c[k][j];
      CHECK(kv.matrices[b.edge(0, 2).value] == prod);
    }
    CHECK(integer_determinant({{2, 1}, {1, 1}}) == 1);
    CHECK(integer_determinant({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}) == -1);
    CHECK_THROWS_AS(kv_skeleton(3, 9), Error);
  }
}
