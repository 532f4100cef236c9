#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twobundle/linalg.hpp"
#include "twobundle/two_category.hpp"

namespace twobundle {

// C_1 --d--> C_0 over F_p; d is a c0 x c1 matrix.
struct ChainComplex2 {
  std::uint32_t p = 2;
  std::size_t c1 = 0, c0 = 0;
  FpMatrix d;

  bool operator==(const ChainComplex2&) const = default;
};

// C_1 = H_1 + B, C_0 = B + H_0, d = [[0, I], [0, 0]].
ChainComplex2 normal_form_complex(std::uint32_t p, std::size_t b1, std::size_t dim_b, std::size_t b0);

struct ChainMap {
  ChainComplex2 source, target;
  FpMatrix f1, f0;
};

bool is_chain_map(const ChainMap& f);
ChainMap identity_chain_map(const ChainComplex2& c);
// g after f; IndexMismatch unless composable.
ChainMap compose(const ChainMap& g, const ChainMap& f);

// phi: C_0 -> C'_1 with f1 - g1 = phi d and f0 - g0 = d' phi.
struct ChainHomotopy {
  ChainMap from, to;
  FpMatrix phi;
};

bool is_chain_homotopy(const ChainHomotopy& h);
// Every homotopy from f to g, by exhaustion over C_0 -> C'_1.
std::vector<FpMatrix> all_homotopies(const ChainMap& f, const ChainMap& g);

// Columns of s1 are a basis of C_1 adapted to H_1 + B, columns of s0 one of C_0 adapted to B + H_0,
// so that s0^-1 d s1 is the normal form.
struct BlockFrame {
  ChainComplex2 complex;
  FpMatrix s1, s0, s1_inv, s0_inv;
  std::size_t b1 = 0, dim_b = 0, b0 = 0;

  FpMatrix normal_d() const { return s0_inv * complex.d * s1; }
};

BlockFrame block_frame(const ChainComplex2& c);

// f_1 = [[h1_h1, b_h1], [0, b_b]], f_0 = [[b_b, h0_b], [0, h0_h0]] in the frames.
struct ChainMapBlocks {
  FpMatrix h1_h1, b_h1, b_b, h0_b, h0_h0;

  // Both homology blocks invertible.
  bool is_equivalence() const;
};

// NotChainMap when f fails the chain condition or the frames belong to other complexes.
ChainMapBlocks chain_map_blocks(const ChainMap& f, const BlockFrame& source, const BlockFrame& target);
ChainMap reassemble(const ChainMapBlocks& blocks, const BlockFrame& source, const BlockFrame& target);

// A homotopy C_0 = B + H_0 -> C'_1 = H'_1 + B' in frames: [[b_h1, h0_h1], [b_b, h0_b]].
struct HomotopyBlocks {
  FpMatrix b_h1, h0_h1, b_b, h0_b;
};
HomotopyBlocks homotopy_blocks(const FpMatrix& phi, const BlockFrame& source, const BlockFrame& target);

enum class BCVariant { strict, weak, eq, ad };
enum class BCScope { single, all };

std::string to_string(BCVariant v);
std::optional<BCVariant> parse_variant(const std::string& s);

struct BCOptions {
  BCVariant variant = BCVariant::weak;
  BCScope scope = BCScope::all;
  std::size_t b1 = 1, b0 = 1;
  std::uint32_t p = 2;
  std::size_t dim_b_bound = 1;
  // eq/ad: read the second 2-cell identity as eps_f - eps_g = f phibar + phi gbar (single object only).
  bool literal_epsilon = false;
  std::size_t cell_bound = 1'000'000;
};

struct BCOneCell {
  std::uint32_t source = 0, target = 0;  // object indices
  ChainMap f;
  // eq and ad only: fbar: target -> source, iota: 1 => f fbar, eps: fbar f => 1.
  std::optional<ChainMap> fbar;
  FpMatrix iota, eps;
};

struct BCTwoCell {
  OneCellId source, target;
  FpMatrix phi;
  FpMatrix phibar;  // eq and ad only
};

struct BCIndex;

struct BCInstance {
  BCOptions options;
  std::vector<ChainComplex2> objects;
  std::vector<std::size_t> dim_b;  // per object
  std::vector<BCOneCell> one_cells;
  std::vector<BCTwoCell> two_cells;
  TwoCategory cat;

  std::optional<OneCellId> find_one_cell(const BCOneCell& cell) const;
  std::optional<TwoCellId> find_two_cell(const BCTwoCell& cell) const;
  std::optional<std::uint32_t> object_with_dim_b(std::size_t r) const;

  std::shared_ptr<const BCIndex> index;  // cell lookup, filled by build_2B
};

// Strict 2-category on normal-form complexes with dim B up to the bound (only the bound itself for the
// single scope). Composition is matrix product, vertical composition addition. SizeLimit beyond cell_bound;
// CoherenceFailure when the literal epsilon rule is not closed under composition.
BCInstance build_2B(const BCOptions& options);

// Identifies 2-cells agreeing outside the H_0 -> H'_1 block of every homotopy involved.
struct HoInstance {
  TwoCategory cat;
  std::vector<TwoCellId> class_of;                 // per 2-cell of the 2B instance
  std::vector<std::vector<TwoCellId>> members;     // per class, ascending
  std::size_t composites_checked = 0;
  std::size_t ill_defined = 0;                     // composites whose class depends on the representative

  bool well_defined() const { return ill_defined == 0; }
};

HoInstance quotient_to_Ho(const BCInstance& b);

// H: 1-cells to GL(b1) x GL(b0) through the homology blocks; i: GL(b1) x GL(b0) to automorphisms of
// the complex with B = 0.
struct HomologyCheck {
  TwoCategory target;                    // delooping of GL(b1, F_p) x GL(b0, F_p)
  std::vector<std::uint32_t> h;          // per 1-cell of the instance
  std::vector<OneCellId> i;              // per element of the group
  std::size_t elements = 0;
  std::size_t hi_failures = 0;           // elements x with H(i(x)) != x
  std::size_t functor_failures = 0;      // composites and 2-cells H does not respect

  bool ok() const { return hi_failures == 0 && functor_failures == 0; }
};

// IndexMismatch when the instance has no object with B = 0.
HomologyCheck homology_functor(const BCInstance& b);

// sigma_C: C -> C^H per object and iH(f) per 1-cell; weak variant with a B = 0 object only.
struct SigmaData {
  std::vector<OneCellId> projection;  // per object
  std::vector<OneCellId> ih;          // per 1-cell
};
SigmaData sigma_data(const BCInstance& b);

// The homotopy [f^B_{H'_1}, 0]: sigma_{C'} f => iH(f) sigma_C.
TwoCellId sigma_component(const BCInstance& b, OneCellId f);
// Its class in the quotient.
TwoCellId sigma_component(const BCInstance& b, const HoInstance& ho, OneCellId f);

struct SigmaReport {
  std::size_t pairs = 0;
  std::size_t failures = 0;
  bool normalized = true;  // sigma of an identity is an identity 2-cell
  std::optional<std::pair<OneCellId, OneCellId>> witness;  // (g, f) with sigma_gf != iH(g) sigma_f + sigma_g f

  bool ok() const { return failures == 0 && normalized; }
};

// Colax law over composable pairs, in the quotient when `ho` is given and in 2B otherwise.
// Exhaustive unless `sample` is set, then that many pairs drawn with `seed`. SizeLimit above
// cell_bound pairs in exhaustive mode.
SigmaReport verify_sigma_colax(const BCInstance& b, const HoInstance* ho, std::optional<std::size_t> sample = std::nullopt,
                               std::uint64_t seed = 0);

// One object; 1-cells n x n nonnegative integer matrices with entries <= entry_bound and determinant +-1;
// g * f = f g (reverse product) where the product stays in bound, absent otherwise; identity 2-cells only.
struct KVSkeleton {
  TwoCategory cat;
  std::vector<std::vector<std::vector<long>>> matrices;  // per 1-cell
  std::size_t undefined_products = 0;
};

// SizeLimit when (entry_bound + 1)^(n^2) exceeds 10^7.
KVSkeleton kv_skeleton(std::size_t n, long entry_bound);
long integer_determinant(const std::vector<std::vector<long>>& m);

}  // namespace twobundle
