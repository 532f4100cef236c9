#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twobundle/complex.hpp"
#include "twobundle/nerve.hpp"
#include "twobundle/two_category.hpp"

namespace twobundle {

using StructurePtr = std::shared_ptr<const TwoCategory>;

// Cocycle data (V_a, E_ab, phi_abc) over an ordered complex; E_ab: V_a -> V_b and
// phi_abc: E_ac => E_bc * E_ab. Entries follow the lexicographic simplex order of the base.
struct Bundle {
  CombinatorialBase base;
  StructurePtr structure;
  std::vector<ObjectId> V;
  std::vector<OneCellId> E;
  std::vector<TwoCellId> phi;

  ObjectId vertex(int a) const { return V[a]; }
  OneCellId edge(int a, int b) const;
  TwoCellId triangle(int a, int b, int c) const;

  // Same base, same structure instance, same tables.
  bool operator==(const Bundle& o) const;
};

// Empty tables sized for the base, every entry absent.
Bundle blank_bundle(StructurePtr structure, const CombinatorialBase& base);
// V = x, E = id_x, phi = lambda^-1 on id_x.
Bundle trivial_bundle(StructurePtr structure, const CombinatorialBase& base, ObjectId x);

// Violations: "object", "edge-boundary", "triangle-boundary", "tetrahedron" (witness names the chain by labels).
// IndexMismatch when the tables do not fit the base.
ValidationReport validate_bundle(const Bundle& b);

// Image of a weakly increasing vertex sequence spanning a simplex; repeated vertices give
// identity edges, rho^-1 or lambda^-1 triangles.
NerveSimplex bundle_simplex(const Bundle& b, const std::vector<int>& sequence);

// Images into the nerve up to min(cech.max_dim, nerve.max_dim); kAbsent where the data is not a nerve simplex.
SimplicialMap bundle_to_simplicial_map(const Bundle& b, const OrderedNerve& cech, const DuskinNerve& nerve);
// Inverse of the encoder; reads V, E, phi off the nondegenerate simplices.
Bundle simplicial_map_to_bundle(const SimplicialMap& m, const OrderedNerve& cech, const DuskinNerve& nerve,
                                const CombinatorialBase& base, StructurePtr structure);

// f: K -> base(b). IndexMismatch if f is not a map into the bundle's base.
Bundle pullback(const Bundle& b, const BaseMap& f);
// NotSubcomplex unless `sub` sits inside the base.
Bundle restrict_bundle(const Bundle& b, const CombinatorialBase& sub);

// Pushout of base(bx) and base(bb) along an injective f: A -> base(bb), A a subcomplex of base(bx).
// MismatchOnA when the two bundles disagree on A, OrderConflict when no vertex order extends both.
Bundle glue(const Bundle& bx, const Bundle& bb, const BaseMap& f);

// Visits every valid bundle agreeing with the present entries of `partial`; stops when fn returns false.
// SizeLimit once more than `bound` search nodes are expanded.
void for_each_extension(const Bundle& partial, std::size_t bound, const std::function<bool(const Bundle&)>& fn);
std::vector<Bundle> enumerate_bundles(StructurePtr structure, const CombinatorialBase& base, std::size_t bound = 1'000'000);

struct Concordance {
  Prism prism;
  Bundle bundle;  // over prism.complex, restricting to the two ends
};

// A bundle over prism(base) whose bottom and top restrictions are b0 and b1.
std::optional<Concordance> elementary_concordant(const Bundle& b0, const Bundle& b1, std::size_t bound = 1'000'000);

struct ConcordanceClasses {
  std::vector<Bundle> bundles;
  std::vector<std::size_t> class_of;              // per bundle
  std::vector<std::size_t> representatives;       // least bundle index per class
  std::vector<std::vector<std::size_t>> members;  // per class, ascending
  std::size_t prism_searches = 0;

  std::size_t count() const { return representatives.size(); }
};

// Equivalence closure of the one-prism relation.
ConcordanceClasses concordance_classes(std::vector<Bundle> bundles, std::size_t bound = 1'000'000);
ConcordanceClasses concordance_classes(StructurePtr structure, const CombinatorialBase& base, std::size_t bound = 1'000'000);

// Non-associative free 2-category on an index set with admissible chains.
struct FreeTwoCategory {
  TwoCategory cat;
  std::vector<std::string> words;         // per 1-cell, fully parenthesized
  std::vector<std::vector<int>> chains;   // per 1-cell, ascending indices
  std::vector<std::pair<OneCellId, OneCellId>> factors;  // per 1-cell (g, f) for g*f, absent otherwise
  std::vector<OneCellId> generators;      // x_ab, in lexicographic order of admissible edges
};

// 1-cells are parenthesized words with at most `length_bound` generators whose chain is admissible;
// one 2-cell f => g exactly when the endpoints agree and chain(f) is contained in chain(g).
FreeTwoCategory free_two_category_2XU(int indices, const std::vector<std::vector<int>>& chains, int length_bound,
                                      std::size_t bound = 1'000'000);
FreeTwoCategory free_two_category_2XU(const CombinatorialBase& base);

struct StrictFunctorData {
  std::vector<ObjectId> objects;               // per object of 2X_U
  std::vector<OneCellId> one_cells;            // per 1-cell of 2X_U
  std::vector<TwoCellId> generator_two_cells;  // per triangle of the base
  std::size_t tetrahedra_checked = 0;
};

// Generator assignment x_a -> V_a, x_ab -> E_ab, x_abc -> phi_abc extended to all 1-cells;
// CoherenceFailure naming the chain when a tetrahedron image does not commute.
StrictFunctorData bundle_to_strict_functor(const Bundle& b, const FreeTwoCategory& free);
StrictFunctorData bundle_to_strict_functor(const Bundle& b);

}  // namespace twobundle
