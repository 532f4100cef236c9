#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "twobundle/adjoint.hpp"
#include "twobundle/constructions.hpp"
#include "twobundle/simplicial.hpp"
#include "twobundle/two_category.hpp"

namespace twobundle {

// Position of (i, j), i < j, and (i, j, k), i < j < k, in lexicographic order over {0..n}.
std::size_t pair_index(int n, int i, int j);
std::size_t triple_index(int n, int i, int j, int k);

// An n-simplex of the Duskin nerve: objects x_i, 1-cells f_ij: x_i -> x_j, and
// 2-cells phi_ijk: f_ik => f_jk * f_ij, every tetrahedron commuting.
struct NerveSimplex {
  int dim = 0;
  std::vector<ObjectId> objects;
  std::vector<OneCellId> edges;       // lexicographic (i, j)
  std::vector<TwoCellId> triangles;   // lexicographic (i, j, k)

  static NerveSimplex blank(int n);

  OneCellId edge(int i, int j) const { return edges[pair_index(dim, i, j)]; }
  TwoCellId triangle(int i, int j, int k) const { return triangles[triple_index(dim, i, j, k)]; }
  void set_edge(int i, int j, OneCellId f) { edges[pair_index(dim, i, j)] = f; }
  void set_triangle(int i, int j, int k, TwoCellId phi) { triangles[triple_index(dim, i, j, k)] = phi; }

  // Restriction to the listed vertices (ascending).
  NerveSimplex restrict_to(const std::vector<int>& vertices) const;
  NerveSimplex face(int i) const;

  std::vector<std::uint32_t> key() const;
  bool operator==(const NerveSimplex&) const = default;
};

// Boundaries of every 1- and 2-cell; no tetrahedron check.
bool boundaries_match(const TwoCategory& c, const NerveSimplex& s);

// alpha_{f_kl,f_jk,f_ij} (f_kl*phi_ijk) phi_ikl == (phi_jkl*f_ij) phi_ijl.
bool tetrahedron_holds(const TwoCategory& c, const NerveSimplex& s, int i, int j, int k, int l);
bool is_nerve_simplex(const TwoCategory& c, const NerveSimplex& s);

// Faces ordered d_0 = (123), d_1 = (023), d_2 = (013), d_3 = (012). BoundaryMismatch when edges disagree.
bool tetrahedron_check(const TwoCategory& c, const std::vector<NerveSimplex>& faces);

// The degenerate simplex s_i(s).
NerveSimplex degenerate(const TwoCategory& c, const NerveSimplex& s, int i);

class DuskinNerve {
 public:
  DuskinNerve() = default;
  DuskinNerve(std::vector<std::vector<NerveSimplex>> simplices, FinSimplicialSet sset);

  int max_dim() const { return sset_.max_dim(); }
  const FinSimplicialSet& sset() const { return sset_; }
  std::size_t size(int k) const { return sset_.size(k); }
  const NerveSimplex& simplex(int k, std::uint32_t z) const { return simplices_[k][z]; }
  const std::vector<NerveSimplex>& simplices(int k) const { return simplices_[k]; }
  std::optional<std::uint32_t> find(const NerveSimplex& s) const;

 private:
  std::vector<std::vector<NerveSimplex>> simplices_;
  std::vector<std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VectorHash>> index_;
  FinSimplicialSet sset_;
};

// Every simplex up to max_dim enumerated from the definition; SizeLimit beyond `bound` simplices.
DuskinNerve duskin_nerve(const TwoCategory& c, int max_dim, std::size_t bound = 1'000'000);

// Spine 1-cells f_{i,i+1} and 2-cells phi_{i,i+1,j}: f_ij => f_{i+1,j} * f_{i,i+1}.
struct Flag {
  std::vector<ObjectId> objects;
  std::vector<OneCellId> spine;
  std::vector<std::vector<TwoCellId>> fans;  // fans[i][j - i - 2] = phi_{i,i+1,j}

  int dim() const { return static_cast<int>(objects.size()) - 1; }
  bool operator==(const Flag&) const = default;
};

Flag flag_of(const NerveSimplex& s);

struct FlagReconstruction {
  NerveSimplex simplex;
  std::size_t alternatives_checked = 0;  // extra choices of the intermediate index
  bool choice_independent = true;
};

// Rebuilds phi_ikl by induction on k - i using j = i + 1, comparing every other admissible j.
// NotInvertible when a needed 2-cell has no inverse; BoundaryMismatch on an inconsistent flag.
FlagReconstruction reconstruct_from_flag(const TwoCategory& c, const Flag& flag);
FlagReconstruction reconstruct_from_flag(const TwoCategory& c, const Flag& flag, const InverseTable& inv);
// As above; CoherenceFailure if the choices disagree or the result is not a nerve simplex.
NerveSimplex flag_to_simplex(const TwoCategory& c, const Flag& flag);
NerveSimplex flag_to_simplex(const TwoCategory& c, const Flag& flag, const InverseTable& inv);

// Constructive fillers for horns of the Duskin nerve of a 2-groupoid.
class HornFiller {
 public:
  // NotGroupoid unless c is a 2-groupoid.
  HornFiller(const TwoCategory& c, const DuskinNerve& nerve);

  NerveSimplex fill(const Cohorn& horn) const;
  std::uint32_t fill_id(const Cohorn& horn) const;
  const AdjointEquivalence& adjoint(OneCellId f) const { return adjoints_[f.value]; }

 private:
  const TwoCategory* c_;
  const DuskinNerve* nerve_;
  InverseTable inv_;
  std::vector<AdjointEquivalence> adjoints_;  // lexicographically least per 1-cell
};

NerveSimplex groupoid_horn_filler(const TwoCategory& c, const DuskinNerve& nerve, const Cohorn& horn);

// Classical nerve; n-simplices are composable chains (x_0; f_1, ..., f_n).
struct CategoryNerve {
  FinSimplicialSet sset;
  std::vector<std::vector<std::vector<std::uint32_t>>> chains;  // [k][z]: object for k = 0, morphisms otherwise
};
CategoryNerve nerve_of_category(const FiniteCategory& cat, int max_dim);

// The Duskin simplex of locally_discrete(cat) matching a chain.
NerveSimplex chain_to_nerve_simplex(const FiniteCategory& cat, const std::vector<std::uint32_t>& chain, int dim);

}  // namespace twobundle
