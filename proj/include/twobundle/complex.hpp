#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "twobundle/simplicial.hpp"

namespace twobundle {

// Vertex ranks, strictly increasing.
using Simplex = std::vector<int>;

// Finite ordered simplicial complex; the vertex order is the order of `labels`.
class CombinatorialBase {
 public:
  CombinatorialBase() = default;

  // Simplices given by labels; downward closure is taken. IndexMismatch on unknown or repeated labels.
  static CombinatorialBase from_simplices(std::vector<long> labels, const std::vector<std::vector<long>>& simplices);

  std::size_t vertex_count() const { return labels_.size(); }
  const std::vector<long>& labels() const { return labels_; }
  long label(int rank) const { return labels_[rank]; }
  std::optional<int> rank_of(long label) const;
  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }

  // Lexicographically sorted.
  const std::vector<Simplex>& simplices(int k) const;
  std::size_t count(int k) const { return simplices(k).size(); }
  std::optional<std::size_t> index_of(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index_of(s).has_value(); }
  std::vector<Simplex> maximal_simplices() const;
  std::vector<long> to_labels(const Simplex& s) const;
  Simplex from_labels(const std::vector<long>& s) const;
  // Every simplex of `sub`, matched by label, is a simplex here with the same relative order.
  bool contains_subcomplex(const CombinatorialBase& sub) const;

  bool operator==(const CombinatorialBase& o) const { return labels_ == o.labels_ && by_dim_ == o.by_dim_; }

 private:
  std::vector<long> labels_;
  std::map<long, int> rank_;
  std::vector<std::vector<Simplex>> by_dim_;
};

CombinatorialBase point_complex();
CombinatorialBase simplex_complex(int n);
CombinatorialBase simplex_boundary(int n);
// m-gon with vertices 0..m-1 and edges {i, i+1 mod m}.
CombinatorialBase circle_complex(int m);

// Vertex map between ordered complexes, weakly monotone on every simplex.
struct BaseMap {
  CombinatorialBase source;
  CombinatorialBase target;
  std::vector<int> image;  // source rank -> target rank

  Simplex apply(const Simplex& s) const;  // weakly increasing vertex sequence, may repeat
};

// IndexMismatch when some simplex is not carried to a simplex or order is reversed.
void check_base_map(const BaseMap& f);
BaseMap identity_map(const CombinatorialBase& k);
BaseMap compose(const BaseMap& g, const BaseMap& f);
// Inclusion of a subcomplex by labels; NotSubcomplex otherwise.
BaseMap inclusion(const CombinatorialBase& sub, const CombinatorialBase& k);

struct Prism {
  CombinatorialBase complex;  // vertex (v, i) has rank and label i * V + rank(v)
  BaseMap bottom;             // i_0
  BaseMap top;                // i_1
  BaseMap projection;
};

Prism prism(const CombinatorialBase& k);

// dim H^d(K; F_p) from the ordered cochain complex.
std::size_t cochain_cohomology(const CombinatorialBase& k, std::uint32_t p, int d);
// dim Z^d(K; F_p).
std::size_t cocycle_dimension(const CombinatorialBase& k, std::uint32_t p, int d);
long euler_characteristic(const CombinatorialBase& k);

// Nerve of the ordered vertex-star cover: n-simplices are weakly increasing vertex sequences spanning a simplex.
struct OrderedNerve {
  FinSimplicialSet sset;
  std::vector<std::vector<std::vector<int>>> sequences;  // [k][z]
};
OrderedNerve ordered_simplicial_set(const CombinatorialBase& k, int max_dim);

}  // namespace twobundle
