#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twobundle/report.hpp"

namespace twobundle {

// Simplicial set truncated at max_dim; simplices of dimension k are 0..size(k)-1.
class FinSimplicialSet {
 public:
  struct Tables {
    int max_dim = -1;
    std::vector<std::size_t> sizes;                                        // [k]
    std::vector<std::vector<std::vector<std::uint32_t>>> faces;            // [k][i][z], d_i: Z_k -> Z_{k-1}
    std::vector<std::vector<std::vector<std::uint32_t>>> degeneracies;     // [k][i][z], s_i: Z_k -> Z_{k+1}
  };

  FinSimplicialSet() = default;
  // MalformedTable when the table shapes or entries are out of range.
  explicit FinSimplicialSet(Tables tables);

  int max_dim() const { return t_.max_dim; }
  std::size_t size(int k) const { return k >= 0 && k <= t_.max_dim ? t_.sizes[k] : 0; }
  std::uint32_t face(int k, int i, std::uint32_t z) const { return t_.faces[k][i][z]; }
  std::uint32_t degeneracy(int k, int i, std::uint32_t z) const { return t_.degeneracies[k][i][z]; }
  const Tables& tables() const { return t_; }

  // The boundary tuple (d_0 z, ..., d_k z).
  std::vector<std::uint32_t> boundary(int k, std::uint32_t z) const;

 private:
  Tables t_;
};

// Entries z_i for i in `indices` (ascending); compatibility d_i z_j = d_{j-1} z_i for i < j.
struct Cohorn {
  int n = 0;
  std::vector<int> indices;
  std::vector<std::uint32_t> entries;

  std::optional<std::uint32_t> entry(int i) const;
  bool operator==(const Cohorn&) const = default;
  std::string to_string() const;
};

// {0..n} minus {k}.
std::vector<int> horn_indices(int n, int k);

struct SimplicialMap {
  std::vector<std::vector<std::uint32_t>> images;  // [k][z]
};

ValidationReport validate_ssets(const FinSimplicialSet& x);
ValidationReport validate_simplicial_map(const FinSimplicialSet& x, const FinSimplicialSet& y, const SimplicialMap& f);

bool is_compatible(const FinSimplicialSet& x, const Cohorn& c);

// Calls fn with each compatible tuple over `indices` (which may be all of {0..n}); stops when fn returns false.
void for_each_compatible_tuple(const FinSimplicialSet& x, int n, const std::vector<int>& indices,
                               const std::function<bool(const std::vector<std::uint32_t>&)>& fn);

// All I-cohorns; I nonempty proper subset of {0..n}, 1 <= n <= max_dim, else DimensionOutOfRange.
std::vector<Cohorn> cohorns(const FinSimplicialSet& x, int n, const std::vector<int>& indices);
// Forgets entry k.
Cohorn cohorn_restrict(const Cohorn& c, int k);
// P^I_k for k not in I: y_i = d_{k-1} z_i (i < k), y_i = d_k z_{i+1} (k <= i).
Cohorn cohorn_project(const FinSimplicialSet& x, const Cohorn& c, int k);
// The restriction of z's boundary to `indices`.
Cohorn cohorn_of(const FinSimplicialSet& x, int n, std::uint32_t z, const std::vector<int>& indices);

// All n-simplices whose faces agree with the cohorn's entries.
std::vector<std::uint32_t> horn_fillers(const FinSimplicialSet& x, const Cohorn& c);

struct KanLevel {
  int n = 0;
  int k = 0;
  std::size_t horns = 0;
  std::size_t unfilled = 0;
  std::optional<Cohorn> witness;
};

struct KanReport {
  bool kan = true;
  std::vector<KanLevel> levels;
  const KanLevel* first_failure() const;
};

KanReport check_discrete_kan(const FinSimplicialSet& x, int up_to_dim);

struct CoskeletalLevel {
  int n = 0;
  std::size_t simplices = 0;
  std::size_t boundary_tuples = 0;
  bool injective = true;
};

struct CoskeletalReport {
  bool coskeletal = true;
  std::vector<CoskeletalLevel> levels;
};

// DimensionOutOfRange unless m < max_dim.
CoskeletalReport coskeletal_report(const FinSimplicialSet& x, int m);
bool is_coskeletal(const FinSimplicialSet& x, int m);

// Face and degeneracy tables for a family of vertex sequences closed under deleting and repeating
// entries; sequences[k] holds the (k+1)-term sequences and is sorted in place.
FinSimplicialSet simplicial_set_from_sequences(std::vector<std::vector<std::vector<int>>>& sequences);

// The standard n-simplex truncated at max_dim (simplices: weakly increasing sequences).
FinSimplicialSet standard_simplex(int n, int max_dim);

// Fillers by lookup on the first index present; built once per dimension.
class FillerIndex {
 public:
  FillerIndex(const FinSimplicialSet& x, int n);
  std::vector<std::uint32_t> fillers(const Cohorn& c) const;

 private:
  const FinSimplicialSet* x_;
  int n_;
  std::vector<std::vector<std::vector<std::uint32_t>>> buckets_;  // [i][face] -> simplices
};

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept;
};

}  // namespace twobundle
