#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "twobundle/ids.hpp"
#include "twobundle/report.hpp"

namespace twobundle {

struct OneCell {
  ObjectId source;
  ObjectId target;
};

struct TwoCell {
  OneCellId source;
  OneCellId target;
};

// Finite bicategory. Horizontal composition of 2-cells lives in two whisker
// tables; alpha: h*(g*f) => (h*g)*f, lambda: id*f => f, rho: f*id => f.
class TwoCategory {
 public:
  class Builder;

  TwoCategory() = default;

  const std::string& name() const { return name_; }

  std::size_t object_count() const { return object_identity_.size(); }
  std::size_t one_cell_count() const { return one_cells_.size(); }
  std::size_t two_cell_count() const { return two_cells_.size(); }

  const OneCell& one_cell(OneCellId f) const { return one_cells_[f.value]; }
  const TwoCell& two_cell(TwoCellId phi) const { return two_cells_[phi.value]; }
  ObjectId source(OneCellId f) const { return one_cells_[f.value].source; }
  ObjectId target(OneCellId f) const { return one_cells_[f.value].target; }
  OneCellId source(TwoCellId phi) const { return two_cells_[phi.value].source; }
  OneCellId target(TwoCellId phi) const { return two_cells_[phi.value].target; }

  OneCellId identity(ObjectId x) const { return object_identity_[x.value]; }
  TwoCellId identity(OneCellId f) const { return one_cell_identity_[f.value]; }
  bool is_identity(OneCellId f) const { return identity(source(f)) == f && source(f) == target(f); }
  bool is_identity(TwoCellId phi) const { return identity(source(phi)) == phi; }

  // Sorted by (target, id).
  std::span<const OneCellId> one_cells_from(ObjectId x) const;
  // Sorted by (source, id).
  std::span<const OneCellId> one_cells_to(ObjectId y) const;
  std::span<const OneCellId> one_cells_between(ObjectId x, ObjectId y) const;
  std::span<const TwoCellId> two_cells_from(OneCellId f) const;
  std::span<const TwoCellId> two_cells_to(OneCellId g) const;
  std::span<const TwoCellId> two_cells_between(OneCellId f, OneCellId g) const;

  // Partial lookups; nullopt when the pair is not composable or the entry is missing.
  std::optional<OneCellId> try_compose(OneCellId g, OneCellId f) const;
  std::optional<TwoCellId> try_vcomp(TwoCellId psi, TwoCellId phi) const;
  std::optional<TwoCellId> try_lwhisker(OneCellId g, TwoCellId phi) const;
  std::optional<TwoCellId> try_rwhisker(TwoCellId phi, OneCellId f) const;
  std::optional<TwoCellId> try_associator(OneCellId h, OneCellId g, OneCellId f) const;
  std::optional<TwoCellId> try_left_unitor(OneCellId f) const;
  std::optional<TwoCellId> try_right_unitor(OneCellId f) const;

  // Throwing lookups: BoundaryMismatch for non-composable input, MalformedTable for missing entries.
  OneCellId compose(OneCellId g, OneCellId f) const;
  TwoCellId vcomp(TwoCellId psi, TwoCellId phi) const;
  TwoCellId lwhisker(OneCellId g, TwoCellId phi) const;
  TwoCellId rwhisker(TwoCellId phi, OneCellId f) const;
  TwoCellId associator(OneCellId h, OneCellId g, OneCellId f) const;
  TwoCellId left_unitor(OneCellId f) const;
  TwoCellId right_unitor(OneCellId f) const;

  // Vertical composite of a chain listed in application order reversed: vcomp_chain({c, b, a}) = c(b(a)).
  TwoCellId vcomp_chain(std::initializer_list<TwoCellId> cells) const;
  // Horizontal composite psi*phi, derived as (psi*f')(g*phi).
  TwoCellId hcomp(TwoCellId psi, TwoCellId phi) const;

  bool has_explicit_coherence() const { return explicit_coherence_; }

 private:
  std::string name_;
  std::vector<OneCell> one_cells_;
  std::vector<TwoCell> two_cells_;
  std::vector<OneCellId> object_identity_;
  std::vector<TwoCellId> one_cell_identity_;

  std::vector<OneCellId> from_sorted_, to_sorted_;
  std::vector<std::uint32_t> from_begin_, to_begin_;  // per object, size objects+1
  std::vector<std::uint32_t> rank_from_, rank_to_;    // per 1-cell
  std::vector<TwoCellId> two_from_sorted_, two_to_sorted_;
  std::vector<std::uint32_t> two_from_begin_, two_to_begin_;  // per 1-cell
  std::vector<std::uint32_t> rank_two_from_;                  // per 2-cell

  std::vector<std::uint64_t> hcomp_off_;  // per 1-cell f, row over one_cells_from(target f)
  std::vector<std::uint32_t> hcomp_;
  std::vector<std::uint64_t> vcomp_off_;  // per 2-cell phi, row over two_cells_from(target phi)
  std::vector<std::uint32_t> vcomp_;
  std::vector<std::uint64_t> lw_off_;  // per 2-cell phi, row over one_cells_from(target object)
  std::vector<std::uint32_t> lw_;
  std::vector<std::uint64_t> rw_off_;  // per 2-cell phi, row over one_cells_to(source object)
  std::vector<std::uint32_t> rw_;

  bool explicit_coherence_ = false;
  std::unordered_map<std::uint64_t, std::uint32_t> alpha_;
  std::vector<std::uint32_t> lambda_, rho_;

  std::uint64_t triple_key(OneCellId h, OneCellId g, OneCellId f) const;
};

class TwoCategory::Builder {
 public:
  Builder& set_name(std::string name);

  ObjectId add_object();
  OneCellId add_one_cell(ObjectId source, ObjectId target);
  TwoCellId add_two_cell(OneCellId source, OneCellId target);

  void set_identity(ObjectId x, OneCellId f);
  void set_identity(OneCellId f, TwoCellId phi);

  void set_compose(OneCellId g, OneCellId f, OneCellId result);
  void set_vcomp(TwoCellId psi, TwoCellId phi, TwoCellId result);
  void set_lwhisker(OneCellId g, TwoCellId phi, TwoCellId result);
  void set_rwhisker(TwoCellId phi, OneCellId f, TwoCellId result);
  void set_associator(OneCellId h, OneCellId g, OneCellId f, TwoCellId cell);
  void set_left_unitor(OneCellId f, TwoCellId cell);
  void set_right_unitor(OneCellId f, TwoCellId cell);

  std::size_t object_count() const { return objects_; }
  std::size_t one_cell_count() const { return one_cells_.size(); }
  std::size_t two_cell_count() const { return two_cells_.size(); }

  // MalformedTable on out-of-range ids, boundary mismatches, conflicting or missing identities.
  TwoCategory build() &&;

 private:
  std::string name_;
  std::size_t objects_ = 0;
  std::vector<OneCell> one_cells_;
  std::vector<TwoCell> two_cells_;
  std::vector<std::uint32_t> object_identity_;
  std::vector<std::uint32_t> one_cell_identity_;
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> compose_, vcomp_, lw_, rw_;
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t>> alpha_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> lambda_, rho_;
};

ValidationReport validate_bicategory(const TwoCategory& c);

// alpha, lambda, rho identities and composition strictly associative and unital.
bool is_strict(const TwoCategory& c);

}  // namespace twobundle
