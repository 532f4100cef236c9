#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "twobundle/two_category.hpp"

namespace twobundle {

// eta: id => g*f, eps: f*g => id, with zigzags
//   lambda_f (eps*f) alpha_{f,g,f} (f*eta) rho_f^-1 = id_f
//   rho_g (g*eps) alpha_{g,f,g}^-1 (eta*g) lambda_g^-1 = id_g
struct AdjointEquivalence {
  OneCellId f;
  OneCellId g;
  TwoCellId eta;
  TwoCellId eps;

  auto operator<=>(const AdjointEquivalence&) const = default;
};

std::optional<TwoCellId> try_vertical_inverse(const TwoCategory& c, TwoCellId phi);
// NotInvertible when phi has no vertical inverse.
TwoCellId vertical_inverse(const TwoCategory& c, TwoCellId phi);

// Precomputed vertical inverses.
class InverseTable {
 public:
  explicit InverseTable(const TwoCategory& c);
  std::optional<TwoCellId> find(TwoCellId phi) const;
  TwoCellId operator()(TwoCellId phi) const;
  bool all_invertible() const { return all_; }

 private:
  std::vector<std::uint32_t> inv_;
  bool all_ = true;
};

bool is_adjoint_equivalence(const TwoCategory& c, const AdjointEquivalence& adj);
// Sorted by (g, eta, eps).
std::vector<AdjointEquivalence> find_adjoint_equivalences(const TwoCategory& c, OneCellId f);
std::optional<AdjointEquivalence> first_adjoint_equivalence(const TwoCategory& c, OneCellId f);
std::optional<AdjointEquivalence> first_adjoint_equivalence(const TwoCategory& c, OneCellId f, const InverseTable& inv);

bool is_two_groupoid(const TwoCategory& c);

// Unique phi: h_s => h_t with phi*f = psi, for psi: h_s*f => h_t*f and adj an adjoint equivalence for f.
TwoCellId solve_left_whisker(const TwoCategory& c, TwoCellId psi, const AdjointEquivalence& adj, OneCellId h_s,
                             OneCellId h_t);
// Unique phi: h_s => h_t with f*phi = psi, for psi: f*h_s => f*h_t.
TwoCellId solve_right_whisker(const TwoCategory& c, TwoCellId psi, const AdjointEquivalence& adj, OneCellId h_s,
                              OneCellId h_t);

}  // namespace twobundle
