#include "twobundle/adjoint.hpp"

#include <string>

#include "twobundle/error.hpp"

namespace twobundle {

std::optional<TwoCellId> try_vertical_inverse(const TwoCategory& c, TwoCellId phi) {
  for (auto psi : c.two_cells_between(c.target(phi), c.source(phi))) {
    if (c.try_vcomp(psi, phi) == c.identity(c.source(phi)) && c.try_vcomp(phi, psi) == c.identity(c.target(phi))) return psi;
  }
  return std::nullopt;
}

TwoCellId vertical_inverse(const TwoCategory& c, TwoCellId phi) {
  if (auto psi = try_vertical_inverse(c, phi)) return *psi;
  fail(Errc::not_invertible, "2-cell " + std::to_string(phi.value) + " has no vertical inverse");
}

InverseTable::InverseTable(const TwoCategory& c) : inv_(c.two_cell_count(), kAbsent) {
  for (std::uint32_t i = 0; i < inv_.size(); ++i) {
    if (inv_[i] != kAbsent) continue;
    if (auto psi = try_vertical_inverse(c, TwoCellId{i})) {
      inv_[i] = psi->value;
      inv_[psi->value] = i;
    } else {
      all_ = false;
    }
  }
}

std::optional<TwoCellId> InverseTable::find(TwoCellId phi) const {
  if (inv_[phi.value] == kAbsent) return std::nullopt;
  return TwoCellId{inv_[phi.value]};
}

TwoCellId InverseTable::operator()(TwoCellId phi) const {
  if (auto psi = find(phi)) return *psi;
  fail(Errc::not_invertible, "2-cell " + std::to_string(phi.value) + " has no vertical inverse");
}

namespace {

bool zigzags_hold(const TwoCategory& c, const InverseTable& inv, const AdjointEquivalence& a) {
  auto rho_f_inv = inv.find(c.right_unitor(a.f));
  auto lambda_g_inv = inv.find(c.left_unitor(a.g));
  auto alpha_gfg_inv = inv.find(c.associator(a.g, a.f, a.g));
  if (!rho_f_inv || !lambda_g_inv || !alpha_gfg_inv) return false;
  auto z1 = c.vcomp_chain({c.left_unitor(a.f), c.rwhisker(a.eps, a.f), c.associator(a.f, a.g, a.f), c.lwhisker(a.f, a.eta), *rho_f_inv});
  if (z1 != c.identity(a.f)) return false;
  auto z2 = c.vcomp_chain({c.right_unitor(a.g), c.lwhisker(a.g, a.eps), *alpha_gfg_inv, c.rwhisker(a.eta, a.g), *lambda_g_inv});
  return z2 == c.identity(a.g);
}

template <class Visit>
void enumerate(const TwoCategory& c, const InverseTable& inv, OneCellId f, Visit&& visit) {
  auto x = c.source(f);
  auto y = c.target(f);
  for (auto g : c.one_cells_between(y, x)) {
    auto gf = c.compose(g, f);
    auto fg = c.compose(f, g);
    for (auto eta : c.two_cells_between(c.identity(x), gf)) {
      if (!inv.find(eta)) continue;
      for (auto eps : c.two_cells_between(fg, c.identity(y))) {
        if (!inv.find(eps)) continue;
        AdjointEquivalence a{f, g, eta, eps};
        if (zigzags_hold(c, inv, a) && !visit(a)) return;
      }
    }
  }
}

}  // namespace

bool is_adjoint_equivalence(const TwoCategory& c, const AdjointEquivalence& a) {
  if (c.source(a.g) != c.target(a.f) || c.target(a.g) != c.source(a.f)) return false;
  if (c.source(a.eta) != c.identity(c.source(a.f)) || c.target(a.eta) != c.compose(a.g, a.f)) return false;
  if (c.source(a.eps) != c.compose(a.f, a.g) || c.target(a.eps) != c.identity(c.target(a.f))) return false;
  if (!try_vertical_inverse(c, a.eta) || !try_vertical_inverse(c, a.eps)) return false;
  InverseTable inv(c);
  return zigzags_hold(c, inv, a);
}

std::vector<AdjointEquivalence> find_adjoint_equivalences(const TwoCategory& c, OneCellId f) {
  InverseTable inv(c);
  std::vector<AdjointEquivalence> out;
  enumerate(c, inv, f, [&](const AdjointEquivalence& a) {
    out.push_back(a);
    return true;
  });
  return out;
}

std::optional<AdjointEquivalence> first_adjoint_equivalence(const TwoCategory& c, OneCellId f) {
  return first_adjoint_equivalence(c, f, InverseTable(c));
}

std::optional<AdjointEquivalence> first_adjoint_equivalence(const TwoCategory& c, OneCellId f, const InverseTable& inv) {
  std::optional<AdjointEquivalence> out;
  enumerate(c, inv, f, [&](const AdjointEquivalence& a) {
    out = a;
    return false;
  });
  return out;
}

bool is_two_groupoid(const TwoCategory& c) {
  InverseTable inv(c);
  if (!inv.all_invertible()) return false;
  for (std::uint32_t i = 0; i < c.one_cell_count(); ++i) {
    bool found = false;
    enumerate(c, inv, OneCellId{i}, [&](const AdjointEquivalence&) {
      found = true;
      return false;
    });
    if (!found) return false;
  }
  return true;
}

TwoCellId solve_left_whisker(const TwoCategory& c, TwoCellId psi, const AdjointEquivalence& adj, OneCellId h_s, OneCellId h_t) {
  const auto f = adj.f;
  if (c.source(h_s) != c.target(f) || c.source(h_t) != c.target(f) || c.target(h_s) != c.target(h_t))
    fail(Errc::boundary_mismatch, "h_s, h_t must be parallel and start at the target of f");
  if (c.source(psi) != c.compose(h_s, f) || c.target(psi) != c.compose(h_t, f))
    fail(Errc::boundary_mismatch, "psi must run from h_s*f to h_t*f");
  if (c.source(adj.eps) != c.compose(f, adj.g)) fail(Errc::boundary_mismatch, "adjoint equivalence is not for f");
  auto inverse = [&](TwoCellId a) {
    auto r = try_vertical_inverse(c, a);
    if (!r) fail(Errc::no_solution, "coherence cell without inverse");
    return *r;
  };
  auto phi = c.vcomp_chain({c.right_unitor(h_t), c.lwhisker(h_t, adj.eps), inverse(c.associator(h_t, f, adj.g)),
                            c.rwhisker(psi, adj.g), c.associator(h_s, f, adj.g), inverse(c.lwhisker(h_s, adj.eps)),
                            inverse(c.right_unitor(h_s))});
  if (c.rwhisker(phi, f) != psi) fail(Errc::no_solution, "phi*f != psi");
  return phi;
}

TwoCellId solve_right_whisker(const TwoCategory& c, TwoCellId psi, const AdjointEquivalence& adj, OneCellId h_s, OneCellId h_t) {
  const auto f = adj.f;
  if (c.target(h_s) != c.source(f) || c.target(h_t) != c.source(f) || c.source(h_s) != c.source(h_t))
    fail(Errc::boundary_mismatch, "h_s, h_t must be parallel and end at the source of f");
  if (c.source(psi) != c.compose(f, h_s) || c.target(psi) != c.compose(f, h_t))
    fail(Errc::boundary_mismatch, "psi must run from f*h_s to f*h_t");
  if (c.target(adj.eta) != c.compose(adj.g, f)) fail(Errc::boundary_mismatch, "adjoint equivalence is not for f");
  auto inverse = [&](TwoCellId a) {
    auto r = try_vertical_inverse(c, a);
    if (!r) fail(Errc::no_solution, "coherence cell without inverse");
    return *r;
  };
  auto phi = c.vcomp_chain({c.left_unitor(h_t), inverse(c.rwhisker(adj.eta, h_t)), c.associator(adj.g, f, h_t),
                            c.lwhisker(adj.g, psi), inverse(c.associator(adj.g, f, h_s)), c.rwhisker(adj.eta, h_s),
                            inverse(c.left_unitor(h_s))});
  if (c.lwhisker(f, phi) != psi) fail(Errc::no_solution, "f*phi != psi");
  return phi;
}

}  // namespace twobundle
