#include <optional>
#include <string>

#include "twobundle/two_category.hpp"

namespace twobundle {

namespace {

using O1 = std::optional<OneCellId>;
using O2 = std::optional<TwoCellId>;

struct Ops {
  const TwoCategory& c;

  O1 C(O1 g, O1 f) const { return g && f ? c.try_compose(*g, *f) : std::nullopt; }
  O2 V(O2 psi, O2 phi) const { return psi && phi ? c.try_vcomp(*psi, *phi) : std::nullopt; }
  O2 L(O1 g, O2 phi) const { return g && phi ? c.try_lwhisker(*g, *phi) : std::nullopt; }
  O2 R(O2 phi, O1 f) const { return phi && f ? c.try_rwhisker(*phi, *f) : std::nullopt; }
  O2 A(O1 h, O1 g, O1 f) const { return h && g && f ? c.try_associator(*h, *g, *f) : std::nullopt; }
  O2 Id(O1 f) const { return f ? O2{c.identity(*f)} : std::nullopt; }
};

std::string tuple_str(std::initializer_list<std::uint32_t> ids) {
  std::string s = "(";
  bool first = true;
  for (auto v : ids) {
    if (!first) s += ",";
    s += std::to_string(v);
    first = false;
  }
  return s + ")";
}

// Reports when both sides exist and differ; missing entries are reported by the totality pass.
void expect(ValidationReport& r, const char* rule, O2 lhs, O2 rhs, std::initializer_list<std::uint32_t> ids) {
  if (lhs && rhs && *lhs != *rhs) r.add(rule, tuple_str(ids));
}

bool has_inverse(const TwoCategory& c, TwoCellId phi) {
  for (auto psi : c.two_cells_between(c.target(phi), c.source(phi))) {
    if (c.try_vcomp(psi, phi) == c.identity(c.source(phi)) && c.try_vcomp(phi, psi) == c.identity(c.target(phi))) return true;
  }
  return false;
}

}  // namespace

ValidationReport validate_bicategory(const TwoCategory& c) {
  ValidationReport r;
  Ops o{c};
  const auto n1 = static_cast<std::uint32_t>(c.one_cell_count());
  const auto n2 = static_cast<std::uint32_t>(c.two_cell_count());

  // totality
  for (std::uint32_t fi = 0; fi < n1; ++fi) {
    OneCellId f{fi};
    for (auto g : c.one_cells_from(c.target(f))) {
      if (!c.try_compose(g, f)) r.add("totality", "compose " + tuple_str({g.value, fi}));
      for (auto h : c.one_cells_from(c.target(g))) {
        if (!c.try_associator(h, g, f)) r.add("totality", "associator " + tuple_str({h.value, g.value, fi}));
      }
    }
    if (!c.try_left_unitor(f)) r.add("totality", "left unitor " + tuple_str({fi}));
    if (!c.try_right_unitor(f)) r.add("totality", "right unitor " + tuple_str({fi}));
  }
  for (std::uint32_t pi = 0; pi < n2; ++pi) {
    TwoCellId phi{pi};
    for (auto psi : c.two_cells_from(c.target(phi))) {
      if (!c.try_vcomp(psi, phi)) r.add("totality", "vcomp " + tuple_str({psi.value, pi}));
    }
    for (auto g : c.one_cells_from(c.target(c.source(phi)))) {
      if (!c.try_lwhisker(g, phi)) r.add("totality", "lwhisker " + tuple_str({g.value, pi}));
    }
    for (auto f : c.one_cells_to(c.source(c.source(phi)))) {
      if (!c.try_rwhisker(phi, f)) r.add("totality", "rwhisker " + tuple_str({pi, f.value}));
    }
  }

  // vertical category
  for (std::uint32_t pi = 0; pi < n2; ++pi) {
    TwoCellId phi{pi};
    expect(r, "identity", o.V(c.identity(c.target(phi)), phi), phi, {pi});
    expect(r, "identity", o.V(phi, c.identity(c.source(phi))), phi, {pi});
    for (auto psi : c.two_cells_from(c.target(phi))) {
      auto pp = o.V(psi, phi);
      for (auto chi : c.two_cells_from(c.target(psi))) {
        expect(r, "vertical-associativity", o.V(chi, pp), o.V(o.V(chi, psi), phi), {chi.value, psi.value, pi});
      }
    }
  }

  // whiskering is functorial
  for (std::uint32_t fi = 0; fi < n1; ++fi) {
    OneCellId f{fi};
    for (auto g : c.one_cells_from(c.target(f))) {
      expect(r, "whisker-functoriality", o.L(g, c.identity(f)), o.Id(o.C(g, f)), {g.value, fi, 0});
      expect(r, "whisker-functoriality", o.R(c.identity(g), f), o.Id(o.C(g, f)), {g.value, fi, 1});
    }
  }
  for (std::uint32_t pi = 0; pi < n2; ++pi) {
    TwoCellId phi{pi};
    auto x = c.source(c.source(phi));
    auto y = c.target(c.source(phi));
    for (auto psi : c.two_cells_from(c.target(phi))) {
      auto pp = o.V(psi, phi);
      for (auto g : c.one_cells_from(y)) {
        expect(r, "whisker-functoriality", o.L(g, pp), o.V(o.L(g, psi), o.L(g, phi)), {g.value, psi.value, pi});
      }
      for (auto f : c.one_cells_to(x)) {
        expect(r, "whisker-functoriality", o.R(pp, f), o.V(o.R(psi, f), o.R(phi, f)), {psi.value, pi, f.value});
      }
    }
  }

  // interchange: phi: f => f' (x -> y), psi: g => g' (y -> z)
  for (std::uint32_t pi = 0; pi < n2; ++pi) {
    TwoCellId phi{pi};
    auto f = c.source(phi);
    auto f2 = c.target(phi);
    for (auto g : c.one_cells_from(c.target(f))) {
      for (auto psi : c.two_cells_from(g)) {
        auto g2 = c.target(psi);
        expect(r, "interchange", o.V(o.R(psi, f2), o.L(g, phi)), o.V(o.L(g2, phi), o.R(psi, f)), {psi.value, pi});
      }
    }
  }

  // naturality of alpha, lambda, rho
  for (std::uint32_t pi = 0; pi < n2; ++pi) {
    TwoCellId phi{pi};
    OneCellId s = c.source(phi);
    OneCellId t = c.target(phi);
    auto x = c.source(s);
    auto y = c.target(s);
    expect(r, "naturality-lambda", o.V(c.try_left_unitor(t), o.L(c.identity(y), phi)),
           o.V(phi, c.try_left_unitor(s)), {pi});
    expect(r, "naturality-rho", o.V(c.try_right_unitor(t), o.R(phi, c.identity(x))), o.V(phi, c.try_right_unitor(s)), {pi});
    // phi in the rightmost slot
    for (auto g : c.one_cells_from(y)) {
      for (auto h : c.one_cells_from(c.target(g))) {
        expect(r, "naturality-alpha", o.V(o.A(h, g, t), o.L(h, o.L(g, phi))), o.V(o.L(o.C(h, g), phi), o.A(h, g, s)),
               {h.value, g.value, pi, 0});
      }
    }
    // phi in the middle slot
    for (auto f : c.one_cells_to(x)) {
      for (auto h : c.one_cells_from(y)) {
        expect(r, "naturality-alpha", o.V(o.A(h, t, f), o.L(h, o.R(phi, f))), o.V(o.R(o.L(h, phi), f), o.A(h, s, f)),
               {h.value, pi, f.value, 1});
      }
    }
    // phi in the leftmost slot
    for (auto g : c.one_cells_to(x)) {
      for (auto f : c.one_cells_to(c.source(g))) {
        expect(r, "naturality-alpha", o.V(o.A(t, g, f), o.R(phi, o.C(g, f))), o.V(o.R(o.R(phi, g), f), o.A(s, g, f)),
               {pi, g.value, f.value, 2});
      }
    }
  }

  // coherence cells are invertible; pentagon and triangle
  for (std::uint32_t fi = 0; fi < n1; ++fi) {
    OneCellId f{fi};
    if (auto l = c.try_left_unitor(f); l && !has_inverse(c, *l)) r.add("invertibility", "lambda " + tuple_str({fi}));
    if (auto p = c.try_right_unitor(f); p && !has_inverse(c, *p)) r.add("invertibility", "rho " + tuple_str({fi}));
    for (auto g : c.one_cells_from(c.target(f))) {
      // triangle: (rho_g * f) alpha_{g,id,f} = g * lambda_f
      auto id = c.identity(c.target(f));
      expect(r, "triangle", o.V(o.R(c.try_right_unitor(g), f), o.A(g, id, f)), o.L(g, c.try_left_unitor(f)), {g.value, fi});
      auto gf = o.C(g, f);
      for (auto h : c.one_cells_from(c.target(g))) {
        auto a = c.try_associator(h, g, f);
        if (a && !has_inverse(c, *a)) r.add("invertibility", "alpha " + tuple_str({h.value, g.value, fi}));
        auto hg = o.C(h, g);
        for (auto k : c.one_cells_from(c.target(h))) {
          auto lhs = o.V(o.A(o.C(k, h), g, f), o.A(k, h, gf));
          auto rhs = o.V(o.R(o.A(k, h, g), f), o.V(o.A(k, hg, f), o.L(k, a)));
          expect(r, "pentagon", lhs, rhs, {k.value, h.value, g.value, fi});
        }
      }
    }
  }
  return r;
}

bool is_strict(const TwoCategory& c) {
  const auto n1 = static_cast<std::uint32_t>(c.one_cell_count());
  auto is_id = [&](std::optional<TwoCellId> a) { return a && c.is_identity(*a); };
  for (std::uint32_t fi = 0; fi < n1; ++fi) {
    OneCellId f{fi};
    if (c.try_compose(c.identity(c.target(f)), f) != f || c.try_compose(f, c.identity(c.source(f))) != f) return false;
    if (!is_id(c.try_left_unitor(f)) || !is_id(c.try_right_unitor(f))) return false;
    for (auto g : c.one_cells_from(c.target(f))) {
      auto gf = c.try_compose(g, f);
      if (!gf) return false;
      for (auto h : c.one_cells_from(c.target(g))) {
        auto hg = c.try_compose(h, g);
        if (!hg || c.try_compose(h, *gf) != c.try_compose(*hg, f)) return false;
        if (!is_id(c.try_associator(h, g, f))) return false;
      }
    }
  }
  return true;
}

}  // namespace twobundle
