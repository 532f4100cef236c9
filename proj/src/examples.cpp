#include "twobundle/examples.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <unordered_map>

#include "twobundle/constructions.hpp"
#include "twobundle/error.hpp"
#include "twobundle/simplicial.hpp"

namespace twobundle {

ChainComplex2 normal_form_complex(std::uint32_t p, std::size_t b1, std::size_t dim_b, std::size_t b0) {
  ChainComplex2 c{p, b1 + dim_b, dim_b + b0, FpMatrix(p, dim_b + b0, b1 + dim_b)};
  for (std::size_t i = 0; i < dim_b; ++i) c.d.set(i, b1 + i, 1);
  return c;
}

bool is_chain_map(const ChainMap& f) {
  const auto& s = f.source;
  const auto& t = f.target;
  if (f.f1.rows() != t.c1 || f.f1.cols() != s.c1 || f.f0.rows() != t.c0 || f.f0.cols() != s.c0) return false;
  return f.f0 * s.d == t.d * f.f1;
}

ChainMap identity_chain_map(const ChainComplex2& c) {
  return ChainMap{c, c, FpMatrix::identity(c.p, c.c1), FpMatrix::identity(c.p, c.c0)};
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (!(f.target == g.source)) fail(Errc::index_mismatch, "chain maps are not composable");
  return ChainMap{f.source, g.target, g.f1 * f.f1, g.f0 * f.f0};
}

bool is_chain_homotopy(const ChainHomotopy& h) {
  const auto& f = h.from;
  const auto& g = h.to;
  if (!(f.source == g.source) || !(f.target == g.target)) return false;
  if (h.phi.rows() != f.target.c1 || h.phi.cols() != f.source.c0) return false;
  return f.f1 - g.f1 == h.phi * f.source.d && f.f0 - g.f0 == f.target.d * h.phi;
}

std::vector<FpMatrix> all_homotopies(const ChainMap& f, const ChainMap& g) {
  std::vector<FpMatrix> out;
  FpMatrix::for_each(f.source.p, f.target.c1, f.source.c0, [&](const FpMatrix& phi) {
    if (is_chain_homotopy({f, g, phi})) out.push_back(phi);
  });
  return out;
}

namespace {

// Extends the columns of `basis` by standard vectors to a basis of F_p^n.
FpMatrix extend_basis(const FpMatrix& basis, std::size_t n, std::uint32_t p) {
  std::vector<std::vector<long>> cols;
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    std::vector<long> v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = basis(r, c);
    cols.push_back(v);
  }
  auto as_matrix = [&](const std::vector<std::vector<long>>& cs) {
    FpMatrix m(p, n, cs.size());
    for (std::size_t c = 0; c < cs.size(); ++c)
      for (std::size_t r = 0; r < n; ++r) m.set(r, c, cs[c][r]);
    return m;
  };
  for (std::size_t e = 0; e < n && cols.size() < n; ++e) {
    auto trial = cols;
    std::vector<long> v(n, 0);
    v[e] = 1;
    trial.push_back(v);
    if (as_matrix(trial).rank() == trial.size()) cols = trial;
  }
  return as_matrix(cols);
}

FpMatrix columns(const FpMatrix& m, std::size_t c0, std::size_t nc) { return m.block(0, c0, m.rows(), nc); }

}  // namespace

BlockFrame block_frame(const ChainComplex2& c) {
  const auto p = c.p;
  const std::size_t r = c.d.rank();
  BlockFrame fr;
  fr.complex = c;
  fr.dim_b = r;
  fr.b1 = c.c1 - r;
  fr.b0 = c.c0 - r;
  // C_1: kernel first, then a complement; C_0: its image under d, then a complement.
  FpMatrix ker = c.d.kernel();
  fr.s1 = c.c1 == 0 ? FpMatrix(p, 0, 0) : extend_basis(ker, c.c1, p);
  FpMatrix image = c.d * columns(fr.s1, fr.b1, r);
  fr.s0 = c.c0 == 0 ? FpMatrix(p, 0, 0) : extend_basis(image, c.c0, p);
  fr.s1_inv = c.c1 == 0 ? fr.s1 : *fr.s1.inverse();
  fr.s0_inv = c.c0 == 0 ? fr.s0 : *fr.s0.inverse();
  return fr;
}

bool ChainMapBlocks::is_equivalence() const {
  auto invertible = [](const FpMatrix& m) { return m.rows() == m.cols() && m.rank() == m.rows(); };
  return invertible(h1_h1) && invertible(h0_h0);
}

ChainMapBlocks chain_map_blocks(const ChainMap& f, const BlockFrame& source, const BlockFrame& target) {
  if (!(source.complex == f.source) || !(target.complex == f.target)) fail(Errc::not_chain_map, "frames do not match the map");
  if (!is_chain_map(f)) fail(Errc::not_chain_map, "f0 d != d' f1");
  const auto F1 = target.s1_inv * f.f1 * source.s1;
  const auto F0 = target.s0_inv * f.f0 * source.s0;
  const auto b1 = source.b1, r = source.dim_b, b0 = source.b0;
  const auto b1t = target.b1, rt = target.dim_b, b0t = target.b0;
  if (!F1.block(b1t, 0, rt, b1).is_zero() || !F0.block(rt, 0, b0t, r).is_zero() ||
      F1.block(b1t, b1, rt, r) != F0.block(0, 0, rt, r))
    fail(Errc::not_chain_map, "block shape violated");
  return ChainMapBlocks{F1.block(0, 0, b1t, b1), F1.block(0, b1, b1t, r), F1.block(b1t, b1, rt, r), F0.block(0, r, rt, b0),
                        F0.block(rt, r, b0t, b0)};
}

ChainMap reassemble(const ChainMapBlocks& k, const BlockFrame& source, const BlockFrame& target) {
  const auto p = source.complex.p;
  auto F1 = FpMatrix::blocks({{k.h1_h1, k.b_h1}, {FpMatrix(p, target.dim_b, source.b1), k.b_b}});
  auto F0 = FpMatrix::blocks({{k.b_b, k.h0_b}, {FpMatrix(p, target.b0, source.dim_b), k.h0_h0}});
  return ChainMap{source.complex, target.complex, target.s1 * F1 * source.s1_inv, target.s0 * F0 * source.s0_inv};
}

HomotopyBlocks homotopy_blocks(const FpMatrix& phi, const BlockFrame& source, const BlockFrame& target) {
  const auto P = target.s1_inv * phi * source.s0;
  const auto r = source.dim_b, b0 = source.b0, b1t = target.b1, rt = target.dim_b;
  return HomotopyBlocks{P.block(0, 0, b1t, r), P.block(0, r, b1t, b0), P.block(b1t, 0, rt, r), P.block(b1t, r, rt, b0)};
}

std::string to_string(BCVariant v) {
  switch (v) {
    case BCVariant::strict: return "strict";
    case BCVariant::weak: return "weak";
    case BCVariant::eq: return "eq";
    case BCVariant::ad: return "ad";
  }
  return "?";
}

std::optional<BCVariant> parse_variant(const std::string& s) {
  for (auto v : {BCVariant::strict, BCVariant::weak, BCVariant::eq, BCVariant::ad})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

namespace {

void push(std::vector<std::uint32_t>& key, const FpMatrix& m) {
  key.push_back(static_cast<std::uint32_t>(m.rows()));
  key.push_back(static_cast<std::uint32_t>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) key.push_back(m(r, c));
}

std::vector<std::uint32_t> one_key(const BCOneCell& x) {
  std::vector<std::uint32_t> key{x.source, x.target};
  push(key, x.f.f1);
  push(key, x.f.f0);
  if (x.fbar) {
    push(key, x.fbar->f1);
    push(key, x.fbar->f0);
    push(key, x.iota);
    push(key, x.eps);
  }
  return key;
}

std::vector<std::uint32_t> two_key(const BCTwoCell& x) {
  std::vector<std::uint32_t> key{x.source.value, x.target.value};
  push(key, x.phi);
  push(key, x.phibar);
  return key;
}

using KeyIndex = std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VectorHash>;

std::vector<FpMatrix> all_matrices(std::uint32_t p, std::size_t rows, std::size_t cols, std::size_t bound) {
  double count = 1;
  for (std::size_t i = 0; i < rows * cols; ++i) count *= p;
  if (count > static_cast<double>(bound)) fail(Errc::size_limit, "matrix space too large");
  std::vector<FpMatrix> out;
  FpMatrix::for_each(p, rows, cols, [&](const FpMatrix& m) { out.push_back(m); });
  return out;
}

// Homotopies f => g between maps of normal-form complexes: everything is forced except the
// H_0 -> H'_1 block, which is free.
std::vector<FpMatrix> nf_homotopies(const ChainMap& f, const ChainMap& g, std::size_t b1, std::size_t b0, std::size_t r,
                                    std::size_t rt, const std::vector<FpMatrix>& free_blocks) {
  const auto d1 = f.f1 - g.f1;  // (b1 + rt) x (b1 + r)
  const auto d0 = f.f0 - g.f0;  // (rt + b0) x (r + b0)
  if (!columns(d1, 0, b1).is_zero() || !d0.block(rt, 0, b0, r + b0).is_zero() ||
      d0.block(0, 0, rt, r) != d1.block(b1, b1, rt, r))
    return {};
  std::vector<FpMatrix> out;
  for (const auto& y : free_blocks) {
    auto phi = FpMatrix::blocks({{d1.block(0, b1, b1, r), y}, {d1.block(b1, b1, rt, r), d0.block(0, r, rt, b0)}});
    out.push_back(phi);
  }
  return out;
}

}  // namespace

struct BCIndex {
  KeyIndex ones, twos;
};

namespace {

void reindex(BCInstance& b) {
  auto idx = std::make_shared<BCIndex>();
  for (std::uint32_t i = 0; i < b.one_cells.size(); ++i) idx->ones.emplace(one_key(b.one_cells[i]), i);
  for (std::uint32_t i = 0; i < b.two_cells.size(); ++i) idx->twos.emplace(two_key(b.two_cells[i]), i);
  b.index = std::move(idx);
}

}  // namespace

std::optional<OneCellId> BCInstance::find_one_cell(const BCOneCell& cell) const {
  if (!index) return std::nullopt;
  auto it = index->ones.find(one_key(cell));
  if (it == index->ones.end()) return std::nullopt;
  return OneCellId{it->second};
}

std::optional<TwoCellId> BCInstance::find_two_cell(const BCTwoCell& cell) const {
  if (!index) return std::nullopt;
  auto it = index->twos.find(two_key(cell));
  if (it == index->twos.end()) return std::nullopt;
  return TwoCellId{it->second};
}

std::optional<std::uint32_t> BCInstance::object_with_dim_b(std::size_t r) const {
  for (std::uint32_t x = 0; x < dim_b.size(); ++x)
    if (dim_b[x] == r) return x;
  return std::nullopt;
}

BCInstance build_2B(const BCOptions& o) {
  if (!is_prime(o.p) || o.p > 251) fail(Errc::index_mismatch, "p must be a prime below 256");
  const bool paired = o.variant == BCVariant::eq || o.variant == BCVariant::ad;
  if (o.literal_epsilon && !(paired && o.scope == BCScope::single))
    fail(Errc::index_mismatch, "the literal epsilon rule is only typed for a single object");
  const auto p = o.p;
  const auto b1 = o.b1, b0 = o.b0;
  BCInstance out;
  out.options = o;
  for (std::size_t r = o.scope == BCScope::single ? o.dim_b_bound : 0; r <= o.dim_b_bound; ++r) {
    out.objects.push_back(normal_form_complex(p, b1, r, b0));
    out.dim_b.push_back(r);
  }
  const auto n = static_cast<std::uint32_t>(out.objects.size());
  const auto bound = o.cell_bound;
  auto over = [&](std::size_t count, const char* what) {
    if (count > bound) fail(Errc::size_limit, std::string("more than ") + std::to_string(bound) + " " + what);
  };

  // Chain maps between normal forms are [[A, X], [0, Z]] and [[Z, W], [0, D]].
  const auto gl1 = general_linear_elements(b1, p), gl0 = general_linear_elements(b0, p);
  const auto all1 = all_matrices(p, b1, b1, bound), all0 = all_matrices(p, b0, b0, bound);
  auto chain_maps = [&](std::uint32_t s, std::uint32_t t, bool equivalence) {
    const auto r = out.dim_b[s], rt = out.dim_b[t];
    std::vector<ChainMap> maps;
    const auto xs = all_matrices(p, b1, r, bound), zs = all_matrices(p, rt, r, bound), ws = all_matrices(p, rt, b0, bound);
    const auto& as = equivalence ? gl1 : all1;
    const auto& ds = equivalence ? gl0 : all0;
    over(as.size() * xs.size() * zs.size() * ws.size() * ds.size(), "chain maps");
    for (const auto& a : as)
      for (const auto& x : xs)
        for (const auto& z : zs) {
          if (o.variant == BCVariant::strict && (r != rt || z.rank() != r)) continue;
          for (const auto& w : ws)
            for (const auto& dd : ds) {
              ChainMap f{out.objects[s], out.objects[t], FpMatrix::blocks({{a, x}, {FpMatrix(p, rt, b1), z}}),
                         FpMatrix::blocks({{z, w}, {FpMatrix(p, b0, r), dd}})};
              maps.push_back(std::move(f));
            }
        }
    return maps;
  };
  const auto free_blocks = all_matrices(p, b1, b0, bound);
  auto homotopies = [&](const ChainMap& f, const ChainMap& g, std::uint32_t s, std::uint32_t t) {
    return nf_homotopies(f, g, b1, b0, out.dim_b[s], out.dim_b[t], free_blocks);
  };

  std::vector<std::vector<std::vector<std::uint32_t>>> between(n, std::vector<std::vector<std::uint32_t>>(n));
  for (std::uint32_t s = 0; s < n; ++s)
    for (std::uint32_t t = 0; t < n; ++t) {
      if (!paired) {
        for (auto& f : chain_maps(s, t, true)) {
          between[s][t].push_back(static_cast<std::uint32_t>(out.one_cells.size()));
          out.one_cells.push_back(BCOneCell{s, t, std::move(f), std::nullopt, {}, {}});
          over(out.one_cells.size(), "1-cells");
        }
        continue;
      }
      const auto fs = chain_maps(s, t, false), gs = chain_maps(t, s, false);
      const auto id_s = identity_chain_map(out.objects[s]), id_t = identity_chain_map(out.objects[t]);
      for (const auto& f : fs)
        for (const auto& fb : gs) {
          const auto iotas = homotopies(id_t, compose(f, fb), t, t);
          if (iotas.empty()) continue;
          const auto epss = homotopies(compose(fb, f), id_s, s, s);
          for (const auto& iota : iotas)
            for (const auto& eps : epss) {
              if (o.variant == BCVariant::ad &&
                  (!(f.f1 * eps + iota * f.f0).is_zero() || !(eps * fb.f0 + fb.f1 * iota).is_zero()))
                continue;
              between[s][t].push_back(static_cast<std::uint32_t>(out.one_cells.size()));
              out.one_cells.push_back(BCOneCell{s, t, f, fb, iota, eps});
              over(out.one_cells.size(), "1-cells");
            }
        }
    }

  // 2-cells, grouped by (source, target) 1-cell.
  for (std::uint32_t s = 0; s < n; ++s)
    for (std::uint32_t t = 0; t < n; ++t)
      for (auto fi : between[s][t])
        for (auto gi : between[s][t]) {
          const auto& f = out.one_cells[fi];
          const auto& g = out.one_cells[gi];
          const auto phis = homotopies(f.f, g.f, s, t);
          if (!paired) {
            for (const auto& phi : phis) out.two_cells.push_back(BCTwoCell{OneCellId{fi}, OneCellId{gi}, phi, {}});
          } else if (!phis.empty()) {
            for (const auto& phibar : homotopies(*f.fbar, *g.fbar, t, s))
              for (const auto& phi : phis) {
                if (g.iota - f.iota != f.f.f1 * phibar + phi * g.fbar->f0) continue;
                const auto rhs = o.literal_epsilon ? f.f.f1 * phibar + phi * g.fbar->f0 : f.fbar->f1 * phi + phibar * g.f.f0;
                if (f.eps - g.eps != rhs) continue;
                out.two_cells.push_back(BCTwoCell{OneCellId{fi}, OneCellId{gi}, phi, phibar});
              }
          }
          over(out.two_cells.size(), "2-cells");
        }
  reindex(out);

  auto need_one = [&](const BCOneCell& x) {
    auto id = out.find_one_cell(x);
    if (!id) fail(Errc::coherence_failure, "composite 1-cell outside the instance");
    return *id;
  };
  auto need_two = [&](const BCTwoCell& x, const char* what) {
    auto id = out.find_two_cell(x);
    if (!id) fail(Errc::coherence_failure, std::string(what) + " leaves the 2-cells");
    return *id;
  };
  auto compose_cells = [&](const BCOneCell& g, const BCOneCell& f) {
    BCOneCell h{f.source, g.target, compose(g.f, f.f), std::nullopt, {}, {}};
    if (paired) {
      h.fbar = compose(*f.fbar, *g.fbar);
      h.iota = g.iota + g.f.f1 * f.iota * g.fbar->f0;
      h.eps = f.eps + f.fbar->f1 * g.eps * f.f.f0;
    }
    return h;
  };

  TwoCategory::Builder bld;
  bld.set_name("2B_" + to_string(o.variant) + "(" + std::to_string(b1) + "," + std::to_string(b0) + ",F" + std::to_string(p) +
               ",dimB" + (o.scope == BCScope::single ? "=" : "<=") + std::to_string(o.dim_b_bound) + ")");
  for (std::uint32_t x = 0; x < n; ++x) bld.add_object();
  for (const auto& f : out.one_cells) bld.add_one_cell(ObjectId{f.source}, ObjectId{f.target});
  for (const auto& a : out.two_cells) bld.add_two_cell(a.source, a.target);
  std::vector<OneCellId> id_one(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    BCOneCell e{x, x, identity_chain_map(out.objects[x]), std::nullopt, {}, {}};
    if (paired) {
      e.fbar = e.f;
      e.iota = e.eps = FpMatrix(p, out.objects[x].c1, out.objects[x].c0);
    }
    id_one[x] = need_one(e);
    bld.set_identity(ObjectId{x}, id_one[x]);
  }
  auto zero_between = [&](const BCOneCell& f, std::uint32_t fi) {
    BCTwoCell z{OneCellId{fi}, OneCellId{fi}, FpMatrix(p, out.objects[f.target].c1, out.objects[f.source].c0), {}};
    if (paired) z.phibar = FpMatrix(p, out.objects[f.source].c1, out.objects[f.target].c0);
    return z;
  };
  for (std::uint32_t fi = 0; fi < out.one_cells.size(); ++fi)
    bld.set_identity(OneCellId{fi}, need_two(zero_between(out.one_cells[fi], fi), "identity"));

  std::vector<std::vector<std::uint32_t>> from(n);
  for (std::uint32_t fi = 0; fi < out.one_cells.size(); ++fi) from[out.one_cells[fi].source].push_back(fi);
  std::vector<std::vector<std::uint32_t>> two_from(out.one_cells.size());
  for (std::uint32_t a = 0; a < out.two_cells.size(); ++a) two_from[out.two_cells[a].source.value].push_back(a);

  for (std::uint32_t fi = 0; fi < out.one_cells.size(); ++fi)
    for (auto gi : from[out.one_cells[fi].target])
      bld.set_compose(OneCellId{gi}, OneCellId{fi}, need_one(compose_cells(out.one_cells[gi], out.one_cells[fi])));

  for (std::uint32_t a = 0; a < out.two_cells.size(); ++a) {
    const auto& x = out.two_cells[a];
    for (auto b : two_from[x.target.value]) {
      const auto& y = out.two_cells[b];
      bld.set_vcomp(TwoCellId{b}, TwoCellId{a},
                    need_two(BCTwoCell{x.source, y.target, x.phi + y.phi, paired ? x.phibar + y.phibar : FpMatrix{}},
                             "vertical composition"));
    }
    const auto& f = out.one_cells[x.source.value];
    const auto& f2 = out.one_cells[x.target.value];
    for (auto gi : from[f.target]) {
      const auto& g = out.one_cells[gi];
      BCTwoCell w{need_one(compose_cells(g, f)), need_one(compose_cells(g, f2)), g.f.f1 * x.phi,
                  paired ? x.phibar * g.fbar->f0 : FpMatrix{}};
      bld.set_lwhisker(OneCellId{gi}, TwoCellId{a}, need_two(w, "left whiskering"));
    }
    for (std::uint32_t hi = 0; hi < out.one_cells.size(); ++hi) {
      const auto& h = out.one_cells[hi];
      if (h.target != f.source) continue;
      BCTwoCell w{need_one(compose_cells(f, h)), need_one(compose_cells(f2, h)), x.phi * h.f.f0,
                  paired ? h.fbar->f1 * x.phibar : FpMatrix{}};
      bld.set_rwhisker(TwoCellId{a}, OneCellId{hi}, need_two(w, "right whiskering"));
    }
  }
  out.cat = std::move(bld).build();
  return out;
}

HoInstance quotient_to_Ho(const BCInstance& b) {
  const auto& c = b.cat;
  const auto b1 = b.options.b1, b0 = b.options.b0;
  HoInstance ho;
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VectorHash> cls;
  ho.class_of.resize(b.two_cells.size());
  for (std::uint32_t a = 0; a < b.two_cells.size(); ++a) {
    auto x = b.two_cells[a];
    const auto& f = b.one_cells[x.source.value];
    auto forget = [&](FpMatrix& m, std::size_t col0) {
      for (std::size_t r = 0; r < b1; ++r)
        for (std::size_t k = 0; k < b0; ++k) m.set(r, col0 + k, 0);
    };
    forget(x.phi, b.dim_b[f.source]);
    if (f.fbar) forget(x.phibar, b.dim_b[f.target]);
    auto [it, fresh] = cls.emplace(two_key(x), static_cast<std::uint32_t>(ho.members.size()));
    if (fresh) ho.members.emplace_back();
    ho.class_of[a] = TwoCellId{it->second};
    ho.members[it->second].push_back(TwoCellId{a});
  }

  TwoCategory::Builder bld;
  bld.set_name(c.name() + "^Ho");
  for (std::size_t x = 0; x < c.object_count(); ++x) bld.add_object();
  for (std::uint32_t f = 0; f < c.one_cell_count(); ++f) bld.add_one_cell(c.source(OneCellId{f}), c.target(OneCellId{f}));
  for (const auto& m : ho.members) bld.add_two_cell(c.source(m.front()), c.target(m.front()));
  for (std::uint32_t x = 0; x < c.object_count(); ++x) bld.set_identity(ObjectId{x}, c.identity(ObjectId{x}));
  for (std::uint32_t f = 0; f < c.one_cell_count(); ++f) {
    OneCellId fi{f};
    bld.set_identity(fi, ho.class_of[c.identity(fi).value]);
    for (auto g : c.one_cells_from(c.target(fi))) bld.set_compose(g, fi, c.compose(g, fi));
  }
  // Each composite on classes is read off every pair of representatives.
  std::map<std::tuple<int, std::uint32_t, std::uint32_t>, std::uint32_t> seen;
  auto record = [&](int op, std::uint32_t x, std::uint32_t y, TwoCellId result) {
    ++ho.composites_checked;
    auto r = ho.class_of[result.value].value;
    auto [it, fresh] = seen.emplace(std::make_tuple(op, x, y), r);
    if (!fresh && it->second != r) ++ho.ill_defined;
    return fresh;
  };
  for (std::uint32_t a = 0; a < c.two_cell_count(); ++a) {
    TwoCellId phi{a};
    const auto ca = ho.class_of[a];
    for (auto psi : c.two_cells_from(c.target(phi))) {
      auto r = c.vcomp(psi, phi);
      if (record(0, ho.class_of[psi.value].value, ca.value, r)) bld.set_vcomp(ho.class_of[psi.value], ca, ho.class_of[r.value]);
    }
    for (auto g : c.one_cells_from(c.target(c.source(phi)))) {
      auto r = c.lwhisker(g, phi);
      if (record(1, g.value, ca.value, r)) bld.set_lwhisker(g, ca, ho.class_of[r.value]);
    }
    for (auto h : c.one_cells_to(c.source(c.source(phi)))) {
      auto r = c.rwhisker(phi, h);
      if (record(2, ca.value, h.value, r)) bld.set_rwhisker(ca, h, ho.class_of[r.value]);
    }
  }
  ho.cat = std::move(bld).build();
  return ho;
}

namespace {

FpMatrix h1_block(const BCInstance& b, const BCOneCell& f) { return f.f.f1.block(0, 0, b.options.b1, b.options.b1); }
FpMatrix h0_block(const BCInstance& b, const BCOneCell& f) {
  return f.f.f0.block(b.dim_b[f.target], b.dim_b[f.source], b.options.b0, b.options.b0);
}

}  // namespace

HomologyCheck homology_functor(const BCInstance& b) {
  const auto p = b.options.p;
  const auto b1 = b.options.b1, b0 = b.options.b0;
  auto zero = b.object_with_dim_b(0);
  if (!zero) fail(Errc::index_mismatch, "the instance has no complex with B = 0");
  const auto gl1 = general_linear_elements(b1, p), gl0 = general_linear_elements(b0, p);
  const auto group = product_monoid(general_linear_group(b1, p), general_linear_group(b0, p));
  HomologyCheck out;
  out.target = delooping(group);
  out.elements = group.order;
  auto element = [&](const FpMatrix& a, const FpMatrix& d) -> std::optional<std::uint32_t> {
    auto i = std::lower_bound(gl1.begin(), gl1.end(), a);
    auto j = std::lower_bound(gl0.begin(), gl0.end(), d);
    if (i == gl1.end() || *i != a || j == gl0.end() || *j != d) return std::nullopt;
    return static_cast<std::uint32_t>((i - gl1.begin()) * gl0.size() + (j - gl0.begin()));
  };
  const auto& c = b.cat;
  for (const auto& f : b.one_cells) {
    auto e = element(h1_block(b, f), h0_block(b, f));
    if (!e) fail(Errc::coherence_failure, "a 1-cell is not invertible on homology");
    out.h.push_back(*e);
  }
  for (std::uint32_t fi = 0; fi < c.one_cell_count(); ++fi) {
    OneCellId f{fi};
    for (auto g : c.one_cells_from(c.target(f)))
      if (out.h[c.compose(g, f).value] != group.mul(out.h[g.value], out.h[fi])) ++out.functor_failures;
  }
  for (std::uint32_t x = 0; x < c.object_count(); ++x)
    if (out.h[c.identity(ObjectId{x}).value] != group.unit) ++out.functor_failures;
  for (std::uint32_t a = 0; a < c.two_cell_count(); ++a)
    if (out.h[c.source(TwoCellId{a}).value] != out.h[c.target(TwoCellId{a}).value]) ++out.functor_failures;

  const bool paired = b.options.variant == BCVariant::eq || b.options.variant == BCVariant::ad;
  const auto& obj = b.objects[*zero];
  for (std::size_t x = 0; x < group.order; ++x) {
    const auto& a = gl1[x / gl0.size()];
    const auto& d = gl0[x % gl0.size()];
    BCOneCell cell{*zero, *zero, ChainMap{obj, obj, a, d}, std::nullopt, {}, {}};
    if (paired) {
      cell.fbar = ChainMap{obj, obj, *a.inverse(), *d.inverse()};
      cell.iota = cell.eps = FpMatrix(p, obj.c1, obj.c0);
    }
    auto id = b.find_one_cell(cell);
    if (!id) fail(Errc::coherence_failure, "an automorphism of the B = 0 complex is missing");
    out.i.push_back(*id);
    if (out.h[id->value] != x) ++out.hi_failures;
  }
  for (std::size_t x = 0; x < group.order; ++x)
    for (std::size_t y = 0; y < group.order; ++y)
      if (c.compose(out.i[x], out.i[y]) != out.i[group.mul(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y))])
        ++out.functor_failures;
  return out;
}

SigmaData sigma_data(const BCInstance& b) {
  if (b.options.variant != BCVariant::weak) fail(Errc::index_mismatch, "sigma is built for the weak variant");
  auto zero = b.object_with_dim_b(0);
  if (!zero) fail(Errc::index_mismatch, "the instance has no complex with B = 0");
  const auto p = b.options.p;
  const auto b1 = b.options.b1, b0 = b.options.b0;
  const auto& h = b.objects[*zero];
  SigmaData out;
  for (std::uint32_t x = 0; x < b.objects.size(); ++x) {
    const auto r = b.dim_b[x];
    ChainMap proj{b.objects[x], h, FpMatrix::blocks({{FpMatrix::identity(p, b1), FpMatrix(p, b1, r)}}),
                  FpMatrix::blocks({{FpMatrix(p, b0, r), FpMatrix::identity(p, b0)}})};
    auto id = b.find_one_cell(BCOneCell{x, *zero, proj, std::nullopt, {}, {}});
    if (!id) fail(Errc::coherence_failure, "projection to homology missing");
    out.projection.push_back(*id);
  }
  for (const auto& f : b.one_cells) {
    auto id = b.find_one_cell(BCOneCell{*zero, *zero, ChainMap{h, h, h1_block(b, f), h0_block(b, f)}, std::nullopt, {}, {}});
    if (!id) fail(Errc::coherence_failure, "iH(f) missing");
    out.ih.push_back(*id);
  }
  return out;
}

namespace {

TwoCellId sigma_raw(const BCInstance& b, const SigmaData& sd, OneCellId fi) {
  const auto& c = b.cat;
  const auto& f = b.one_cells[fi.value];
  const auto b1 = b.options.b1, b0 = b.options.b0;
  const auto r = b.dim_b[f.source];
  auto phi = FpMatrix::blocks({{f.f.f1.block(0, b1, b1, r), FpMatrix(b.options.p, b1, b0)}});
  BCTwoCell x{c.compose(sd.projection[f.target], fi), c.compose(sd.ih[fi.value], sd.projection[f.source]), phi, {}};
  auto id = b.find_two_cell(x);
  if (!id) fail(Errc::coherence_failure, "sigma component missing");
  return *id;
}

}  // namespace

TwoCellId sigma_component(const BCInstance& b, OneCellId f) { return sigma_raw(b, sigma_data(b), f); }

TwoCellId sigma_component(const BCInstance& b, const HoInstance& ho, OneCellId f) {
  return ho.class_of[sigma_component(b, f).value];
}

SigmaReport verify_sigma_colax(const BCInstance& b, const HoInstance* ho, std::optional<std::size_t> sample, std::uint64_t seed) {
  const auto sd = sigma_data(b);
  const auto& raw = b.cat;
  const TwoCategory& c = ho ? ho->cat : b.cat;
  std::vector<TwoCellId> sigma;
  for (std::uint32_t f = 0; f < raw.one_cell_count(); ++f) {
    auto s = sigma_raw(b, sd, OneCellId{f});
    sigma.push_back(ho ? ho->class_of[s.value] : s);
  }
  SigmaReport rep;
  for (std::uint32_t x = 0; x < raw.object_count(); ++x) {
    auto e = raw.identity(ObjectId{x});
    if (sigma[e.value] != c.identity(c.source(sigma[e.value]))) rep.normalized = false;
  }
  auto check = [&](OneCellId g, OneCellId f) {
    ++rep.pairs;
    auto lhs = sigma[raw.compose(g, f).value];
    auto rhs = c.vcomp(c.lwhisker(sd.ih[g.value], sigma[f.value]), c.rwhisker(sigma[g.value], f));
    if (lhs != rhs) {
      ++rep.failures;
      if (!rep.witness) rep.witness = std::make_pair(g, f);
    }
  };
  if (sample) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(raw.one_cell_count() - 1));
    for (std::size_t k = 0; k < *sample; ++k) {
      OneCellId f{pick(rng)};
      auto next = raw.one_cells_from(raw.target(f));
      std::uniform_int_distribution<std::size_t> pg(0, next.size() - 1);
      check(next[pg(rng)], f);
    }
    return rep;
  }
  std::size_t pairs = 0;
  for (std::uint32_t f = 0; f < raw.one_cell_count(); ++f) pairs += raw.one_cells_from(raw.target(OneCellId{f})).size();
  if (pairs > b.options.cell_bound) fail(Errc::size_limit, "too many composable pairs for an exhaustive check");
  for (std::uint32_t f = 0; f < raw.one_cell_count(); ++f)
    for (auto g : raw.one_cells_from(raw.target(OneCellId{f}))) check(g, OneCellId{f});
  return rep;
}

long integer_determinant(const std::vector<std::vector<long>>& m) {
  const auto n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<long>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(row);
    }
    det += (j % 2 == 0 ? 1 : -1) * m[0][j] * integer_determinant(minor);
  }
  return det;
}

KVSkeleton kv_skeleton(std::size_t n, long entry_bound) {
  if (n == 0) fail(Errc::index_mismatch, "kv_skeleton needs n >= 1");
  if (entry_bound < 1) fail(Errc::index_mismatch, "entry bound must admit the identity");
  double space = 1;
  for (std::size_t i = 0; i < n * n; ++i) space *= static_cast<double>(entry_bound + 1);
  if (space > 1e7) fail(Errc::size_limit, "matrix space too large");
  KVSkeleton out;
  std::vector<long> e(n * n, 0);
  auto as_matrix = [&](const std::vector<long>& flat) {
    std::vector<std::vector<long>> m(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n * n; ++i) m[i / n][i % n] = flat[i];
    return m;
  };
  while (true) {
    auto m = as_matrix(e);
    auto det = integer_determinant(m);
    if (det == 1 || det == -1) out.matrices.push_back(m);
    std::size_t i = n * n;
    while (i > 0 && e[i - 1] == entry_bound) e[--i] = 0;
    if (i == 0) break;
    ++e[i - 1];
  }
  std::map<std::vector<std::vector<long>>, std::uint32_t> index;
  for (std::uint32_t k = 0; k < out.matrices.size(); ++k) index.emplace(out.matrices[k], k);

  TwoCategory::Builder b;
  b.set_name("KV(" + std::to_string(n) + ",<=" + std::to_string(entry_bound) + ")");
  auto x = b.add_object();
  for (std::uint32_t k = 0; k < out.matrices.size(); ++k) {
    b.add_one_cell(x, x);
    b.add_two_cell(OneCellId{k}, OneCellId{k});
    b.set_identity(OneCellId{k}, TwoCellId{k});
    b.set_vcomp(TwoCellId{k}, TwoCellId{k}, TwoCellId{k});
  }
  std::vector<std::vector<long>> unit(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) unit[i][i] = 1;
  b.set_identity(x, OneCellId{index.at(unit)});
  for (std::uint32_t g = 0; g < out.matrices.size(); ++g)
    for (std::uint32_t f = 0; f < out.matrices.size(); ++f) {
      // g * f is the product f g.
      const auto& A = out.matrices[f];
      const auto& B = out.matrices[g];
      std::vector<std::vector<long>> prod(n, std::vector<long>(n, 0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) prod[i][j] += A[i][k] * B[k][j];
      auto it = index.find(prod);
      if (it == index.end()) {
        ++out.undefined_products;
        continue;
      }
      b.set_compose(OneCellId{g}, OneCellId{f}, OneCellId{it->second});
      b.set_lwhisker(OneCellId{g}, TwoCellId{f}, TwoCellId{it->second});
      b.set_rwhisker(TwoCellId{g}, OneCellId{f}, TwoCellId{it->second});
    }
  out.cat = std::move(b).build();
  return out;
}

}  // namespace twobundle
