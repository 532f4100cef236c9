#include "twobundle/bundle.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <cmath>

#include "twobundle/adjoint.hpp"
#include "twobundle/error.hpp"

namespace twobundle {

namespace {

std::string chain_name(const CombinatorialBase& k, const std::vector<int>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += "<";
    out += std::to_string(k.label(s[i]));
  }
  return out;
}

void check_shape(const Bundle& b) {
  if (!b.structure) fail(Errc::index_mismatch, "bundle has no structure 2-category");
  if (b.V.size() != b.base.count(0) || b.E.size() != b.base.count(1) || b.phi.size() != b.base.count(2))
    fail(Errc::index_mismatch, "bundle tables do not match the base");
}

// alpha (E_cd * phi_abc) phi_acd == (phi_bcd * E_ab) phi_abd
bool tetra_commutes(const TwoCategory& c, OneCellId ab, OneCellId bc, OneCellId cd, TwoCellId abc, TwoCellId abd,
                    TwoCellId acd, TwoCellId bcd) {
  auto lw = c.try_lwhisker(cd, abc);
  auto a = c.try_associator(cd, bc, ab);
  auto rw = c.try_rwhisker(bcd, ab);
  if (!lw || !a || !rw) return false;
  auto left = c.try_vcomp(*lw, acd);
  auto right = c.try_vcomp(*rw, abd);
  if (!left || !right) return false;
  auto full = c.try_vcomp(*a, *left);
  return full && *full == *right;
}

NerveSimplex simplex_impl(const Bundle& b, const std::vector<int>& seq, const InverseTable& inv) {
  const TwoCategory& c = *b.structure;
  const int n = static_cast<int>(seq.size()) - 1;
  NerveSimplex s = NerveSimplex::blank(n);
  for (int i = 0; i <= n; ++i) s.objects[i] = b.V[seq[i]];
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) s.set_edge(i, j, seq[i] == seq[j] ? c.identity(s.objects[i]) : b.edge(seq[i], seq[j]));
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        TwoCellId phi;
        if (seq[i] == seq[j]) phi = inv(c.right_unitor(s.edge(j, k)));
        else if (seq[j] == seq[k]) phi = inv(c.left_unitor(s.edge(i, j)));
        else phi = b.triangle(seq[i], seq[j], seq[k]);
        s.set_triangle(i, j, k, phi);
      }
  return s;
}

// Dense simplex lookups for the search loops.
struct Index {
  int n = 0;
  std::vector<std::uint32_t> edge;      // n*n
  std::vector<std::uint32_t> triangle;  // n*n*n

  explicit Index(const CombinatorialBase& k) : n(static_cast<int>(k.vertex_count())) {
    edge.assign(static_cast<std::size_t>(n) * n, kAbsent);
    triangle.assign(static_cast<std::size_t>(n) * n * n, kAbsent);
    for (std::uint32_t e = 0; e < k.count(1); ++e) {
      const auto& s = k.simplices(1)[e];
      edge[s[0] * n + s[1]] = e;
    }
    if (k.dimension() >= 2)
      for (std::uint32_t t = 0; t < k.count(2); ++t) {
        const auto& s = k.simplices(2)[t];
        triangle[(static_cast<std::size_t>(s[0]) * n + s[1]) * n + s[2]] = t;
      }
  }
  std::uint32_t e(int a, int b) const { return edge[a * n + b]; }
  std::uint32_t t(int a, int b, int c) const { return triangle[(static_cast<std::size_t>(a) * n + b) * n + c]; }
};

}  // namespace

OneCellId Bundle::edge(int a, int b) const {
  auto i = base.index_of({a, b});
  if (!i) fail(Errc::index_mismatch, "no edge " + chain_name(base, {a, b}));
  return E[*i];
}

TwoCellId Bundle::triangle(int a, int b, int c) const {
  auto i = base.index_of({a, b, c});
  if (!i) fail(Errc::index_mismatch, "no triangle " + chain_name(base, {a, b, c}));
  return phi[*i];
}

bool Bundle::operator==(const Bundle& o) const {
  return base == o.base && structure == o.structure && V == o.V && E == o.E && phi == o.phi;
}

Bundle blank_bundle(StructurePtr structure, const CombinatorialBase& base) {
  Bundle b;
  b.base = base;
  b.structure = std::move(structure);
  b.V.assign(base.count(0), ObjectId{kAbsent});
  b.E.assign(base.count(1), OneCellId{kAbsent});
  b.phi.assign(base.dimension() >= 2 ? base.count(2) : 0, TwoCellId{kAbsent});
  return b;
}

Bundle trivial_bundle(StructurePtr structure, const CombinatorialBase& base, ObjectId x) {
  Bundle b = blank_bundle(structure, base);
  const TwoCategory& c = *structure;
  if (x.value >= c.object_count()) fail(Errc::index_mismatch, "object out of range");
  auto id = c.identity(x);
  std::fill(b.V.begin(), b.V.end(), x);
  std::fill(b.E.begin(), b.E.end(), id);
  if (!b.phi.empty()) std::fill(b.phi.begin(), b.phi.end(), vertical_inverse(c, c.left_unitor(id)));
  return b;
}

ValidationReport validate_bundle(const Bundle& b) {
  check_shape(b);
  const TwoCategory& c = *b.structure;
  const auto& k = b.base;
  ValidationReport r;
  for (std::size_t v = 0; v < b.V.size(); ++v) {
    if (b.V[v].value >= c.object_count()) r.add("object", "vertex " + std::to_string(k.label(static_cast<int>(v))));
  }
  if (!r.ok()) return r;
  std::vector<bool> edge_ok(b.E.size(), false);
  for (std::size_t e = 0; e < b.E.size(); ++e) {
    const auto& s = k.simplices(1)[e];
    auto f = b.E[e];
    edge_ok[e] = f.value < c.one_cell_count() && c.source(f) == b.V[s[0]] && c.target(f) == b.V[s[1]];
    if (!edge_ok[e]) r.add("edge-boundary", chain_name(k, s));
  }
  std::vector<bool> tri_ok(b.phi.size(), false);
  for (std::size_t t = 0; t < b.phi.size(); ++t) {
    const auto& s = k.simplices(2)[t];
    auto ab = *k.index_of({s[0], s[1]}), bc = *k.index_of({s[1], s[2]}), ac = *k.index_of({s[0], s[2]});
    if (!edge_ok[ab] || !edge_ok[bc] || !edge_ok[ac]) continue;
    auto phi = b.phi[t];
    tri_ok[t] = phi.value < c.two_cell_count() && c.source(phi) == b.E[ac] && c.try_compose(b.E[bc], b.E[ab]) == c.target(phi);
    if (!tri_ok[t]) r.add("triangle-boundary", chain_name(k, s));
  }
  if (k.dimension() >= 3)
    for (const auto& s : k.simplices(3)) {
      auto tri = [&](int i, int j, int l) { return *k.index_of({s[i], s[j], s[l]}); };
      auto t012 = tri(0, 1, 2), t013 = tri(0, 1, 3), t023 = tri(0, 2, 3), t123 = tri(1, 2, 3);
      if (!tri_ok[t012] || !tri_ok[t013] || !tri_ok[t023] || !tri_ok[t123]) continue;
      if (!tetra_commutes(c, b.edge(s[0], s[1]), b.edge(s[1], s[2]), b.edge(s[2], s[3]), b.phi[t012], b.phi[t013],
                          b.phi[t023], b.phi[t123]))
        r.add("tetrahedron", chain_name(k, s));
    }
  return r;
}

NerveSimplex bundle_simplex(const Bundle& b, const std::vector<int>& sequence) {
  check_shape(b);
  return simplex_impl(b, sequence, InverseTable(*b.structure));
}

SimplicialMap bundle_to_simplicial_map(const Bundle& b, const OrderedNerve& cech, const DuskinNerve& nerve) {
  check_shape(b);
  InverseTable inv(*b.structure);
  const int top = std::min(cech.sset.max_dim(), nerve.max_dim());
  SimplicialMap m;
  m.images.resize(top + 1);
  for (int k = 0; k <= top; ++k)
    for (const auto& seq : cech.sequences[k]) {
      auto id = nerve.find(simplex_impl(b, seq, inv));
      m.images[k].push_back(id ? *id : kAbsent);
    }
  return m;
}

Bundle simplicial_map_to_bundle(const SimplicialMap& m, const OrderedNerve& cech, const DuskinNerve& nerve,
                                const CombinatorialBase& base, StructurePtr structure) {
  Bundle b = blank_bundle(std::move(structure), base);
  auto image = [&](const std::vector<int>& seq) -> const NerveSimplex& {
    const int k = static_cast<int>(seq.size()) - 1;
    if (k >= static_cast<int>(m.images.size())) fail(Errc::index_mismatch, "map is truncated below the base dimension");
    const auto& all = cech.sequences[k];
    auto it = std::lower_bound(all.begin(), all.end(), seq);
    if (it == all.end() || *it != seq) fail(Errc::index_mismatch, "sequence is not a simplex of the Cech complex");
    auto z = m.images[k][it - all.begin()];
    if (z >= nerve.size(k)) fail(Errc::index_mismatch, "image outside the nerve");
    return nerve.simplex(k, z);
  };
  for (int v = 0; v < static_cast<int>(b.V.size()); ++v) b.V[v] = image({v}).objects[0];
  for (std::size_t e = 0; e < b.E.size(); ++e) b.E[e] = image(base.simplices(1)[e]).edge(0, 1);
  for (std::size_t t = 0; t < b.phi.size(); ++t) b.phi[t] = image(base.simplices(2)[t]).triangle(0, 1, 2);
  return b;
}

Bundle pullback(const Bundle& b, const BaseMap& f) {
  check_shape(b);
  if (!(f.target == b.base)) fail(Errc::index_mismatch, "map does not land in the bundle's base");
  check_base_map(f);
  InverseTable inv(*b.structure);
  Bundle out = blank_bundle(b.structure, f.source);
  for (std::size_t v = 0; v < out.V.size(); ++v) out.V[v] = b.V[f.image[v]];
  for (std::size_t e = 0; e < out.E.size(); ++e) out.E[e] = simplex_impl(b, f.apply(f.source.simplices(1)[e]), inv).edge(0, 1);
  for (std::size_t t = 0; t < out.phi.size(); ++t)
    out.phi[t] = simplex_impl(b, f.apply(f.source.simplices(2)[t]), inv).triangle(0, 1, 2);
  return out;
}

Bundle restrict_bundle(const Bundle& b, const CombinatorialBase& sub) { return pullback(b, inclusion(sub, b.base)); }

Bundle glue(const Bundle& bx, const Bundle& bb, const BaseMap& f) {
  check_shape(bx);
  check_shape(bb);
  if (bx.structure != bb.structure) fail(Errc::index_mismatch, "bundles have different structure 2-categories");
  if (!(f.target == bb.base)) fail(Errc::index_mismatch, "attaching map does not land in the second base");
  check_base_map(f);
  const auto& X = bx.base;
  const auto& A = f.source;
  const auto& B = bb.base;
  if (!X.contains_subcomplex(A)) fail(Errc::not_subcomplex, "attaching domain is not an ordered subcomplex of the first base");
  {
    auto img = f.image;
    std::sort(img.begin(), img.end());
    if (std::adjacent_find(img.begin(), img.end()) != img.end()) fail(Errc::index_mismatch, "attaching map must be injective");
  }
  if (!(pullback(bb, f) == restrict_bundle(bx, A))) fail(Errc::mismatch_on_a, "the bundles disagree on the attaching domain");

  // Vertices of the pushout carry the labels of B, plus the labels of X off A.
  std::map<long, long> q;  // X label -> Y label
  for (int r = 0; r < static_cast<int>(X.vertex_count()); ++r) {
    long l = X.label(r);
    auto a = A.rank_of(l);
    q[l] = a ? B.label(f.image[*a]) : l;
  }
  std::set<long> y_labels(B.labels().begin(), B.labels().end());
  for (int r = 0; r < static_cast<int>(X.vertex_count()); ++r) {
    long l = X.label(r);
    if (A.rank_of(l)) continue;
    if (!y_labels.insert(l).second) fail(Errc::index_mismatch, "label " + std::to_string(l) + " occurs in both pieces");
  }

  std::vector<std::vector<long>> cells;
  std::map<long, std::set<long>> after;
  auto add = [&](std::vector<long> s) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) after[s[i]].insert(s[i + 1]);
    cells.push_back(std::move(s));
  };
  for (int d = 0; d <= X.dimension(); ++d)
    for (const auto& s : X.simplices(d)) {
      std::vector<long> img;
      for (long l : X.to_labels(s)) img.push_back(q[l]);
      add(img);
    }
  for (int d = 0; d <= B.dimension(); ++d)
    for (const auto& s : B.simplices(d)) add(B.to_labels(s));

  // Smallest-label-first topological sort.
  std::map<long, int> indeg;
  for (long l : y_labels) indeg[l] = 0;
  for (const auto& [u, vs] : after)
    for (long v : vs) ++indeg[v];
  std::priority_queue<long, std::vector<long>, std::greater<>> ready;
  for (const auto& [l, d] : indeg) {
    if (d == 0) ready.push(l);
  }
  std::vector<long> order;
  while (!ready.empty()) {
    long u = ready.top();
    ready.pop();
    order.push_back(u);
    for (long v : after[u]) {
      if (--indeg[v] == 0) ready.push(v);
    }
  }
  if (order.size() != y_labels.size()) fail(Errc::order_conflict, "no vertex order is compatible with both pieces");

  Bundle out = blank_bundle(bx.structure, CombinatorialBase::from_simplices(order, cells));
  const auto& Y = out.base;
  std::map<long, long> back;  // Y label -> X label for vertices coming from X
  for (const auto& [xl, yl] : q) back[yl] = xl;
  InverseTable inv(*bx.structure);
  auto data = [&](const Simplex& s) {
    auto labels = Y.to_labels(s);
    if (std::all_of(labels.begin(), labels.end(), [&](long l) { return B.rank_of(l).has_value(); })) {
      auto bs = B.from_labels(labels);
      if (B.contains(bs)) return simplex_impl(bb, bs, inv);
    }
    std::vector<long> xl;
    for (long l : labels) xl.push_back(back.at(l));
    return simplex_impl(bx, X.from_labels(xl), inv);
  };
  for (std::size_t v = 0; v < out.V.size(); ++v) out.V[v] = data({static_cast<int>(v)}).objects[0];
  for (std::size_t e = 0; e < out.E.size(); ++e) out.E[e] = data(Y.simplices(1)[e]).edge(0, 1);
  for (std::size_t t = 0; t < out.phi.size(); ++t) out.phi[t] = data(Y.simplices(2)[t]).triangle(0, 1, 2);
  return out;
}

namespace {

enum class Next { more, stop, next_lead };

// Backtracking over the absent entries. The simplices in `lead` are assigned first; a leaf answering
// next_lead abandons the rest of the current lead assignment.
void search_extensions(const Bundle& partial, std::size_t bound, const std::vector<Simplex>& lead,
                       const std::function<Next(const Bundle&)>& fn) {
  check_shape(partial);
  const TwoCategory& c = *partial.structure;
  const auto& k = partial.base;
  Index idx(k);
  const std::size_t nv = partial.V.size(), ne = partial.E.size(), nt = partial.phi.size();

  // Variable order: maximal simplices one at a time, each contributing its
  // missing vertices and edges, every edge followed by the triangles it completes. A tetrahedron is
  // checked at whichever of its faces comes last, so the search closes tetrahedra early.
  enum Kind { kVertex, kEdge, kTriangle };
  struct Var {
    Kind kind;
    std::uint32_t index;
  };
  std::vector<Var> order;
  std::size_t lead_end = 0;
  std::vector<int> vertex_pos(nv, -1), edge_pos(ne, -1), tri_pos(nt, -1);
  std::vector<std::vector<std::uint32_t>> tris_of_edge(ne);
  for (std::uint32_t t = 0; t < nt; ++t) {
    const auto& s = k.simplices(2)[t];
    for (auto e : {idx.e(s[0], s[1]), idx.e(s[0], s[2]), idx.e(s[1], s[2])}) tris_of_edge[e].push_back(t);
  }
  auto place = [&](const Simplex& s) {
    for (int v : s) {
      if (vertex_pos[v] < 0) {
        vertex_pos[v] = static_cast<int>(order.size());
        order.push_back({kVertex, static_cast<std::uint32_t>(v)});
      }
    }
    std::vector<std::pair<int, int>> es;
    for (std::size_t j = 1; j < s.size(); ++j)
      for (std::size_t i = 0; i < j; ++i) es.emplace_back(s[i], s[j]);
    for (auto [a, b2] : es) {
      auto e = idx.e(a, b2);
      if (edge_pos[e] >= 0) continue;
      edge_pos[e] = static_cast<int>(order.size());
      order.push_back({kEdge, e});
      for (auto t : tris_of_edge[e]) {
        const auto& f = k.simplices(2)[t];
        if (tri_pos[t] < 0 && edge_pos[idx.e(f[0], f[1])] >= 0 && edge_pos[idx.e(f[0], f[2])] >= 0 &&
            edge_pos[idx.e(f[1], f[2])] >= 0) {
          tri_pos[t] = static_cast<int>(order.size());
          order.push_back({kTriangle, t});
        }
      }
    }
  };
  {
    // Greedy: next maximal simplex is the one leaving the fewest free variables still tied to
    // unplaced ones. With both ends of a prism fixed this sweeps from one end to the other.
    const std::size_t total = nv + ne + nt;
    const auto E0 = static_cast<std::uint32_t>(nv), T0 = static_cast<std::uint32_t>(nv + ne);
    std::vector<std::vector<std::uint32_t>> near(total);
    auto link = [&](std::initializer_list<std::uint32_t> vars) {
      for (auto x : vars)
        for (auto y : vars)
          if (x != y) near[x].push_back(y);
    };
    for (std::uint32_t e = 0; e < ne; ++e) {
      const auto& f = k.simplices(1)[e];
      link({static_cast<std::uint32_t>(f[0]), static_cast<std::uint32_t>(f[1]), E0 + e});
    }
    for (std::uint32_t t = 0; t < nt; ++t) {
      const auto& f = k.simplices(2)[t];
      link({E0 + idx.e(f[0], f[1]), E0 + idx.e(f[1], f[2]), E0 + idx.e(f[0], f[2]), T0 + t});
    }
    for (const auto& f : k.simplices(3))
      link({E0 + idx.e(f[0], f[1]), E0 + idx.e(f[1], f[2]), E0 + idx.e(f[2], f[3]), T0 + idx.t(f[0], f[1], f[2]),
            T0 + idx.t(f[0], f[1], f[3]), T0 + idx.t(f[0], f[2], f[3]), T0 + idx.t(f[1], f[2], f[3])});
    // A free variable weighs the log of a bound on its choices; fixed ones weigh nothing.
    std::size_t out1 = 1, out2 = 1;
    {
      std::vector<std::size_t> n1(c.object_count(), 0), n2(c.one_cell_count(), 0);
      for (std::uint32_t f = 0; f < c.one_cell_count(); ++f) out1 = std::max(out1, ++n1[c.source(OneCellId{f}).value]);
      for (std::uint32_t a = 0; a < c.two_cell_count(); ++a) out2 = std::max(out2, ++n2[c.source(TwoCellId{a}).value]);
    }
    const double wv = std::log(std::max<double>(c.object_count(), 1)), we = std::log(out1), wt = std::log(out2);
    std::vector<double> weight(total, 0.0);
    for (std::size_t v = 0; v < nv; ++v) weight[v] = partial.V[v].value == kAbsent ? wv : 0;
    for (std::size_t e = 0; e < ne; ++e) weight[E0 + e] = partial.E[e].value == kAbsent ? we : 0;
    for (std::size_t t = 0; t < nt; ++t) weight[T0 + t] = partial.phi[t].value == kAbsent ? wt : 0;

    auto faces_of = [&](const Simplex& m) {
      std::vector<std::uint32_t> out;
      for (int v : m) out.push_back(static_cast<std::uint32_t>(v));
      for (std::size_t j = 1; j < m.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
          out.push_back(E0 + idx.e(m[i], m[j]));
          for (std::size_t l = j + 1; l < m.size(); ++l) out.push_back(T0 + idx.t(m[i], m[j], m[l]));
        }
      return out;
    };
    auto maximal = k.maximal_simplices();
    std::vector<std::vector<std::uint32_t>> faces;
    for (const auto& m : maximal) faces.push_back(faces_of(m));
    std::vector<char> placed(total, 0), done(maximal.size(), 0);
    for (const auto& m : lead) {
      for (auto x : faces_of(m)) placed[x] = 1;
      place(m);
    }
    lead_end = order.size();
    for (std::size_t step = 0; step < maximal.size(); ++step) {
      std::size_t best = maximal.size(), best_shared = 0;
      double best_frontier = 0;
      for (std::size_t o = 0; o < maximal.size(); ++o) {
        if (done[o]) continue;
        auto trial = placed;
        std::size_t shared = 0;
        for (auto x : faces[o]) {
          shared += trial[x];
          trial[x] = 1;
        }
        double frontier = 0;
        for (std::size_t x = 0; x < total; ++x) {
          if (!trial[x] || weight[x] == 0) continue;
          for (auto y : near[x])
            if (!trial[y]) {
              frontier += weight[x];
              break;
            }
        }
        if (best == maximal.size() || frontier < best_frontier - 1e-9 ||
            (frontier < best_frontier + 1e-9 && shared > best_shared)) {
          best = o;
          best_frontier = frontier;
          best_shared = shared;
        }
      }
      done[best] = 1;
      for (auto x : faces[best]) placed[x] = 1;
      place(maximal[best]);
    }
  }
  std::vector<std::vector<std::array<std::uint32_t, 7>>> tetra(nt);  // ab, bc, cd, abc, abd, acd, bcd
  if (k.dimension() >= 3)
    for (const auto& s : k.simplices(3)) {
      std::array<std::uint32_t, 7> q{idx.e(s[0], s[1]), idx.e(s[1], s[2]), idx.e(s[2], s[3]), idx.t(s[0], s[1], s[2]),
                                     idx.t(s[0], s[1], s[3]), idx.t(s[0], s[2], s[3]), idx.t(s[1], s[2], s[3])};
      auto last = *std::max_element(q.begin() + 3, q.end(), [&](auto x, auto y) { return tri_pos[x] < tri_pos[y]; });
      tetra[last].push_back(q);
    }

  // Subtrees without leaves are remembered by the values of the placed variables that later
  // constraints still read; the frontier of a prism is small, so negative searches stay cheap.
  const std::size_t total = nv + ne + nt;
  auto gid = [&](const Var& v) -> std::uint32_t {
    return v.kind == kVertex ? v.index : v.kind == kEdge ? static_cast<std::uint32_t>(nv) + v.index
                                                           : static_cast<std::uint32_t>(nv + ne) + v.index;
  };
  std::vector<int> pos_of(total, -1), last_use(total, -1);
  for (std::size_t p = 0; p < order.size(); ++p) pos_of[gid(order[p])] = static_cast<int>(p);
  auto constraint = [&](std::initializer_list<std::uint32_t> vars) {
    int m = -1;
    for (auto v : vars) m = std::max(m, pos_of[v]);
    for (auto v : vars) last_use[v] = std::max(last_use[v], m);
  };
  const auto E0 = static_cast<std::uint32_t>(nv), T0 = static_cast<std::uint32_t>(nv + ne);
  for (std::uint32_t e = 0; e < ne; ++e) {
    const auto& s = k.simplices(1)[e];
    constraint({static_cast<std::uint32_t>(s[0]), static_cast<std::uint32_t>(s[1]), E0 + e});
  }
  for (std::uint32_t t = 0; t < nt; ++t) {
    const auto& s = k.simplices(2)[t];
    constraint({E0 + idx.e(s[0], s[1]), E0 + idx.e(s[1], s[2]), E0 + idx.e(s[0], s[2]), T0 + t});
  }
  for (const auto& list : tetra)
    for (const auto& q : list) constraint({E0 + q[0], E0 + q[1], E0 + q[2], T0 + q[3], T0 + q[4], T0 + q[5], T0 + q[6]});
  std::vector<std::vector<std::uint32_t>> live(order.size() + 1);
  for (std::size_t p = 0; p <= order.size(); ++p)
    for (std::size_t q = 0; q < p; ++q) {
      auto v = gid(order[q]);
      if (last_use[v] >= static_cast<int>(p)) live[p].push_back(v);
    }
  std::vector<std::unordered_set<std::vector<std::uint32_t>, VectorHash>> failed(order.size() + 1);

  Bundle b = partial;
  auto value = [&](std::uint32_t v) {
    return v < E0 ? b.V[v].value : v < T0 ? b.E[v - E0].value : b.phi[v - T0].value;
  };
  std::size_t nodes = 0;
  bool stop = false, cutting = false;
  auto halted = [&](std::size_t pos) {
    if (cutting && pos < lead_end) cutting = false;
    return stop || cutting;
  };
  auto tick = [&] {
    if (++nodes > bound) fail(Errc::size_limit, "bundle search exceeds " + std::to_string(bound) + " nodes");
  };
  std::vector<ObjectId> all_objects;
  for (std::uint32_t x = 0; x < c.object_count(); ++x) all_objects.push_back(ObjectId{x});

  std::function<bool(std::size_t)> step = [&](std::size_t pos) -> bool {
    if (stop) return false;
    if (pos == order.size()) {
      switch (fn(b)) {
        case Next::stop: stop = true; break;
        case Next::next_lead: cutting = lead_end > 0; stop = lead_end == 0; break;
        case Next::more: break;
      }
      return true;
    }
    std::vector<std::uint32_t> key;
    key.reserve(live[pos].size());
    for (auto v : live[pos]) key.push_back(value(v));
    if (failed[pos].count(key)) return false;

    bool any = false;
    const auto [kind, var] = order[pos];
    if (kind == kVertex) {
      auto fixed = partial.V[var];
      if (fixed.value != kAbsent) {
        if (fixed.value < c.object_count()) {
          tick();
          any = step(pos + 1);
        }
      } else {
        for (auto x : all_objects) {
          tick();
          b.V[var] = x;
          any = step(pos + 1) || any;
          if (halted(pos)) break;
        }
        b.V[var] = ObjectId{kAbsent};
      }
    } else if (kind == kEdge) {
      const auto& s = k.simplices(1)[var];
      auto fixed = partial.E[var];
      if (fixed.value != kAbsent) {
        if (fixed.value < c.one_cell_count() && c.source(fixed) == b.V[s[0]] && c.target(fixed) == b.V[s[1]]) {
          tick();
          any = step(pos + 1);
        }
      } else {
        for (auto f : c.one_cells_between(b.V[s[0]], b.V[s[1]])) {
          tick();
          b.E[var] = f;
          any = step(pos + 1) || any;
          if (halted(pos)) break;
        }
        b.E[var] = OneCellId{kAbsent};
      }
    } else {
      const auto& s = k.simplices(2)[var];
      auto src = b.E[idx.e(s[0], s[2])];
      auto tgt = c.try_compose(b.E[idx.e(s[1], s[2])], b.E[idx.e(s[0], s[1])]);
      auto attempt = [&](TwoCellId phi) {
        tick();
        b.phi[var] = phi;
        for (const auto& q : tetra[var]) {
          if (!tetra_commutes(c, b.E[q[0]], b.E[q[1]], b.E[q[2]], b.phi[q[3]], b.phi[q[4]], b.phi[q[5]], b.phi[q[6]]))
            return false;
        }
        return step(pos + 1);
      };
      auto fixed = partial.phi[var];
      if (!tgt) {
      } else if (fixed.value != kAbsent) {
        if (fixed.value < c.two_cell_count() && c.source(fixed) == src && c.target(fixed) == *tgt) any = attempt(fixed);
      } else {
        for (auto phi : c.two_cells_between(src, *tgt)) {
          any = attempt(phi) || any;
          if (halted(pos)) break;
        }
        b.phi[var] = TwoCellId{kAbsent};
      }
    }
    if (!any && !stop) failed[pos].insert(std::move(key));
    return any;
  };
  step(0);
}

}  // namespace

void for_each_extension(const Bundle& partial, std::size_t bound, const std::function<bool(const Bundle&)>& fn) {
  search_extensions(partial, bound, {}, [&](const Bundle& b) { return fn(b) ? Next::more : Next::stop; });
}

std::vector<Bundle> enumerate_bundles(StructurePtr structure, const CombinatorialBase& base, std::size_t bound) {
  std::vector<Bundle> out;
  for_each_extension(blank_bundle(std::move(structure), base), bound, [&](const Bundle& b) {
    out.push_back(b);
    if (out.size() > bound) fail(Errc::size_limit, "more than " + std::to_string(bound) + " bundles");
    return true;
  });
  return out;
}

namespace {

// Positions of the end copies of the base's vertices, edges and triangles inside the prism.
struct EndSlots {
  std::vector<std::size_t> v, e, t;
};

EndSlots end_slots(const CombinatorialBase& k, const Prism& p, const BaseMap& end) {
  EndSlots out;
  for (std::size_t v = 0; v < k.vertex_count(); ++v) out.v.push_back(static_cast<std::size_t>(end.image[v]));
  for (const auto& s : k.simplices(1)) out.e.push_back(*p.complex.index_of(end.apply(s)));
  for (const auto& s : k.simplices(2)) out.t.push_back(*p.complex.index_of(end.apply(s)));
  return out;
}

void fill_end(Bundle& partial, const Bundle& src, const EndSlots& at) {
  for (std::size_t v = 0; v < at.v.size(); ++v) partial.V[at.v[v]] = src.V[v];
  for (std::size_t e = 0; e < at.e.size(); ++e) partial.E[at.e[e]] = src.E[e];
  for (std::size_t t = 0; t < at.t.size(); ++t) partial.phi[at.t[t]] = src.phi[t];
}

std::vector<std::uint32_t> end_key(const Bundle& b, const EndSlots& at) {
  std::vector<std::uint32_t> key;
  for (auto v : at.v) key.push_back(b.V[v].value);
  for (auto e : at.e) key.push_back(b.E[e].value);
  for (auto t : at.t) key.push_back(b.phi[t].value);
  return key;
}

std::vector<std::uint32_t> bundle_key(const Bundle& b) {
  std::vector<std::uint32_t> key;
  for (auto x : b.V) key.push_back(x.value);
  for (auto x : b.E) key.push_back(x.value);
  for (auto x : b.phi) key.push_back(x.value);
  return key;
}

}  // namespace

std::optional<Concordance> elementary_concordant(const Bundle& b0, const Bundle& b1, std::size_t bound) {
  check_shape(b0);
  check_shape(b1);
  if (!(b0.base == b1.base) || b0.structure != b1.structure) fail(Errc::index_mismatch, "bundles live over different data");
  Prism p = prism(b0.base);
  Bundle partial = blank_bundle(b0.structure, p.complex);
  fill_end(partial, b0, end_slots(b0.base, p, p.bottom));
  fill_end(partial, b1, end_slots(b0.base, p, p.top));
  std::optional<Concordance> out;
  for_each_extension(partial, bound, [&](const Bundle& b) {
    out = Concordance{p, b};
    return false;
  });
  return out;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

ConcordanceClasses concordance_classes(std::vector<Bundle> bundles, std::size_t bound) {
  ConcordanceClasses out;
  const std::size_t n = bundles.size();
  DisjointSets ds(n);
  if (n > 0) {
    const auto& k = bundles[0].base;
    for (const auto& b : bundles) {
      check_shape(b);
      if (!(b.base == k) || b.structure != bundles[0].structure) fail(Errc::index_mismatch, "bundles live over different data");
    }
    std::unordered_map<std::vector<std::uint32_t>, std::size_t, VectorHash> by_key;
    for (std::size_t j = 0; j < n; ++j) by_key.emplace(bundle_key(bundles[j]), j);
    Prism p = prism(k);
    const auto bottom = end_slots(k, p, p.bottom), top = end_slots(k, p, p.top);
    std::vector<Simplex> lead;
    for (const auto& m : k.maximal_simplices()) lead.push_back(p.top.apply(m));
    // One search per bundle: bottom fixed, top assigned first, every reachable top recorded.
    for (std::size_t i = 0; i < n; ++i) {
      Bundle partial = blank_bundle(bundles[i].structure, p.complex);
      fill_end(partial, bundles[i], bottom);
      ++out.prism_searches;
      search_extensions(partial, bound, lead, [&](const Bundle& b) {
        auto it = by_key.find(end_key(b, top));
        if (it != by_key.end()) ds.unite(i, it->second);
        return Next::next_lead;
      });
    }
  }
  out.class_of.assign(n, 0);
  std::map<std::size_t, std::size_t> cls;
  for (std::size_t i = 0; i < n; ++i) {
    auto root = ds.find(i);
    auto [it, fresh] = cls.emplace(root, out.representatives.size());
    if (fresh) {
      out.representatives.push_back(i);
      out.members.emplace_back();
    }
    out.class_of[i] = it->second;
    out.members[it->second].push_back(i);
  }
  out.bundles = std::move(bundles);
  return out;
}

ConcordanceClasses concordance_classes(StructurePtr structure, const CombinatorialBase& base, std::size_t bound) {
  return concordance_classes(enumerate_bundles(std::move(structure), base, bound), bound);
}

FreeTwoCategory free_two_category_2XU(int indices, const std::vector<std::vector<int>>& chains, int length_bound,
                                      std::size_t bound) {
  std::set<std::vector<int>> admissible;
  for (const auto& ch : chains) {
    if (!std::is_sorted(ch.begin(), ch.end()) || std::adjacent_find(ch.begin(), ch.end()) != ch.end())
      fail(Errc::index_mismatch, "chains must be strictly increasing");
    for (int v : ch) {
      if (v < 0 || v >= indices) fail(Errc::index_mismatch, "chain index out of range");
    }
    // downward closure
    const std::size_t m = ch.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
      std::vector<int> sub;
      for (std::size_t i = 0; i < m; ++i) {
        if (mask >> i & 1) sub.push_back(ch[i]);
      }
      admissible.insert(sub);
    }
  }

  struct Word {
    std::string text;
    std::vector<int> chain;
    int length;
    OneCellId g{kAbsent}, f{kAbsent};
  };
  std::vector<Word> words;
  std::map<std::string, std::uint32_t> by_text;
  std::vector<std::vector<std::uint32_t>> by_length(std::max(length_bound, 0) + 1);
  auto push = [&](Word w) {
    if (words.size() >= bound) fail(Errc::size_limit, "2X_U exceeds " + std::to_string(bound) + " 1-cells");
    auto id = static_cast<std::uint32_t>(words.size());
    by_text.emplace(w.text, id);
    by_length[w.length].push_back(id);
    words.push_back(std::move(w));
  };
  auto gen_name = [](int a, int b) { return "x[" + std::to_string(a) + "," + std::to_string(b) + "]"; };
  for (int a = 0; a < indices; ++a) push(Word{"id[" + std::to_string(a) + "]", {a}, 0});
  std::vector<OneCellId> generators;
  if (length_bound >= 1)
    for (const auto& ch : admissible) {
      if (ch.size() != 2) continue;
      generators.push_back(OneCellId{static_cast<std::uint32_t>(words.size())});
      push(Word{gen_name(ch[0], ch[1]), ch, 1});
    }
  auto merged = [](const std::vector<int>& x, const std::vector<int>& y) {
    std::vector<int> m;
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(m));
    return m;
  };
  for (int len = 2; len <= length_bound; ++len)
    for (int lg = 1; lg < len; ++lg)
      for (auto gi : by_length[lg])
        for (auto fi : by_length[len - lg]) {
          const auto& g = words[gi];
          const auto& f = words[fi];
          if (g.chain.front() != f.chain.back()) continue;
          auto ch = merged(f.chain, g.chain);
          if (!admissible.count(ch)) continue;
          push(Word{"(" + g.text + "*" + f.text + ")", ch, len, OneCellId{gi}, OneCellId{fi}});
        }

  TwoCategory::Builder bld;
  bld.set_name("2X_U");
  for (int a = 0; a < indices; ++a) bld.add_object();
  for (const auto& w : words) bld.add_one_cell(ObjectId{static_cast<std::uint32_t>(w.chain.front())},
                                               ObjectId{static_cast<std::uint32_t>(w.chain.back())});
  for (int a = 0; a < indices; ++a) bld.set_identity(ObjectId{static_cast<std::uint32_t>(a)}, OneCellId{static_cast<std::uint32_t>(a)});

  auto compose = [&](std::uint32_t g, std::uint32_t f) -> std::optional<std::uint32_t> {
    if (words[g].chain.front() != words[f].chain.back()) return std::nullopt;
    if (words[g].length == 0) return f;
    if (words[f].length == 0) return g;
    auto it = by_text.find("(" + words[g].text + "*" + words[f].text + ")");
    if (it == by_text.end()) return std::nullopt;
    return it->second;
  };
  auto refines = [&](std::uint32_t f, std::uint32_t g) {
    return words[f].chain.front() == words[g].chain.front() && words[f].chain.back() == words[g].chain.back() &&
           std::includes(words[g].chain.begin(), words[g].chain.end(), words[f].chain.begin(), words[f].chain.end());
  };

  std::vector<std::vector<std::uint32_t>> between(static_cast<std::size_t>(indices) * indices);
  for (std::uint32_t w = 0; w < words.size(); ++w) between[words[w].chain.front() * indices + words[w].chain.back()].push_back(w);
  std::unordered_map<std::uint64_t, std::uint32_t> cell;
  auto key = [&](std::uint32_t f, std::uint32_t g) { return static_cast<std::uint64_t>(f) * words.size() + g; };
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ends;
  for (const auto& group : between)
    for (auto f : group)
      for (auto g : group) {
        if (!refines(f, g)) continue;
        auto id = bld.add_two_cell(OneCellId{f}, OneCellId{g});
        cell.emplace(key(f, g), id.value);
        ends.emplace_back(f, g);
        if (cell.size() > bound) fail(Errc::size_limit, "2X_U exceeds " + std::to_string(bound) + " 2-cells");
      }
  auto two = [&](std::uint32_t f, std::uint32_t g) { return TwoCellId{cell.at(key(f, g))}; };
  for (std::uint32_t f = 0; f < words.size(); ++f) bld.set_identity(OneCellId{f}, two(f, f));

  for (std::uint32_t g = 0; g < words.size(); ++g)
    for (std::uint32_t f = 0; f < words.size(); ++f) {
      if (auto gf = compose(g, f)) bld.set_compose(OneCellId{g}, OneCellId{f}, OneCellId{*gf});
    }
  for (std::uint32_t phi = 0; phi < ends.size(); ++phi) {
    auto [f, g] = ends[phi];
    for (auto h : between[words[g].chain.front() * indices + words[g].chain.back()]) {
      if (refines(g, h)) bld.set_vcomp(two(g, h), TwoCellId{phi}, two(f, h));
    }
    const int x = words[f].chain.front(), y = words[f].chain.back();
    for (std::uint32_t k = 0; k < words.size(); ++k) {
      if (words[k].chain.front() == y) {
        auto kf = compose(k, f), kg = compose(k, g);
        if (kf && kg) bld.set_lwhisker(OneCellId{k}, TwoCellId{phi}, two(*kf, *kg));
      }
      if (words[k].chain.back() == x) {
        auto fk = compose(f, k), gk = compose(g, k);
        if (fk && gk) bld.set_rwhisker(TwoCellId{phi}, OneCellId{k}, two(*fk, *gk));
      }
    }
  }
  for (std::uint32_t h = 0; h < words.size(); ++h)
    for (std::uint32_t g = 0; g < words.size(); ++g) {
      auto hg = compose(h, g);
      if (!hg) continue;
      for (std::uint32_t f = 0; f < words.size(); ++f) {
        auto gf = compose(g, f);
        if (!gf) continue;
        auto l = compose(h, *gf), r = compose(*hg, f);
        if (l && r) bld.set_associator(OneCellId{h}, OneCellId{g}, OneCellId{f}, two(*l, *r));
      }
    }

  FreeTwoCategory out;
  out.cat = std::move(bld).build();
  for (auto& w : words) {
    out.words.push_back(w.text);
    out.chains.push_back(w.chain);
    out.factors.emplace_back(w.g, w.f);
  }
  out.generators = std::move(generators);
  return out;
}

FreeTwoCategory free_two_category_2XU(const CombinatorialBase& base) {
  std::vector<std::vector<int>> chains;
  for (const auto& s : base.maximal_simplices()) chains.push_back(s);
  return free_two_category_2XU(static_cast<int>(base.vertex_count()), chains, std::max(base.dimension(), 1));
}

StrictFunctorData bundle_to_strict_functor(const Bundle& b, const FreeTwoCategory& free) {
  check_shape(b);
  const TwoCategory& c = *b.structure;
  const auto& k = b.base;
  if (free.cat.object_count() != k.vertex_count()) fail(Errc::index_mismatch, "free 2-category has the wrong index set");
  StrictFunctorData out;
  out.objects = b.V;
  out.one_cells.resize(free.words.size());
  for (std::size_t w = 0; w < free.words.size(); ++w) {
    const auto& ch = free.chains[w];
    auto [g, f] = free.factors[w];
    if (ch.size() == 1) {
      out.one_cells[w] = c.identity(b.V[ch[0]]);
    } else if (g.value == kAbsent) {
      out.one_cells[w] = b.edge(ch[0], ch[1]);
    } else {
      auto gf = c.try_compose(out.one_cells[g.value], out.one_cells[f.value]);
      if (!gf) fail(Errc::coherence_failure, "images of " + free.words[w] + " are not composable");
      out.one_cells[w] = *gf;
    }
  }
  for (std::size_t t = 0; t < b.phi.size(); ++t) {
    const auto& s = k.simplices(2)[t];
    auto phi = b.phi[t];
    if (phi.value >= c.two_cell_count() || c.source(phi) != b.edge(s[0], s[2]) ||
        c.try_compose(b.edge(s[1], s[2]), b.edge(s[0], s[1])) != c.target(phi))
      fail(Errc::coherence_failure, "generator x_" + chain_name(k, s) + " has the wrong boundary");
    out.generator_two_cells.push_back(phi);
  }
  if (k.dimension() >= 3)
    for (const auto& s : k.simplices(3)) {
      ++out.tetrahedra_checked;
      if (!tetra_commutes(c, b.edge(s[0], s[1]), b.edge(s[1], s[2]), b.edge(s[2], s[3]), b.triangle(s[0], s[1], s[2]),
                          b.triangle(s[0], s[1], s[3]), b.triangle(s[0], s[2], s[3]), b.triangle(s[1], s[2], s[3])))
        fail(Errc::coherence_failure, "tetrahedron " + chain_name(k, s) + " does not commute");
    }
  return out;
}

StrictFunctorData bundle_to_strict_functor(const Bundle& b) { return bundle_to_strict_functor(b, free_two_category_2XU(b.base)); }

}  // namespace twobundle
