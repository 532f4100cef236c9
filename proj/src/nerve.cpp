#include "twobundle/nerve.hpp"

#include <functional>
#include <map>

#include "twobundle/error.hpp"

namespace twobundle {

std::size_t pair_index(int n, int i, int j) {
  return static_cast<std::size_t>(i * n - i * (i - 1) / 2 + (j - i - 1));
}

std::size_t triple_index(int n, int i, int j, int k) {
  std::size_t idx = 0;
  for (int a = 0; a < i; ++a) idx += static_cast<std::size_t>((n - a) * (n - a - 1) / 2);
  for (int b = i + 1; b < j; ++b) idx += static_cast<std::size_t>(n - b);
  return idx + static_cast<std::size_t>(k - j - 1);
}

NerveSimplex NerveSimplex::blank(int n) {
  NerveSimplex s;
  s.dim = n;
  s.objects.assign(n + 1, ObjectId{kAbsent});
  s.edges.assign(static_cast<std::size_t>(n * (n + 1) / 2), OneCellId{kAbsent});
  s.triangles.assign(static_cast<std::size_t>((n + 1) * n * (n - 1) / 6), TwoCellId{kAbsent});
  return s;
}

NerveSimplex NerveSimplex::restrict_to(const std::vector<int>& v) const {
  const int m = static_cast<int>(v.size()) - 1;
  NerveSimplex s = blank(m);
  for (int a = 0; a <= m; ++a) s.objects[a] = objects[v[a]];
  for (int a = 0; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b) {
      s.set_edge(a, b, edge(v[a], v[b]));
      for (int c = b + 1; c <= m; ++c) s.set_triangle(a, b, c, triangle(v[a], v[b], v[c]));
    }
  return s;
}

NerveSimplex NerveSimplex::face(int i) const {
  std::vector<int> v;
  for (int a = 0; a <= dim; ++a) {
    if (a != i) v.push_back(a);
  }
  return restrict_to(v);
}

std::vector<std::uint32_t> NerveSimplex::key() const {
  std::vector<std::uint32_t> k;
  k.reserve(objects.size() + edges.size() + triangles.size());
  for (auto x : objects) k.push_back(x.value);
  for (auto f : edges) k.push_back(f.value);
  for (auto t : triangles) k.push_back(t.value);
  return k;
}

bool boundaries_match(const TwoCategory& c, const NerveSimplex& s) {
  const int n = s.dim;
  for (int i = 0; i <= n; ++i) {
    if (s.objects[i].value >= c.object_count()) return false;
  }
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      auto f = s.edge(i, j);
      if (f.value >= c.one_cell_count() || c.source(f) != s.objects[i] || c.target(f) != s.objects[j]) return false;
    }
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        auto phi = s.triangle(i, j, k);
        if (phi.value >= c.two_cell_count() || c.source(phi) != s.edge(i, k)) return false;
        if (c.try_compose(s.edge(j, k), s.edge(i, j)) != c.target(phi)) return false;
      }
  return true;
}

bool tetrahedron_holds(const TwoCategory& c, const NerveSimplex& s, int i, int j, int k, int l) {
  auto fij = s.edge(i, j), fjk = s.edge(j, k), fkl = s.edge(k, l);
  auto lw = c.try_lwhisker(fkl, s.triangle(i, j, k));
  auto a = c.try_associator(fkl, fjk, fij);
  auto rw = c.try_rwhisker(s.triangle(j, k, l), fij);
  if (!lw || !a || !rw) return false;
  auto left = c.try_vcomp(*lw, s.triangle(i, k, l));
  auto right = c.try_vcomp(*rw, s.triangle(i, j, l));
  if (!left || !right) return false;
  auto full = c.try_vcomp(*a, *left);
  return full && *full == *right;
}

bool is_nerve_simplex(const TwoCategory& c, const NerveSimplex& s) {
  if (!boundaries_match(c, s)) return false;
  const int n = s.dim;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) {
          if (!tetrahedron_holds(c, s, i, j, k, l)) return false;
        }
  return true;
}

bool tetrahedron_check(const TwoCategory& c, const std::vector<NerveSimplex>& faces) {
  if (faces.size() != 4) fail(Errc::boundary_mismatch, "a tetrahedron needs four faces");
  for (const auto& f : faces) {
    if (f.dim != 2 || !boundaries_match(c, f)) fail(Errc::boundary_mismatch, "faces must be valid triangles");
  }
  NerveSimplex s = NerveSimplex::blank(3);
  auto put = [&](int m) {
    std::vector<int> v;
    for (int a = 0; a <= 3; ++a) {
      if (a != m) v.push_back(a);
    }
    const auto& t = faces[m];
    for (int a = 0; a < 3; ++a) {
      if (s.objects[v[a]].value != kAbsent && s.objects[v[a]] != t.objects[a]) fail(Errc::boundary_mismatch, "objects disagree");
      s.objects[v[a]] = t.objects[a];
      for (int b = a + 1; b < 3; ++b) {
        auto cur = s.edge(v[a], v[b]);
        if (cur.value != kAbsent && cur != t.edge(a, b))
          fail(Errc::boundary_mismatch, "edge (" + std::to_string(v[a]) + "," + std::to_string(v[b]) + ") disagrees");
        s.set_edge(v[a], v[b], t.edge(a, b));
      }
    }
    s.set_triangle(v[0], v[1], v[2], t.triangle(0, 1, 2));
  };
  for (int m = 0; m < 4; ++m) put(m);
  return tetrahedron_holds(c, s, 0, 1, 2, 3);
}

namespace {

NerveSimplex degenerate_impl(const TwoCategory& c, const NerveSimplex& s, int i, const InverseTable* inv) {
  const int n = s.dim + 1;
  auto sigma = [&](int v) { return v <= i ? v : v - 1; };
  auto inverse = [&](TwoCellId a) {
    auto r = inv ? inv->find(a) : try_vertical_inverse(c, a);
    if (!r) fail(Errc::coherence_failure, "unitor without inverse");
    return *r;
  };
  NerveSimplex d = NerveSimplex::blank(n);
  for (int v = 0; v <= n; ++v) d.objects[v] = s.objects[sigma(v)];
  for (int a = 0; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      d.set_edge(a, b, sigma(a) == sigma(b) ? c.identity(d.objects[a]) : s.edge(sigma(a), sigma(b)));
      for (int e = b + 1; e <= n; ++e) {
        TwoCellId phi;
        if (sigma(a) == sigma(b)) phi = inverse(c.right_unitor(s.edge(sigma(b), sigma(e))));
        else if (sigma(b) == sigma(e)) phi = inverse(c.left_unitor(s.edge(sigma(a), sigma(b))));
        else phi = s.triangle(sigma(a), sigma(b), sigma(e));
        d.set_triangle(a, b, e, phi);
      }
    }
  return d;
}

}  // namespace

NerveSimplex degenerate(const TwoCategory& c, const NerveSimplex& s, int i) { return degenerate_impl(c, s, i, nullptr); }

DuskinNerve::DuskinNerve(std::vector<std::vector<NerveSimplex>> simplices, FinSimplicialSet sset)
    : simplices_(std::move(simplices)), sset_(std::move(sset)) {
  index_.resize(simplices_.size());
  for (std::size_t k = 0; k < simplices_.size(); ++k)
    for (std::uint32_t z = 0; z < simplices_[k].size(); ++z) index_[k].emplace(simplices_[k][z].key(), z);
}

std::optional<std::uint32_t> DuskinNerve::find(const NerveSimplex& s) const {
  if (s.dim < 0 || s.dim >= static_cast<int>(index_.size())) return std::nullopt;
  auto it = index_[s.dim].find(s.key());
  if (it == index_[s.dim].end()) return std::nullopt;
  return it->second;
}

DuskinNerve duskin_nerve(const TwoCategory& c, int max_dim, std::size_t bound) {
  if (max_dim < 0) fail(Errc::dimension_out_of_range, "negative nerve dimension");
  std::vector<std::vector<NerveSimplex>> simp(max_dim + 1);
  std::vector<std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VectorHash>> index(max_dim + 1);
  FinSimplicialSet::Tables t;
  t.max_dim = max_dim;
  t.sizes.assign(max_dim + 1, 0);
  t.faces.resize(max_dim + 1);
  t.degeneracies.resize(max_dim);
  std::size_t total = 0;

  auto push = [&](int k, NerveSimplex s) {
    if (++total > bound) fail(Errc::size_limit, "nerve exceeds " + std::to_string(bound) + " simplices");
    index[k].emplace(s.key(), static_cast<std::uint32_t>(simp[k].size()));
    simp[k].push_back(std::move(s));
  };
  auto lookup = [&](int k, const NerveSimplex& s) {
    auto it = index[k].find(s.key());
    if (it == index[k].end()) fail(Errc::coherence_failure, "simplex missing from dimension " + std::to_string(k));
    return it->second;
  };

  for (std::uint32_t x = 0; x < c.object_count(); ++x) {
    NerveSimplex s = NerveSimplex::blank(0);
    s.objects[0] = ObjectId{x};
    push(0, s);
  }
  if (max_dim >= 1) {
    for (std::uint32_t f = 0; f < c.one_cell_count(); ++f) {
      NerveSimplex s = NerveSimplex::blank(1);
      s.objects = {c.source(OneCellId{f}), c.target(OneCellId{f})};
      s.edges = {OneCellId{f}};
      push(1, s);
    }
  }
  auto compute_faces = [&](int k) {
    t.sizes[k] = simp[k].size();
    if (k == 0) return;
    t.faces[k].assign(k + 1, std::vector<std::uint32_t>(simp[k].size()));
    for (std::uint32_t z = 0; z < simp[k].size(); ++z)
      for (int i = 0; i <= k; ++i) t.faces[k][i][z] = lookup(k - 1, simp[k][z].face(i));
  };
  compute_faces(0);
  if (max_dim >= 1) compute_faces(1);

  // An n-simplex is a = d_n and b = d_0 agreeing on vertices 1..n-1, plus f_0n and every phi_0jn.
  for (int n = 2; n <= max_dim; ++n) {
    const auto& prev = simp[n - 1];
    std::vector<std::vector<std::uint32_t>> by_front(n >= 2 ? simp[n - 2].size() : 0);
    for (std::uint32_t b = 0; b < prev.size(); ++b) by_front[t.faces[n - 1][n - 1][b]].push_back(b);
    for (std::uint32_t ai = 0; ai < prev.size(); ++ai) {
      const auto& a = prev[ai];
      for (auto bi : by_front[t.faces[n - 1][0][ai]]) {
        const auto& b = prev[bi];
        NerveSimplex s = NerveSimplex::blank(n);
        for (int v = 0; v < n; ++v) s.objects[v] = a.objects[v];
        s.objects[n] = b.objects[n - 1];
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) {
            s.set_edge(i, j, a.edge(i, j));
            for (int k = j + 1; k < n; ++k) s.set_triangle(i, j, k, a.triangle(i, j, k));
          }
        for (int i = 1; i < n; ++i) {
          s.set_edge(i, n, b.edge(i - 1, n - 1));
          for (int j = i + 1; j < n; ++j) s.set_triangle(i, j, n, b.triangle(i - 1, j - 1, n - 1));
        }
        for (auto f0n : c.one_cells_between(s.objects[0], s.objects[n])) {
          s.set_edge(0, n, f0n);
          std::function<void(int)> choose = [&](int j) {
            if (j == n) {
              push(n, s);
              return;
            }
            auto target = c.try_compose(s.edge(j, n), s.edge(0, j));
            if (!target) return;
            for (auto phi : c.two_cells_between(f0n, *target)) {
              s.set_triangle(0, j, n, phi);
              bool ok = true;
              for (int i = 1; i < j && ok; ++i) ok = tetrahedron_holds(c, s, 0, i, j, n);
              if (ok) choose(j + 1);
            }
          };
          choose(1);
        }
      }
    }
    compute_faces(n);
  }

  InverseTable inv(c);
  for (int k = 0; k < max_dim; ++k) {
    t.degeneracies[k].assign(k + 1, std::vector<std::uint32_t>(simp[k].size()));
    for (std::uint32_t z = 0; z < simp[k].size(); ++z)
      for (int i = 0; i <= k; ++i) t.degeneracies[k][i][z] = lookup(k + 1, degenerate_impl(c, simp[k][z], i, &inv));
  }
  return DuskinNerve(std::move(simp), FinSimplicialSet(std::move(t)));
}

Flag flag_of(const NerveSimplex& s) {
  Flag f;
  f.objects = s.objects;
  const int n = s.dim;
  for (int i = 0; i < n; ++i) f.spine.push_back(s.edge(i, i + 1));
  f.fans.resize(std::max(n - 1, 0));
  for (int i = 0; i + 2 <= n; ++i)
    for (int j = i + 2; j <= n; ++j) f.fans[i].push_back(s.triangle(i, i + 1, j));
  return f;
}

FlagReconstruction reconstruct_from_flag(const TwoCategory& c, const Flag& flag) {
  return reconstruct_from_flag(c, flag, InverseTable(c));
}

FlagReconstruction reconstruct_from_flag(const TwoCategory& c, const Flag& flag, const InverseTable& inv) {
  const int n = flag.dim();
  if (n < 0 || flag.spine.size() != static_cast<std::size_t>(n) || flag.fans.size() != static_cast<std::size_t>(std::max(n - 1, 0)))
    fail(Errc::boundary_mismatch, "flag has inconsistent sizes");
  FlagReconstruction out;
  NerveSimplex& s = out.simplex;
  s = NerveSimplex::blank(n);
  s.objects = flag.objects;
  for (int i = 0; i < n; ++i) s.set_edge(i, i + 1, flag.spine[i]);
  for (int i = 0; i + 2 <= n; ++i) {
    if (flag.fans[i].size() != static_cast<std::size_t>(n - i - 1)) fail(Errc::boundary_mismatch, "flag fan has the wrong length");
    for (int j = i + 2; j <= n; ++j) {
      auto phi = flag.fans[i][j - i - 2];
      s.set_triangle(i, i + 1, j, phi);
      s.set_edge(i, j, c.source(phi));
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      auto f = s.edge(i, j);
      if (c.source(f) != s.objects[i] || c.target(f) != s.objects[j]) fail(Errc::boundary_mismatch, "flag edge endpoints disagree");
    }
  for (int i = 0; i + 2 <= n; ++i)
    for (int j = i + 2; j <= n; ++j) {
      if (c.try_compose(s.edge(i + 1, j), s.edge(i, i + 1)) != c.target(s.triangle(i, i + 1, j)))
        fail(Errc::boundary_mismatch, "flag 2-cell has the wrong target");
    }
  // phi_ikl = (f_kl * phi_ijk)^-1 alpha^-1 (phi_jkl * f_ij) phi_ijl
  auto solve = [&](int i, int j, int k, int l) {
    auto fij = s.edge(i, j), fjk = s.edge(j, k), fkl = s.edge(k, l);
    return c.vcomp_chain({inv(c.lwhisker(fkl, s.triangle(i, j, k))), inv(c.associator(fkl, fjk, fij)),
                          c.rwhisker(s.triangle(j, k, l), fij), s.triangle(i, j, l)});
  };
  for (int v = 2; v < n; ++v)
    for (int i = 0; i + v < n; ++i) {
      const int k = i + v;
      for (int l = k + 1; l <= n; ++l) {
        auto phi = solve(i, i + 1, k, l);
        s.set_triangle(i, k, l, phi);
        for (int j = i + 2; j < k; ++j) {
          ++out.alternatives_checked;
          if (solve(i, j, k, l) != phi) out.choice_independent = false;
        }
      }
    }
  return out;
}

NerveSimplex flag_to_simplex(const TwoCategory& c, const Flag& flag) { return flag_to_simplex(c, flag, InverseTable(c)); }

NerveSimplex flag_to_simplex(const TwoCategory& c, const Flag& flag, const InverseTable& inv) {
  auto r = reconstruct_from_flag(c, flag, inv);
  if (!r.choice_independent) fail(Errc::coherence_failure, "reconstruction depends on the intermediate index");
  if (!is_nerve_simplex(c, r.simplex)) fail(Errc::coherence_failure, "reconstructed data violates a tetrahedron");
  return r.simplex;
}

HornFiller::HornFiller(const TwoCategory& c, const DuskinNerve& nerve) : c_(&c), nerve_(&nerve), inv_(c) {
  if (!inv_.all_invertible()) fail(Errc::not_groupoid, "some 2-cell is not invertible");
  for (std::uint32_t f = 0; f < c.one_cell_count(); ++f) {
    auto a = first_adjoint_equivalence(c, OneCellId{f}, inv_);
    if (!a) fail(Errc::not_groupoid, "1-cell " + std::to_string(f) + " has no adjoint equivalence");
    adjoints_.push_back(*a);
  }
}

NerveSimplex HornFiller::fill(const Cohorn& horn) const {
  const TwoCategory& c = *c_;
  const auto& x = nerve_->sset();
  const int n = horn.n;
  if (n < 1 || n > nerve_->max_dim()) fail(Errc::dimension_out_of_range, "horn dimension " + std::to_string(n));
  if (horn.indices.size() != static_cast<std::size_t>(n) || horn.entries.size() != horn.indices.size())
    fail(Errc::dimension_out_of_range, "not a horn");
  int k = n;
  for (int i = 0; i < n; ++i) {
    if (horn.indices[i] != i) {
      k = i;
      break;
    }
  }
  if (horn_indices(n, k) != horn.indices) fail(Errc::dimension_out_of_range, "not a horn");
  if (!is_compatible(x, horn)) fail(Errc::boundary_mismatch, "horn entries are not compatible");

  // degenerate fillers first
  for (int j = 0; j < n; ++j) {
    auto y = horn.entry(j);
    if (!y) y = horn.entry(j + 1);
    if (!y) continue;
    auto z = x.degeneracy(n - 1, j, *y);
    bool ok = true;
    for (std::size_t t = 0; t < horn.indices.size() && ok; ++t) ok = x.face(n, horn.indices[t], z) == horn.entries[t];
    if (ok) return nerve_->simplex(n, z);
  }

  NerveSimplex s = NerveSimplex::blank(n);
  for (std::size_t t = 0; t < horn.indices.size(); ++t) {
    const int m = horn.indices[t];
    const auto& f = nerve_->simplex(n - 1, horn.entries[t]);
    auto g = [&](int p) { return p < m ? p : p + 1; };
    for (int a = 0; a < n; ++a) {
      s.objects[g(a)] = f.objects[a];
      for (int b = a + 1; b < n; ++b) {
        s.set_edge(g(a), g(b), f.edge(a, b));
        for (int e = b + 1; e < n; ++e) s.set_triangle(g(a), g(b), g(e), f.triangle(a, b, e));
      }
    }
  }
  auto inv = [&](TwoCellId a) { return inv_(a); };

  if (n == 1) {
    auto obj = s.objects[k == 0 ? 0 : 1];
    s.objects = {obj, obj};
    s.set_edge(0, 1, c.identity(obj));
  } else if (n == 2) {
    if (k == 1) {
      auto f02 = c.compose(s.edge(1, 2), s.edge(0, 1));
      s.set_edge(0, 2, f02);
      s.set_triangle(0, 1, 2, c.identity(f02));
    } else if (k == 0) {
      auto f02 = s.edge(0, 2);
      auto f01 = s.edge(0, 1);
      const auto& adj = adjoints_[f01.value];
      auto f12 = c.compose(f02, adj.g);
      s.objects[1] = c.target(f01);
      s.set_edge(1, 2, f12);
      s.set_triangle(0, 1, 2, c.vcomp_chain({c.associator(f02, adj.g, f01), c.lwhisker(f02, adj.eta), inv(c.right_unitor(f02))}));
    } else {
      auto f02 = s.edge(0, 2);
      auto f12 = s.edge(1, 2);
      const auto& adj = adjoints_[f12.value];
      auto f01 = c.compose(adj.g, f02);
      s.objects[1] = c.source(f12);
      s.set_edge(0, 1, f01);
      s.set_triangle(0, 1, 2, c.vcomp_chain({inv(c.associator(f12, adj.g, f02)), c.rwhisker(inv(adj.eps), f02), inv(c.left_unitor(f02))}));
    }
  } else if (n == 3) {
    auto f01 = s.edge(0, 1), f12 = s.edge(1, 2), f23 = s.edge(2, 3);
    auto f02 = s.edge(0, 2), f13 = s.edge(1, 3);
    auto a = c.associator(f23, f12, f01);
    if (k == 1) {
      s.set_triangle(0, 2, 3, c.vcomp_chain({inv(c.lwhisker(f23, s.triangle(0, 1, 2))), inv(a), c.rwhisker(s.triangle(1, 2, 3), f01),
                                             s.triangle(0, 1, 3)}));
    } else if (k == 2) {
      s.set_triangle(0, 1, 3, c.vcomp_chain({inv(c.rwhisker(s.triangle(1, 2, 3), f01)), a, c.lwhisker(f23, s.triangle(0, 1, 2)),
                                             s.triangle(0, 2, 3)}));
    } else if (k == 0) {
      auto psi = c.vcomp_chain({a, c.lwhisker(f23, s.triangle(0, 1, 2)), s.triangle(0, 2, 3), inv(s.triangle(0, 1, 3))});
      s.set_triangle(1, 2, 3, solve_left_whisker(c, psi, adjoints_[f01.value], f13, c.compose(f23, f12)));
    } else {
      auto psi = c.vcomp_chain({inv(a), c.rwhisker(s.triangle(1, 2, 3), f01), s.triangle(0, 1, 3), inv(s.triangle(0, 2, 3))});
      s.set_triangle(0, 1, 2, solve_right_whisker(c, psi, adjoints_[f23.value], f02, c.compose(f12, f01)));
    }
  }
  return s;
}

std::uint32_t HornFiller::fill_id(const Cohorn& horn) const {
  auto s = fill(horn);
  auto id = nerve_->find(s);
  if (!id) fail(Errc::coherence_failure, "constructed filler is not a simplex of the nerve");
  return *id;
}

NerveSimplex groupoid_horn_filler(const TwoCategory& c, const DuskinNerve& nerve, const Cohorn& horn) {
  return HornFiller(c, nerve).fill(horn);
}

CategoryNerve nerve_of_category(const FiniteCategory& cat, int max_dim) {
  check_category(cat);
  CategoryNerve out;
  out.chains.resize(max_dim + 1);
  std::vector<std::map<std::vector<std::uint32_t>, std::uint32_t>> index(max_dim + 1);
  auto comp = [&](std::uint32_t g, std::uint32_t f) { return cat.composition.at({g, f}); };
  for (std::uint32_t x = 0; x < cat.objects; ++x) out.chains[0].push_back({x});
  if (max_dim >= 1)
    for (std::uint32_t f = 0; f < cat.morphisms.size(); ++f) out.chains[1].push_back({f});
  for (int k = 2; k <= max_dim; ++k)
    for (const auto& ch : out.chains[k - 1])
      for (std::uint32_t g = 0; g < cat.morphisms.size(); ++g) {
        if (cat.morphisms[g].first != cat.morphisms[ch.back()].second) continue;
        auto next = ch;
        next.push_back(g);
        out.chains[k].push_back(next);
      }
  for (int k = 0; k <= max_dim; ++k)
    for (std::uint32_t z = 0; z < out.chains[k].size(); ++z) index[k][out.chains[k][z]] = z;

  FinSimplicialSet::Tables t;
  t.max_dim = max_dim;
  for (int k = 0; k <= max_dim; ++k) t.sizes.push_back(out.chains[k].size());
  t.faces.resize(max_dim + 1);
  t.degeneracies.resize(max_dim);
  for (int k = 1; k <= max_dim; ++k) {
    t.faces[k].assign(k + 1, std::vector<std::uint32_t>(t.sizes[k]));
    for (std::uint32_t z = 0; z < t.sizes[k]; ++z) {
      const auto& ch = out.chains[k];
      for (int i = 0; i <= k; ++i) {
        std::vector<std::uint32_t> f;
        if (k == 1) {
          f = {i == 0 ? cat.morphisms[ch[z][0]].second : cat.morphisms[ch[z][0]].first};
        } else if (i == 0) {
          f.assign(ch[z].begin() + 1, ch[z].end());
        } else if (i == k) {
          f.assign(ch[z].begin(), ch[z].end() - 1);
        } else {
          f = ch[z];
          f[i - 1] = comp(ch[z][i], ch[z][i - 1]);
          f.erase(f.begin() + i);
        }
        t.faces[k][i][z] = index[k - 1].at(f);
      }
    }
  }
  for (int k = 0; k < max_dim; ++k) {
    t.degeneracies[k].assign(k + 1, std::vector<std::uint32_t>(t.sizes[k]));
    for (std::uint32_t z = 0; z < t.sizes[k]; ++z) {
      const auto& ch = out.chains[k][z];
      for (int i = 0; i <= k; ++i) {
        std::vector<std::uint32_t> d;
        if (k == 0) {
          d = {cat.identities[ch[0]]};
        } else {
          auto obj = i < k ? cat.morphisms[ch[i]].first : cat.morphisms[ch[k - 1]].second;
          d = ch;
          d.insert(d.begin() + i, cat.identities[obj]);
        }
        t.degeneracies[k][i][z] = index[k + 1].at(d);
      }
    }
  }
  out.sset = FinSimplicialSet(std::move(t));
  return out;
}

NerveSimplex chain_to_nerve_simplex(const FiniteCategory& cat, const std::vector<std::uint32_t>& chain, int dim) {
  NerveSimplex s = NerveSimplex::blank(dim);
  if (dim == 0) {
    s.objects[0] = ObjectId{chain[0]};
    return s;
  }
  s.objects[0] = ObjectId{cat.morphisms[chain[0]].first};
  for (int i = 0; i < dim; ++i) s.objects[i + 1] = ObjectId{cat.morphisms[chain[i]].second};
  for (int i = 0; i <= dim; ++i)
    for (int j = i + 1; j <= dim; ++j) {
      auto f = chain[i];
      for (int m = i + 1; m < j; ++m) f = cat.composition.at({chain[m], f});
      s.set_edge(i, j, OneCellId{f});
    }
  for (int i = 0; i <= dim; ++i)
    for (int j = i + 1; j <= dim; ++j)
      for (int k = j + 1; k <= dim; ++k) s.set_triangle(i, j, k, TwoCellId{s.edge(i, k).value});
  return s;
}

}  // namespace twobundle
