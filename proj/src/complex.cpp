#include "twobundle/complex.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "twobundle/error.hpp"
#include "twobundle/linalg.hpp"

namespace twobundle {

CombinatorialBase CombinatorialBase::from_simplices(std::vector<long> labels, const std::vector<std::vector<long>>& simplices) {
  CombinatorialBase k;
  k.labels_ = std::move(labels);
  for (std::size_t r = 0; r < k.labels_.size(); ++r) {
    if (!k.rank_.emplace(k.labels_[r], static_cast<int>(r)).second)
      fail(Errc::index_mismatch, "repeated vertex label " + std::to_string(k.labels_[r]));
  }
  std::vector<std::set<Simplex>> dims;
  auto add = [&](const Simplex& s) {
    const auto d = s.size() - 1;
    if (dims.size() <= d) dims.resize(d + 1);
    dims[d].insert(s);
  };
  for (std::size_t r = 0; r < k.labels_.size(); ++r) add({static_cast<int>(r)});
  for (const auto& raw : simplices) {
    if (raw.empty()) fail(Errc::index_mismatch, "empty simplex");
    Simplex s = k.from_labels(raw);
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) fail(Errc::index_mismatch, "simplex repeats a vertex");
    if (s.size() > 24) fail(Errc::size_limit, "simplex too large");
    const std::uint32_t n = static_cast<std::uint32_t>(s.size());
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      Simplex face;
      for (std::uint32_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) face.push_back(s[i]);
      }
      add(face);
    }
  }
  for (auto& d : dims) k.by_dim_.emplace_back(d.begin(), d.end());
  if (k.labels_.empty()) k.by_dim_.clear();
  return k;
}

std::optional<int> CombinatorialBase::rank_of(long label) const {
  auto it = rank_.find(label);
  if (it == rank_.end()) return std::nullopt;
  return it->second;
}

const std::vector<Simplex>& CombinatorialBase::simplices(int k) const {
  static const std::vector<Simplex> empty;
  if (k < 0 || k >= static_cast<int>(by_dim_.size())) return empty;
  return by_dim_[k];
}

std::optional<std::size_t> CombinatorialBase::index_of(const Simplex& s) const {
  if (s.empty()) return std::nullopt;
  const auto& list = simplices(static_cast<int>(s.size()) - 1);
  auto it = std::lower_bound(list.begin(), list.end(), s);
  if (it == list.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - list.begin());
}

std::vector<Simplex> CombinatorialBase::maximal_simplices() const {
  std::vector<Simplex> out;
  for (int d = 0; d <= dimension(); ++d)
    for (const auto& s : simplices(d)) {
      bool maximal = true;
      for (const auto& t : simplices(d + 1)) {
        if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
          maximal = false;
          break;
        }
      }
      if (maximal) out.push_back(s);
    }
  return out;
}

std::vector<long> CombinatorialBase::to_labels(const Simplex& s) const {
  std::vector<long> out;
  for (int v : s) out.push_back(labels_[v]);
  return out;
}

Simplex CombinatorialBase::from_labels(const std::vector<long>& s) const {
  Simplex out;
  for (long l : s) {
    auto r = rank_of(l);
    if (!r) fail(Errc::index_mismatch, "unknown vertex label " + std::to_string(l));
    out.push_back(*r);
  }
  return out;
}

bool CombinatorialBase::contains_subcomplex(const CombinatorialBase& sub) const {
  int last = -1;
  for (long l : sub.labels()) {
    auto r = rank_of(l);
    if (!r || *r <= last) return false;
    last = *r;
  }
  for (int d = 0; d <= sub.dimension(); ++d)
    for (const auto& s : sub.simplices(d)) {
      if (!contains(from_labels(sub.to_labels(s)))) return false;
    }
  return true;
}

CombinatorialBase point_complex() { return CombinatorialBase::from_simplices({0}, {{0}}); }

CombinatorialBase simplex_complex(int n) {
  std::vector<long> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = i;
  return CombinatorialBase::from_simplices(v, {v});
}

CombinatorialBase simplex_boundary(int n) {
  std::vector<long> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = i;
  std::vector<std::vector<long>> facets;
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<long> f;
    for (int i = 0; i <= n; ++i) {
      if (i != skip) f.push_back(i);
    }
    facets.push_back(f);
  }
  return CombinatorialBase::from_simplices(v, facets);
}

CombinatorialBase circle_complex(int m) {
  if (m < 3) fail(Errc::index_mismatch, "a simplicial circle needs at least 3 vertices");
  std::vector<long> v(m);
  std::vector<std::vector<long>> edges;
  for (int i = 0; i < m; ++i) {
    v[i] = i;
    edges.push_back({i, (i + 1) % m});
  }
  return CombinatorialBase::from_simplices(v, edges);
}

Simplex BaseMap::apply(const Simplex& s) const {
  Simplex out;
  for (int v : s) out.push_back(image[v]);
  return out;
}

void check_base_map(const BaseMap& f) {
  if (f.image.size() != f.source.vertex_count()) fail(Errc::index_mismatch, "vertex map has the wrong length");
  for (int v : f.image) {
    if (v < 0 || v >= static_cast<int>(f.target.vertex_count())) fail(Errc::index_mismatch, "vertex image out of range");
  }
  for (int d = 1; d <= f.source.dimension(); ++d)
    for (const auto& s : f.source.simplices(d)) {
      auto img = f.apply(s);
      if (!std::is_sorted(img.begin(), img.end())) fail(Errc::index_mismatch, "vertex map reverses the order on a simplex");
      img.erase(std::unique(img.begin(), img.end()), img.end());
      if (!f.target.contains(img)) fail(Errc::index_mismatch, "a simplex is not carried to a simplex");
    }
}

BaseMap identity_map(const CombinatorialBase& k) {
  BaseMap f{k, k, {}};
  for (std::size_t v = 0; v < k.vertex_count(); ++v) f.image.push_back(static_cast<int>(v));
  return f;
}

BaseMap compose(const BaseMap& g, const BaseMap& f) {
  if (!(f.target == g.source)) fail(Errc::index_mismatch, "maps are not composable");
  BaseMap h{f.source, g.target, {}};
  for (int v : f.image) h.image.push_back(g.image[v]);
  return h;
}

BaseMap inclusion(const CombinatorialBase& sub, const CombinatorialBase& k) {
  if (!k.contains_subcomplex(sub)) fail(Errc::not_subcomplex, "not an ordered subcomplex");
  BaseMap f{sub, k, {}};
  for (long l : sub.labels()) f.image.push_back(*k.rank_of(l));
  return f;
}

Prism prism(const CombinatorialBase& k) {
  const int n = static_cast<int>(k.vertex_count());
  std::vector<long> labels(2 * n);
  for (int i = 0; i < 2 * n; ++i) labels[i] = i;
  std::vector<std::vector<long>> cells;
  for (int d = 0; d <= k.dimension(); ++d)
    for (const auto& s : k.simplices(d))
      for (int j = 0; j <= d; ++j) {
        std::vector<long> c;
        for (int a = 0; a <= j; ++a) c.push_back(s[a]);
        for (int a = j; a <= d; ++a) c.push_back(n + s[a]);
        cells.push_back(c);
      }
  Prism p;
  p.complex = CombinatorialBase::from_simplices(labels, cells);
  p.bottom = BaseMap{k, p.complex, {}};
  p.top = BaseMap{k, p.complex, {}};
  p.projection = BaseMap{p.complex, k, {}};
  for (int v = 0; v < n; ++v) {
    p.bottom.image.push_back(v);
    p.top.image.push_back(n + v);
  }
  for (int i = 0; i < 2 * n; ++i) p.projection.image.push_back(i % n);
  return p;
}

namespace {

FpMatrix coboundary(const CombinatorialBase& k, std::uint32_t p, int d) {
  const auto& rows = k.simplices(d + 1);
  const auto& cols = k.simplices(d);
  FpMatrix m(p, rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      Simplex face = rows[r];
      face.erase(face.begin() + i);
      auto c = k.index_of(face);
      m.set(r, *c, (m(r, *c) + (i % 2 == 0 ? 1 : static_cast<long>(p) - 1)));
    }
  return m;
}

}  // namespace

std::size_t cocycle_dimension(const CombinatorialBase& k, std::uint32_t p, int d) {
  if (!is_prime(p)) fail(Errc::index_mismatch, "coefficients must be a prime field");
  if (d < 0 || d > k.dimension()) return 0;
  return k.count(d) - coboundary(k, p, d).rank();
}

std::size_t cochain_cohomology(const CombinatorialBase& k, std::uint32_t p, int d) {
  if (d < 0 || d > k.dimension()) return 0;
  auto z = cocycle_dimension(k, p, d);
  auto b = d > 0 ? coboundary(k, p, d - 1).rank() : 0;
  return z - b;
}

long euler_characteristic(const CombinatorialBase& k) {
  long chi = 0;
  for (int d = 0; d <= k.dimension(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(k.count(d));
  return chi;
}

OrderedNerve ordered_simplicial_set(const CombinatorialBase& k, int max_dim) {
  OrderedNerve out;
  out.sequences.resize(max_dim + 1);
  const int n = static_cast<int>(k.vertex_count());
  for (int len = 1; len <= max_dim + 1; ++len) {
    std::vector<int> seq;
    std::function<void(int)> rec = [&](int lo) {
      if (static_cast<int>(seq.size()) == len) {
        out.sequences[len - 1].push_back(seq);
        return;
      }
      for (int v = lo; v < n; ++v) {
        Simplex support = seq;
        support.push_back(v);
        support.erase(std::unique(support.begin(), support.end()), support.end());
        if (!k.contains(support)) continue;
        seq.push_back(v);
        rec(v);
        seq.pop_back();
      }
    };
    rec(0);
  }
  out.sset = simplicial_set_from_sequences(out.sequences);
  return out;
}

}  // namespace twobundle
