#include "twobundle/simplicial.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "twobundle/error.hpp"

namespace twobundle {

std::size_t VectorHash::operator()(const std::vector<std::uint32_t>& v) const noexcept {
  std::size_t h = v.size();
  for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

FinSimplicialSet::FinSimplicialSet(Tables tables) : t_(std::move(tables)) {
  const int n = t_.max_dim;
  if (n < -1) fail(Errc::malformed_table, "negative truncation");
  if (t_.sizes.size() != static_cast<std::size_t>(n + 1)) fail(Errc::malformed_table, "sizes do not match max_dim");
  t_.faces.resize(n + 1);
  t_.degeneracies.resize(std::max(n, 0));
  for (int k = 1; k <= n; ++k) {
    if (t_.faces[k].size() != static_cast<std::size_t>(k + 1))
      fail(Errc::malformed_table, "dimension " + std::to_string(k) + " needs k+1 face maps");
    for (const auto& d : t_.faces[k]) {
      if (d.size() != t_.sizes[k]) fail(Errc::malformed_table, "face map of wrong length in dimension " + std::to_string(k));
      for (auto v : d) {
        if (v >= t_.sizes[k - 1]) fail(Errc::malformed_table, "face value out of range in dimension " + std::to_string(k));
      }
    }
  }
  for (int k = 0; k < n; ++k) {
    if (t_.degeneracies[k].size() != static_cast<std::size_t>(k + 1))
      fail(Errc::malformed_table, "dimension " + std::to_string(k) + " needs k+1 degeneracy maps");
    for (const auto& s : t_.degeneracies[k]) {
      if (s.size() != t_.sizes[k]) fail(Errc::malformed_table, "degeneracy map of wrong length in dimension " + std::to_string(k));
      for (auto v : s) {
        if (v >= t_.sizes[k + 1]) fail(Errc::malformed_table, "degeneracy value out of range in dimension " + std::to_string(k));
      }
    }
  }
}

std::vector<std::uint32_t> FinSimplicialSet::boundary(int k, std::uint32_t z) const {
  std::vector<std::uint32_t> out(k + 1);
  for (int i = 0; i <= k; ++i) out[i] = face(k, i, z);
  return out;
}

std::optional<std::uint32_t> Cohorn::entry(int i) const {
  auto it = std::lower_bound(indices.begin(), indices.end(), i);
  if (it == indices.end() || *it != i) return std::nullopt;
  return entries[it - indices.begin()];
}

std::string Cohorn::to_string() const {
  std::string s = "{n=" + std::to_string(n);
  for (std::size_t t = 0; t < indices.size(); ++t) s += ", " + std::to_string(indices[t]) + ":" + std::to_string(entries[t]);
  return s + "}";
}

std::vector<int> horn_indices(int n, int k) {
  std::vector<int> out;
  for (int i = 0; i <= n; ++i) {
    if (i != k) out.push_back(i);
  }
  return out;
}

ValidationReport validate_ssets(const FinSimplicialSet& x) {
  ValidationReport r;
  const int n = x.max_dim();
  auto w = [](int k, std::uint32_t z, int i, int j) {
    return "dim " + std::to_string(k) + " simplex " + std::to_string(z) + " (i=" + std::to_string(i) + ", j=" + std::to_string(j) + ")";
  };
  for (int k = 2; k <= n; ++k)
    for (std::uint32_t z = 0; z < x.size(k); ++z)
      for (int j = 1; j <= k; ++j)
        for (int i = 0; i < j; ++i) {
          if (x.face(k - 1, i, x.face(k, j, z)) != x.face(k - 1, j - 1, x.face(k, i, z))) r.add("face-face", w(k, z, i, j));
        }
  for (int k = 0; k < n; ++k)
    for (std::uint32_t z = 0; z < x.size(k); ++z)
      for (int j = 0; j <= k; ++j) {
        auto s = x.degeneracy(k, j, z);
        for (int i = 0; i <= k + 1; ++i) {
          auto lhs = x.face(k + 1, i, s);
          std::uint32_t rhs;
          if (i == j || i == j + 1) rhs = z;
          else if (i < j) rhs = x.degeneracy(k - 1, j - 1, x.face(k, i, z));
          else rhs = x.degeneracy(k - 1, j, x.face(k, i - 1, z));
          if (lhs != rhs) r.add("face-degeneracy", w(k, z, i, j));
        }
      }
  for (int k = 0; k + 2 <= n; ++k)
    for (std::uint32_t z = 0; z < x.size(k); ++z)
      for (int j = 0; j <= k; ++j)
        for (int i = 0; i <= j; ++i) {
          if (x.degeneracy(k + 1, i, x.degeneracy(k, j, z)) != x.degeneracy(k + 1, j + 1, x.degeneracy(k, i, z)))
            r.add("degeneracy-degeneracy", w(k, z, i, j));
        }
  return r;
}

ValidationReport validate_simplicial_map(const FinSimplicialSet& x, const FinSimplicialSet& y, const SimplicialMap& f) {
  ValidationReport r;
  const int n = x.max_dim();
  if (y.max_dim() < n || f.images.size() < static_cast<std::size_t>(n + 1)) {
    r.add("shape", "map does not cover every dimension");
    return r;
  }
  for (int k = 0; k <= n; ++k) {
    if (f.images[k].size() != x.size(k)) {
      r.add("shape", "dimension " + std::to_string(k) + " has the wrong number of images");
      return r;
    }
    for (auto v : f.images[k]) {
      if (v >= y.size(k)) {
        r.add("shape", "image out of range in dimension " + std::to_string(k));
        return r;
      }
    }
  }
  for (int k = 1; k <= n; ++k)
    for (std::uint32_t z = 0; z < x.size(k); ++z)
      for (int i = 0; i <= k; ++i) {
        if (f.images[k - 1][x.face(k, i, z)] != y.face(k, i, f.images[k][z]))
          r.add("face", "dim " + std::to_string(k) + " simplex " + std::to_string(z) + " face " + std::to_string(i));
      }
  for (int k = 0; k < n; ++k)
    for (std::uint32_t z = 0; z < x.size(k); ++z)
      for (int i = 0; i <= k; ++i) {
        if (f.images[k + 1][x.degeneracy(k, i, z)] != y.degeneracy(k, i, f.images[k][z]))
          r.add("degeneracy", "dim " + std::to_string(k) + " simplex " + std::to_string(z) + " degeneracy " + std::to_string(i));
      }
  return r;
}

bool is_compatible(const FinSimplicialSet& x, const Cohorn& c) {
  if (c.n < 2) return true;
  for (std::size_t b = 0; b < c.indices.size(); ++b)
    for (std::size_t a = 0; a < b; ++a) {
      int i = c.indices[a];
      int j = c.indices[b];
      if (x.face(c.n - 1, i, c.entries[b]) != x.face(c.n - 1, j - 1, c.entries[a])) return false;
    }
  return true;
}

namespace {

void check_indices(int n, const std::vector<int>& indices, bool allow_full) {
  if (indices.empty()) fail(Errc::dimension_out_of_range, "empty index set");
  for (std::size_t t = 0; t < indices.size(); ++t) {
    if (indices[t] < 0 || indices[t] > n || (t > 0 && indices[t] <= indices[t - 1]))
      fail(Errc::dimension_out_of_range, "index set must be strictly increasing within 0.." + std::to_string(n));
  }
  if (!allow_full && indices.size() == static_cast<std::size_t>(n + 1))
    fail(Errc::dimension_out_of_range, "index set must be a proper subset");
}

// buckets[i][v] = simplices z of dimension m with d_i z = v.
std::vector<std::vector<std::vector<std::uint32_t>>> face_buckets(const FinSimplicialSet& x, int m) {
  std::vector<std::vector<std::vector<std::uint32_t>>> b(m + 1, std::vector<std::vector<std::uint32_t>>(x.size(m - 1)));
  for (int i = 0; i <= m; ++i)
    for (std::uint32_t z = 0; z < x.size(m); ++z) b[i][x.face(m, i, z)].push_back(z);
  return b;
}

}  // namespace

void for_each_compatible_tuple(const FinSimplicialSet& x, int n, const std::vector<int>& indices,
                               const std::function<bool(const std::vector<std::uint32_t>&)>& fn) {
  if (n < 1 || n > x.max_dim() + 1) fail(Errc::dimension_out_of_range, "cohorn dimension " + std::to_string(n));
  check_indices(n, indices, true);
  const int m = n - 1;
  const std::size_t len = indices.size();
  std::vector<std::uint32_t> cur(len);
  std::vector<std::uint32_t> all(x.size(m));
  for (std::uint32_t z = 0; z < all.size(); ++z) all[z] = z;
  if (m == 0) {
    // vertices carry no compatibility constraints
    std::function<bool(std::size_t)> rec0 = [&](std::size_t t) -> bool {
      if (t == len) return fn(cur);
      for (auto z : all) {
        cur[t] = z;
        if (!rec0(t + 1)) return false;
      }
      return true;
    };
    rec0(0);
    return;
  }
  auto buckets = face_buckets(x, m);
  std::function<bool(std::size_t)> rec = [&](std::size_t t) -> bool {
    if (t == len) return fn(cur);
    const std::vector<std::uint32_t>* cand = &all;
    const int pt = indices[t];
    if (t > 0) cand = &buckets[indices[0]][x.face(m, pt - 1, cur[0])];
    for (auto z : *cand) {
      bool ok = true;
      for (std::size_t s = 1; s < t && ok; ++s) ok = x.face(m, indices[s], z) == x.face(m, pt - 1, cur[s]);
      if (!ok) continue;
      cur[t] = z;
      if (!rec(t + 1)) return false;
    }
    return true;
  };
  rec(0);
}

std::vector<Cohorn> cohorns(const FinSimplicialSet& x, int n, const std::vector<int>& indices) {
  if (n < 1 || n > x.max_dim()) fail(Errc::dimension_out_of_range, "cohorn dimension " + std::to_string(n));
  check_indices(n, indices, false);
  std::vector<Cohorn> out;
  for_each_compatible_tuple(x, n, indices, [&](const std::vector<std::uint32_t>& e) {
    out.push_back({n, indices, e});
    return true;
  });
  return out;
}

Cohorn cohorn_restrict(const Cohorn& c, int k) {
  if (c.indices.size() < 2) fail(Errc::dimension_out_of_range, "cannot forget the only entry");
  auto it = std::lower_bound(c.indices.begin(), c.indices.end(), k);
  if (it == c.indices.end() || *it != k) fail(Errc::index_mismatch, "index " + std::to_string(k) + " not present");
  Cohorn out = c;
  auto pos = it - c.indices.begin();
  out.indices.erase(out.indices.begin() + pos);
  out.entries.erase(out.entries.begin() + pos);
  return out;
}

Cohorn cohorn_project(const FinSimplicialSet& x, const Cohorn& c, int k) {
  if (c.n < 2) fail(Errc::dimension_out_of_range, "projection needs n >= 2");
  if (k < 0 || k > c.n || c.entry(k)) fail(Errc::index_mismatch, "projection index must lie outside the cohorn");
  Cohorn out;
  out.n = c.n - 1;
  for (std::size_t t = 0; t < c.indices.size(); ++t) {
    int i = c.indices[t];
    if (i < k) {
      out.indices.push_back(i);
      out.entries.push_back(x.face(c.n - 1, k - 1, c.entries[t]));
    } else {
      out.indices.push_back(i - 1);
      out.entries.push_back(x.face(c.n - 1, k, c.entries[t]));
    }
  }
  return out;
}

Cohorn cohorn_of(const FinSimplicialSet& x, int n, std::uint32_t z, const std::vector<int>& indices) {
  Cohorn c{n, indices, {}};
  for (int i : indices) c.entries.push_back(x.face(n, i, z));
  return c;
}

FillerIndex::FillerIndex(const FinSimplicialSet& x, int n) : x_(&x), n_(n) {
  if (n < 1 || n > x.max_dim()) fail(Errc::dimension_out_of_range, "filler dimension " + std::to_string(n));
  buckets_ = face_buckets(x, n);
}

std::vector<std::uint32_t> FillerIndex::fillers(const Cohorn& c) const {
  if (c.n != n_ || c.indices.empty()) fail(Errc::dimension_out_of_range, "cohorn of the wrong dimension");
  std::vector<std::uint32_t> out;
  for (auto z : buckets_[c.indices[0]][c.entries[0]]) {
    bool ok = true;
    for (std::size_t t = 1; t < c.indices.size() && ok; ++t) ok = x_->face(n_, c.indices[t], z) == c.entries[t];
    if (ok) out.push_back(z);
  }
  return out;
}

std::vector<std::uint32_t> horn_fillers(const FinSimplicialSet& x, const Cohorn& c) {
  if (c.n < 1 || c.n > x.max_dim()) fail(Errc::dimension_out_of_range, "filler dimension " + std::to_string(c.n));
  std::vector<std::uint32_t> out;
  for (std::uint32_t z = 0; z < x.size(c.n); ++z) {
    bool ok = true;
    for (std::size_t t = 0; t < c.indices.size() && ok; ++t) ok = x.face(c.n, c.indices[t], z) == c.entries[t];
    if (ok) out.push_back(z);
  }
  return out;
}

const KanLevel* KanReport::first_failure() const {
  for (const auto& l : levels) {
    if (l.unfilled > 0) return &l;
  }
  return nullptr;
}

KanReport check_discrete_kan(const FinSimplicialSet& x, int up_to_dim) {
  if (up_to_dim > x.max_dim()) fail(Errc::dimension_out_of_range, "Kan check beyond the truncation");
  KanReport rep;
  for (int n = 1; n <= up_to_dim; ++n)
    for (int k = 0; k <= n; ++k) {
      KanLevel level{n, k, 0, 0, std::nullopt};
      auto idx = horn_indices(n, k);
      std::unordered_set<std::vector<std::uint32_t>, VectorHash> image;
      for (std::uint32_t z = 0; z < x.size(n); ++z) image.insert(cohorn_of(x, n, z, idx).entries);
      for_each_compatible_tuple(x, n, idx, [&](const std::vector<std::uint32_t>& e) {
        ++level.horns;
        if (!image.count(e)) {
          if (!level.witness) level.witness = Cohorn{n, idx, e};
          ++level.unfilled;
        }
        return true;
      });
      if (level.unfilled) rep.kan = false;
      rep.levels.push_back(std::move(level));
    }
  return rep;
}

CoskeletalReport coskeletal_report(const FinSimplicialSet& x, int m) {
  if (m < 0 || m >= x.max_dim()) fail(Errc::dimension_out_of_range, "coskeletality degree must be below max_dim");
  CoskeletalReport rep;
  for (int n = m + 1; n <= x.max_dim(); ++n) {
    CoskeletalLevel level{n, x.size(n), 0, true};
    std::vector<int> all(n + 1);
    for (int i = 0; i <= n; ++i) all[i] = i;
    std::unordered_set<std::vector<std::uint32_t>, VectorHash> seen;
    for (std::uint32_t z = 0; z < x.size(n); ++z) {
      if (!seen.insert(x.boundary(n, z)).second) level.injective = false;
    }
    for_each_compatible_tuple(x, n, all, [&](const std::vector<std::uint32_t>&) {
      ++level.boundary_tuples;
      return true;
    });
    if (!level.injective || level.boundary_tuples != level.simplices) rep.coskeletal = false;
    rep.levels.push_back(level);
  }
  return rep;
}

bool is_coskeletal(const FinSimplicialSet& x, int m) { return coskeletal_report(x, m).coskeletal; }

FinSimplicialSet simplicial_set_from_sequences(std::vector<std::vector<std::vector<int>>>& seqs) {
  FinSimplicialSet::Tables t;
  t.max_dim = static_cast<int>(seqs.size()) - 1;
  std::vector<std::map<std::vector<int>, std::uint32_t>> index(seqs.size());
  for (std::size_t k = 0; k < seqs.size(); ++k) {
    std::sort(seqs[k].begin(), seqs[k].end());
    seqs[k].erase(std::unique(seqs[k].begin(), seqs[k].end()), seqs[k].end());
    t.sizes.push_back(seqs[k].size());
    for (std::uint32_t z = 0; z < seqs[k].size(); ++z) index[k][seqs[k][z]] = z;
  }
  auto lookup = [&](std::size_t k, const std::vector<int>& s) {
    auto it = index[k].find(s);
    if (it == index[k].end()) fail(Errc::malformed_table, "sequence family is not closed under faces and degeneracies");
    return it->second;
  };
  t.faces.resize(seqs.size());
  t.degeneracies.resize(seqs.empty() ? 0 : seqs.size() - 1);
  for (std::size_t k = 1; k < seqs.size(); ++k) {
    t.faces[k].assign(k + 1, std::vector<std::uint32_t>(seqs[k].size()));
    for (std::uint32_t z = 0; z < seqs[k].size(); ++z)
      for (std::size_t i = 0; i <= k; ++i) {
        auto s = seqs[k][z];
        s.erase(s.begin() + i);
        t.faces[k][i][z] = lookup(k - 1, s);
      }
  }
  for (std::size_t k = 0; k + 1 < seqs.size(); ++k) {
    t.degeneracies[k].assign(k + 1, std::vector<std::uint32_t>(seqs[k].size()));
    for (std::uint32_t z = 0; z < seqs[k].size(); ++z)
      for (std::size_t i = 0; i <= k; ++i) {
        auto s = seqs[k][z];
        s.insert(s.begin() + i, s[i]);
        t.degeneracies[k][i][z] = lookup(k + 1, s);
      }
  }
  return FinSimplicialSet(std::move(t));
}

FinSimplicialSet standard_simplex(int n, int max_dim) {
  std::vector<std::vector<std::vector<int>>> seqs(max_dim + 1);
  for (int k = 0; k <= max_dim; ++k) {
    std::vector<int> s(k + 1, 0);
    std::function<void(int, int)> rec = [&](int pos, int lo) {
      if (pos == k + 1) {
        seqs[k].push_back(s);
        return;
      }
      for (int v = lo; v <= n; ++v) {
        s[pos] = v;
        rec(pos + 1, v);
      }
    };
    rec(0, 0);
  }
  return simplicial_set_from_sequences(seqs);
}

}  // namespace twobundle
