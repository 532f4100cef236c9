#pragma once

// Brute-force reference computations. Each one recomputes its answer from definitions and
// deliberately avoids the library routine it is used to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "twobundle/bundle.hpp"
#include "twobundle/complex.hpp"
#include "twobundle/linalg.hpp"
#include "twobundle/simplicial.hpp"
#include "twobundle/two_category.hpp"

namespace oracle {

using namespace twobundle;

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Calls fn with every vector in {0..base-1}^len.
inline void for_each_tuple(std::size_t len, std::size_t base, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> t(len, 0);
  if (base == 0 && len > 0) return;
  while (true) {
    fn(t);
    std::size_t i = 0;
    while (i < len && ++t[i] == base) t[i++] = 0;
    if (i == len) return;
  }
}

// Coboundary of a (d-1)-cochain with Z/p coefficients, by the alternating face sum.
inline std::vector<std::size_t> coboundary(const CombinatorialBase& k, int d, const std::vector<std::size_t>& c, std::size_t p) {
  const auto& top = k.simplices(d);
  std::vector<std::size_t> out(top.size(), 0);
  for (std::size_t s = 0; s < top.size(); ++s) {
    long acc = 0;
    for (std::size_t i = 0; i < top[s].size(); ++i) {
      Simplex face = top[s];
      face.erase(face.begin() + static_cast<long>(i));
      long v = static_cast<long>(c[*k.index_of(face)]);
      acc += (i % 2 ? -v : v);
    }
    out[s] = static_cast<std::size_t>(((acc % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p));
  }
  return out;
}

// |H^d(K; Z/p)| = |Z^d| / |B^d| by listing cochains.
inline std::size_t cohomology_order(const CombinatorialBase& k, std::size_t p, int d) {
  const std::size_t nd = k.count(d);
  std::size_t cocycles = 0;
  for_each_tuple(nd, p, [&](const std::vector<std::size_t>& c) {
    if (d + 1 > k.dimension()) {
      ++cocycles;
      return;
    }
    auto dc = coboundary(k, d + 1, c, p);
    if (std::all_of(dc.begin(), dc.end(), [](std::size_t x) { return x == 0; })) ++cocycles;
  });
  std::set<std::vector<std::size_t>> boundaries;
  if (d == 0) {
    boundaries.insert(std::vector<std::size_t>(nd, 0));
  } else {
    for_each_tuple(k.count(d - 1), p, [&](const std::vector<std::size_t>& c) { boundaries.insert(coboundary(k, d, c, p)); });
  }
  return cocycles / boundaries.size();
}

// Every fully parenthesized word x_{v0 v1} ... x_{v(m-1) vm} over subchains 0 = v0 < ... < vm = k, written
// as the library spells composites: (g*f) with g applied after f.
inline std::set<std::string> parenthesized_words(int k) {
  std::set<std::string> out;
  std::function<std::vector<std::string>(const std::vector<int>&, std::size_t, std::size_t)> trees =
      [&](const std::vector<int>& v, std::size_t lo, std::size_t hi) -> std::vector<std::string> {
    if (hi - lo == 1) return {"x[" + std::to_string(v[lo]) + "," + std::to_string(v[hi]) + "]"};
    std::vector<std::string> r;
    for (std::size_t mid = lo + 1; mid < hi; ++mid)
      for (const auto& first : trees(v, lo, mid))
        for (const auto& second : trees(v, mid, hi)) r.push_back("(" + second + "*" + first + ")");
    return r;
  };
  for (std::size_t mask = 0; mask < (std::size_t{1} << std::max(k - 1, 0)); ++mask) {
    std::vector<int> v{0};
    for (int i = 1; i < k; ++i)
      if (mask >> (i - 1) & 1) v.push_back(i);
    v.push_back(k);
    for (auto& w : trees(v, 0, v.size() - 1)) out.insert(w);
  }
  return out;
}

// Vertices a word passes through, read off its generators.
inline std::set<int> word_chain(const std::string& w) {
  std::set<int> out;
  static const std::regex gen(R"(x\[(\d+),(\d+)\])");
  for (auto it = std::sregex_iterator(w.begin(), w.end(), gen); it != std::sregex_iterator(); ++it) {
    out.insert(std::stoi((*it)[1]));
    out.insert(std::stoi((*it)[2]));
  }
  return out;
}

// All phi: h_s => h_t with phi * f = psi.
inline std::vector<TwoCellId> left_whisker_solutions(const TwoCategory& c, TwoCellId psi, OneCellId f, OneCellId h_s,
                                                     OneCellId h_t) {
  std::vector<TwoCellId> out;
  for (std::uint32_t z = 0; z < c.two_cell_count(); ++z) {
    TwoCellId phi{z};
    if (c.source(phi) != h_s || c.target(phi) != h_t) continue;
    if (c.try_rwhisker(phi, f) == psi) out.push_back(phi);
  }
  return out;
}

// All phi: h_s => h_t with f * phi = psi.
inline std::vector<TwoCellId> right_whisker_solutions(const TwoCategory& c, TwoCellId psi, OneCellId f, OneCellId h_s,
                                                      OneCellId h_t) {
  std::vector<TwoCellId> out;
  for (std::uint32_t z = 0; z < c.two_cell_count(); ++z) {
    TwoCellId phi{z};
    if (c.source(phi) != h_s || c.target(phi) != h_t) continue;
    if (c.try_lwhisker(f, phi) == psi) out.push_back(phi);
  }
  return out;
}

// Number of (n+1)-tuples of (n-1)-simplices with d_i x_j = d_(j-1) x_i for i < j, by backtracking.
inline std::size_t boundary_tuple_count(const FinSimplicialSet& x, int n) {
  const auto& faces = x.tables().faces;
  std::vector<std::uint32_t> t(n + 1);
  std::function<std::size_t(int)> go = [&](int j) -> std::size_t {
    if (j > n) return 1;
    std::size_t total = 0;
    for (std::uint32_t z = 0; z < x.size(n - 1); ++z) {
      bool ok = true;
      for (int i = 0; i < j && ok; ++i) ok = faces[n - 1][i][z] == faces[n - 1][j - 1][t[i]];
      if (!ok) continue;
      t[j] = z;
      total += go(j + 1);
    }
    return total;
  };
  return go(0);
}

// Whether some phi: C_0 -> C'_1 satisfies f1 - g1 = phi d and f0 - g0 = d' phi.
inline bool homotopic(const FpMatrix& f1, const FpMatrix& f0, const FpMatrix& g1, const FpMatrix& g0, const FpMatrix& d,
                      const FpMatrix& d2) {
  bool found = false;
  FpMatrix::for_each(d.prime(), f1.rows(), d.rows(), [&](const FpMatrix& phi) {
    if (!found && f1 - g1 == phi * d && f0 - g0 == d2 * phi) found = true;
  });
  return found;
}

// Every chain map C' -> C for the differentials d (C) and d2 (C').
inline std::vector<std::pair<FpMatrix, FpMatrix>> chain_maps(const FpMatrix& d2, const FpMatrix& d) {
  std::vector<std::pair<FpMatrix, FpMatrix>> out;
  FpMatrix::for_each(d.prime(), d.cols(), d2.cols(), [&](const FpMatrix& g1) {
    FpMatrix::for_each(d.prime(), d.rows(), d2.rows(), [&](const FpMatrix& g0) {
      if (g0 * d2 == d * g1) out.emplace_back(g1, g0);
    });
  });
  return out;
}

// f: C -> C' is a chain equivalence iff some chain map g: C' -> C has gf ~ 1 and fg ~ 1.
inline bool has_homotopy_inverse(const FpMatrix& f1, const FpMatrix& f0, const FpMatrix& d, const FpMatrix& d2) {
  const auto p = d.prime();
  for (const auto& [g1, g0] : chain_maps(d2, d)) {
    if (homotopic(g1 * f1, g0 * f0, FpMatrix::identity(p, d.cols()), FpMatrix::identity(p, d.rows()), d, d) &&
        homotopic(f1 * g1, f0 * g0, FpMatrix::identity(p, d2.cols()), FpMatrix::identity(p, d2.rows()), d2, d2))
      return true;
  }
  return false;
}

inline std::size_t invertible_matrix_count(std::size_t n, std::uint32_t p) {
  std::size_t count = 0;
  FpMatrix::for_each(p, n, n, [&](const FpMatrix& m) {
    if (m.rank() == n) ++count;
  });
  return count;
}

// Every bundle over `base` by trying all table assignments, kept when valid and accepted by `keep`.
inline std::vector<Bundle> all_bundles(StructurePtr s, const CombinatorialBase& base, const std::function<bool(const Bundle&)>& keep) {
  std::vector<Bundle> out;
  const std::size_t nv = base.count(0), ne = base.dimension() >= 1 ? base.count(1) : 0,
                    nt = base.dimension() >= 2 ? base.count(2) : 0;
  Bundle b = blank_bundle(s, base);
  for_each_tuple(nv, s->object_count(), [&](const std::vector<std::size_t>& v) {
    for (std::size_t i = 0; i < nv; ++i) b.V[i] = ObjectId{static_cast<std::uint32_t>(v[i])};
    for_each_tuple(ne, s->one_cell_count(), [&](const std::vector<std::size_t>& e) {
      for (std::size_t i = 0; i < ne; ++i) b.E[i] = OneCellId{static_cast<std::uint32_t>(e[i])};
      for_each_tuple(nt, s->two_cell_count(), [&](const std::vector<std::size_t>& t) {
        for (std::size_t i = 0; i < nt; ++i) b.phi[i] = TwoCellId{static_cast<std::uint32_t>(t[i])};
        if (validate_bundle(b).ok() && keep(b)) out.push_back(b);
      });
    });
  });
  return out;
}

}  // namespace oracle
