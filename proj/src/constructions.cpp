#include "twobundle/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "twobundle/error.hpp"

namespace twobundle {

namespace {

std::vector<std::string> numeric_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace

FiniteMonoid trivial_group() { return cyclic_group(1); }

FiniteMonoid cyclic_group(std::size_t n) {
  if (n == 0) fail(Errc::malformed_table, "cyclic group of order 0");
  FiniteMonoid m{"Z/" + std::to_string(n), n, std::vector<std::uint32_t>(n * n), 0, numeric_labels(n)};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) m.table[a * n + b] = static_cast<std::uint32_t>((a + b) % n);
  return m;
}

FiniteMonoid symmetric_group(std::size_t n) {
  std::vector<std::vector<std::uint32_t>> perms;
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0u);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const auto order = perms.size();
  FiniteMonoid m{"S" + std::to_string(n), order, std::vector<std::uint32_t>(order * order), 0, {}};
  for (const auto& q : perms) {
    std::string s;
    for (auto v : q) s += std::to_string(v);
    m.labels.push_back(s);
  }
  // (a*b)(i) = a(b(i))
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      std::vector<std::uint32_t> c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      auto it = std::lower_bound(perms.begin(), perms.end(), c);
      m.table[a * order + b] = static_cast<std::uint32_t>(it - perms.begin());
    }
  return m;
}

FiniteMonoid idempotent_monoid() { return FiniteMonoid{"{1,a}", 2, {0, 1, 1, 1}, 0, {"1", "a"}}; }

std::vector<FpMatrix> general_linear_elements(std::size_t n, std::uint32_t p) {
  std::vector<FpMatrix> out;
  FpMatrix::for_each(p, n, n, [&](const FpMatrix& a) {
    if (a.rank() == n) out.push_back(a);
  });
  std::sort(out.begin(), out.end());
  return out;
}

FiniteMonoid general_linear_group(std::size_t n, std::uint32_t p) {
  auto elems = general_linear_elements(n, p);
  const auto order = elems.size();
  FiniteMonoid m{"GL(" + std::to_string(n) + ",F" + std::to_string(p) + ")", order, std::vector<std::uint32_t>(order * order), 0, {}};
  auto index = [&](const FpMatrix& a) {
    return static_cast<std::uint32_t>(std::lower_bound(elems.begin(), elems.end(), a) - elems.begin());
  };
  m.unit = index(FpMatrix::identity(p, n));
  for (const auto& a : elems) m.labels.push_back(a.to_string());
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) m.table[a * order + b] = index(elems[a] * elems[b]);
  return m;
}

FiniteMonoid product_monoid(const FiniteMonoid& g, const FiniteMonoid& h) {
  const auto order = g.order * h.order;
  FiniteMonoid m{g.name + "x" + h.name, order, std::vector<std::uint32_t>(order * order), 0, {}};
  m.unit = static_cast<std::uint32_t>(g.unit * h.order + h.unit);
  for (std::size_t a = 0; a < g.order; ++a)
    for (std::size_t b = 0; b < h.order; ++b) m.labels.push_back("(" + g.labels[a] + "," + h.labels[b] + ")");
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) {
      auto a = g.mul(static_cast<std::uint32_t>(x / h.order), static_cast<std::uint32_t>(y / h.order));
      auto b = h.mul(static_cast<std::uint32_t>(x % h.order), static_cast<std::uint32_t>(y % h.order));
      m.table[x * order + y] = static_cast<std::uint32_t>(a * h.order + b);
    }
  return m;
}

void check_monoid(const FiniteMonoid& m) {
  const auto n = m.order;
  if (m.table.size() != n * n || (n > 0 && m.unit >= n)) fail(Errc::malformed_table, "monoid table has the wrong shape");
  for (auto v : m.table) {
    if (v >= n) fail(Errc::malformed_table, "monoid table entry out of range");
  }
  for (std::uint32_t a = 0; a < n; ++a) {
    if (m.mul(m.unit, a) != a || m.mul(a, m.unit) != a) fail(Errc::not_associative, "unit fails on " + std::to_string(a));
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c) {
        if (m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c)))
          fail(Errc::not_associative, "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
      }
  }
}

FiniteCategory one_object_category(const FiniteMonoid& m) {
  check_monoid(m);
  FiniteCategory c;
  c.name = m.name;
  c.objects = 1;
  c.identities = {m.unit};
  for (std::uint32_t a = 0; a < m.order; ++a) c.morphisms.emplace_back(0, 0);
  for (std::uint32_t g = 0; g < m.order; ++g)
    for (std::uint32_t f = 0; f < m.order; ++f) c.composition[{g, f}] = m.mul(g, f);
  return c;
}

FiniteCategory ordinal_category(std::size_t n) {
  FiniteCategory c;
  c.name = "[" + std::to_string(n) + "]";
  c.objects = n + 1;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> arrow;
  for (std::uint32_t i = 0; i <= n; ++i)
    for (std::uint32_t j = i; j <= n; ++j) {
      arrow[{i, j}] = static_cast<std::uint32_t>(c.morphisms.size());
      c.morphisms.emplace_back(i, j);
    }
  for (std::uint32_t i = 0; i <= n; ++i) c.identities.push_back(arrow[{i, i}]);
  for (auto [ij, f] : arrow)
    for (std::uint32_t k = ij.second; k <= n; ++k) c.composition[{arrow[{ij.second, k}], f}] = arrow[{ij.first, k}];
  return c;
}

void check_category(const FiniteCategory& c) {
  const auto nm = c.morphisms.size();
  if (c.identities.size() != c.objects) fail(Errc::malformed_table, "identity list has the wrong size");
  for (std::uint32_t x = 0; x < c.objects; ++x) {
    auto i = c.identities[x];
    if (i >= nm || c.morphisms[i] != std::pair{x, x}) fail(Errc::malformed_table, "bad identity morphism");
  }
  auto comp = [&](std::uint32_t g, std::uint32_t f) -> std::uint32_t {
    auto it = c.composition.find({g, f});
    if (it == c.composition.end()) fail(Errc::malformed_table, "missing composite");
    return it->second;
  };
  for (std::uint32_t f = 0; f < nm; ++f) {
    auto [s, t] = c.morphisms[f];
    if (comp(c.identities[t], f) != f || comp(f, c.identities[s]) != f) fail(Errc::not_associative, "unit law fails");
    for (std::uint32_t g = 0; g < nm; ++g) {
      if (c.morphisms[g].first != t) continue;
      auto gf = comp(g, f);
      if (c.morphisms[gf] != std::pair{s, c.morphisms[g].second}) fail(Errc::malformed_table, "composite has the wrong endpoints");
      for (std::uint32_t h = 0; h < nm; ++h) {
        if (c.morphisms[h].first != c.morphisms[g].second) continue;
        if (comp(h, gf) != comp(comp(h, g), f)) fail(Errc::not_associative, "composition is not associative");
      }
    }
  }
}

TwoCategory locally_discrete(const FiniteCategory& cat) {
  check_category(cat);
  TwoCategory::Builder b;
  b.set_name(cat.name);
  for (std::size_t x = 0; x < cat.objects; ++x) b.add_object();
  for (auto [s, t] : cat.morphisms) b.add_one_cell(ObjectId{s}, ObjectId{t});
  for (std::uint32_t f = 0; f < cat.morphisms.size(); ++f) {
    b.add_two_cell(OneCellId{f}, OneCellId{f});
    b.set_identity(OneCellId{f}, TwoCellId{f});
  }
  for (std::uint32_t x = 0; x < cat.objects; ++x) b.set_identity(ObjectId{x}, OneCellId{cat.identities[x]});
  for (auto [gf, r] : cat.composition) {
    auto [g, f] = gf;
    b.set_compose(OneCellId{g}, OneCellId{f}, OneCellId{r});
    b.set_lwhisker(OneCellId{g}, TwoCellId{f}, TwoCellId{r});
    b.set_rwhisker(TwoCellId{g}, OneCellId{f}, TwoCellId{r});
  }
  for (std::uint32_t f = 0; f < cat.morphisms.size(); ++f) b.set_vcomp(TwoCellId{f}, TwoCellId{f}, TwoCellId{f});
  return std::move(b).build();
}

TwoCategory delooping(const FiniteMonoid& m) {
  auto c = locally_discrete(one_object_category(m));
  return c;
}

TwoCategory two_group(std::size_t m, std::size_t k, bool twisted) {
  if (m == 0 || k == 0) fail(Errc::malformed_table, "two_group needs positive orders");
  if (twisted && m % k != 0) fail(Errc::malformed_table, "twisted two_group needs k dividing m");
  TwoCategory::Builder b;
  b.set_name(std::string(twisted ? "twisted " : "") + "2-group(Z/" + std::to_string(m) + ",Z/" + std::to_string(k) + ")");
  auto x = b.add_object();
  for (std::size_t a = 0; a < m; ++a) b.add_one_cell(x, x);
  b.set_identity(x, OneCellId{0});
  auto cell = [&](std::size_t a, std::size_t s) { return TwoCellId{static_cast<std::uint32_t>(a * k + s % k)}; };
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t s = 0; s < k; ++s) b.add_two_cell(OneCellId{static_cast<std::uint32_t>(a)}, OneCellId{static_cast<std::uint32_t>(a)});
  for (std::size_t a = 0; a < m; ++a) {
    OneCellId fa{static_cast<std::uint32_t>(a)};
    b.set_identity(fa, cell(a, 0));
    for (std::size_t c = 0; c < m; ++c) {
      OneCellId fc{static_cast<std::uint32_t>(c)};
      auto ca = (a + c) % m;
      b.set_compose(fc, fa, OneCellId{static_cast<std::uint32_t>(ca)});
      for (std::size_t s = 0; s < k; ++s) {
        b.set_lwhisker(fc, cell(a, s), cell(ca, s));
        b.set_rwhisker(cell(a, s), fc, cell(ca, s));
      }
    }
    for (std::size_t s = 0; s < k; ++s)
      for (std::size_t t = 0; t < k; ++t) b.set_vcomp(cell(a, t), cell(a, s), cell(a, s + t));
  }
  if (twisted) {
    for (std::size_t h = 0; h < m; ++h)
      for (std::size_t g = 0; g < m; ++g)
        for (std::size_t f = 0; f < m; ++f) {
          auto label = h * ((g + f) / m) % k;
          b.set_associator(OneCellId{static_cast<std::uint32_t>(h)}, OneCellId{static_cast<std::uint32_t>(g)},
                           OneCellId{static_cast<std::uint32_t>(f)}, cell((h + g + f) % m, label));
        }
  }
  return std::move(b).build();
}

TwoCategory cyclic_gerbe(std::size_t n) {
  TwoCategory::Builder b;
  b.set_name("gerbe(Z/" + std::to_string(n) + ")");
  if (n == 0) fail(Errc::malformed_table, "cyclic_gerbe needs n >= 1");
  auto x = b.add_object();
  auto e = b.add_one_cell(x, x);
  b.set_identity(x, e);
  b.set_compose(e, e, e);
  for (std::uint32_t s = 0; s < n; ++s) b.add_two_cell(e, e);
  b.set_identity(e, TwoCellId{0});
  for (std::uint32_t s = 0; s < n; ++s) {
    b.set_lwhisker(e, TwoCellId{s}, TwoCellId{s});
    b.set_rwhisker(TwoCellId{s}, e, TwoCellId{s});
    for (std::uint32_t t = 0; t < n; ++t) b.set_vcomp(TwoCellId{t}, TwoCellId{s}, TwoCellId{static_cast<std::uint32_t>((s + t) % n)});
  }
  return std::move(b).build();
}

}  // namespace twobundle
