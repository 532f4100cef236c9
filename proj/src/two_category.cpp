#include "twobundle/two_category.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "twobundle/error.hpp"

namespace twobundle {

namespace {

std::string cell_str(const char* kind, std::uint32_t id) { return std::string(kind) + std::to_string(id); }

template <class Row>
void set_entry(std::vector<std::uint32_t>& table, std::uint64_t slot, std::uint32_t value, const Row& describe) {
  if (table[slot] != kAbsent && table[slot] != value) fail(Errc::malformed_table, "conflicting entries for " + describe());
  table[slot] = value;
}

}  // namespace

std::span<const OneCellId> TwoCategory::one_cells_from(ObjectId x) const {
  return {from_sorted_.data() + from_begin_[x.value], from_sorted_.data() + from_begin_[x.value + 1]};
}

std::span<const OneCellId> TwoCategory::one_cells_to(ObjectId y) const {
  return {to_sorted_.data() + to_begin_[y.value], to_sorted_.data() + to_begin_[y.value + 1]};
}

std::span<const OneCellId> TwoCategory::one_cells_between(ObjectId x, ObjectId y) const {
  auto all = one_cells_from(x);
  auto lo = std::lower_bound(all.begin(), all.end(), y, [&](OneCellId f, ObjectId t) { return target(f) < t; });
  auto hi = std::upper_bound(lo, all.end(), y, [&](ObjectId t, OneCellId f) { return t < target(f); });
  return {lo, hi};
}

std::span<const TwoCellId> TwoCategory::two_cells_from(OneCellId f) const {
  return {two_from_sorted_.data() + two_from_begin_[f.value], two_from_sorted_.data() + two_from_begin_[f.value + 1]};
}

std::span<const TwoCellId> TwoCategory::two_cells_to(OneCellId g) const {
  return {two_to_sorted_.data() + two_to_begin_[g.value], two_to_sorted_.data() + two_to_begin_[g.value + 1]};
}

std::span<const TwoCellId> TwoCategory::two_cells_between(OneCellId f, OneCellId g) const {
  auto all = two_cells_from(f);
  auto lo = std::lower_bound(all.begin(), all.end(), g, [&](TwoCellId phi, OneCellId t) { return target(phi) < t; });
  auto hi = std::upper_bound(lo, all.end(), g, [&](OneCellId t, TwoCellId phi) { return t < target(phi); });
  return {lo, hi};
}

std::optional<OneCellId> TwoCategory::try_compose(OneCellId g, OneCellId f) const {
  if (target(f) != source(g)) return std::nullopt;
  auto v = hcomp_[hcomp_off_[f.value] + rank_from_[g.value]];
  if (v == kAbsent) return std::nullopt;
  return OneCellId{v};
}

std::optional<TwoCellId> TwoCategory::try_vcomp(TwoCellId psi, TwoCellId phi) const {
  if (target(phi) != source(psi)) return std::nullopt;
  auto v = vcomp_[vcomp_off_[phi.value] + rank_two_from_[psi.value]];
  if (v == kAbsent) return std::nullopt;
  return TwoCellId{v};
}

std::optional<TwoCellId> TwoCategory::try_lwhisker(OneCellId g, TwoCellId phi) const {
  if (target(source(phi)) != source(g)) return std::nullopt;
  auto v = lw_[lw_off_[phi.value] + rank_from_[g.value]];
  if (v == kAbsent) return std::nullopt;
  return TwoCellId{v};
}

std::optional<TwoCellId> TwoCategory::try_rwhisker(TwoCellId phi, OneCellId f) const {
  if (source(source(phi)) != target(f)) return std::nullopt;
  auto v = rw_[rw_off_[phi.value] + rank_to_[f.value]];
  if (v == kAbsent) return std::nullopt;
  return TwoCellId{v};
}

std::uint64_t TwoCategory::triple_key(OneCellId h, OneCellId g, OneCellId f) const {
  const std::uint64_t n = one_cells_.size();
  return (static_cast<std::uint64_t>(h.value) * n + g.value) * n + f.value;
}

std::optional<TwoCellId> TwoCategory::try_associator(OneCellId h, OneCellId g, OneCellId f) const {
  if (target(f) != source(g) || target(g) != source(h)) return std::nullopt;
  if (auto it = alpha_.find(triple_key(h, g, f)); it != alpha_.end()) return TwoCellId{it->second};
  auto gf = try_compose(g, f);
  auto hg = try_compose(h, g);
  if (!gf || !hg) return std::nullopt;
  auto l = try_compose(h, *gf);
  auto r = try_compose(*hg, f);
  if (!l || !r || *l != *r) return std::nullopt;
  return identity(*l);
}

std::optional<TwoCellId> TwoCategory::try_left_unitor(OneCellId f) const {
  if (lambda_[f.value] != kAbsent) return TwoCellId{lambda_[f.value]};
  auto l = try_compose(identity(target(f)), f);
  if (!l || *l != f) return std::nullopt;
  return identity(f);
}

std::optional<TwoCellId> TwoCategory::try_right_unitor(OneCellId f) const {
  if (rho_[f.value] != kAbsent) return TwoCellId{rho_[f.value]};
  auto r = try_compose(f, identity(source(f)));
  if (!r || *r != f) return std::nullopt;
  return identity(f);
}

OneCellId TwoCategory::compose(OneCellId g, OneCellId f) const {
  if (target(f) != source(g))
    fail(Errc::boundary_mismatch, "1-cells " + cell_str("f", g.value) + ", " + cell_str("f", f.value) + " not composable");
  if (auto r = try_compose(g, f)) return *r;
  fail(Errc::malformed_table, "missing composite " + cell_str("f", g.value) + "*" + cell_str("f", f.value));
}

TwoCellId TwoCategory::vcomp(TwoCellId psi, TwoCellId phi) const {
  if (target(phi) != source(psi))
    fail(Errc::boundary_mismatch, "2-cells " + cell_str("c", psi.value) + ", " + cell_str("c", phi.value) + " not composable");
  if (auto r = try_vcomp(psi, phi)) return *r;
  fail(Errc::malformed_table, "missing vertical composite " + cell_str("c", psi.value) + cell_str("c", phi.value));
}

TwoCellId TwoCategory::lwhisker(OneCellId g, TwoCellId phi) const {
  if (target(source(phi)) != source(g))
    fail(Errc::boundary_mismatch, "cannot whisker " + cell_str("c", phi.value) + " by " + cell_str("f", g.value));
  if (auto r = try_lwhisker(g, phi)) return *r;
  fail(Errc::malformed_table, "missing whisker " + cell_str("f", g.value) + "*" + cell_str("c", phi.value));
}

TwoCellId TwoCategory::rwhisker(TwoCellId phi, OneCellId f) const {
  if (source(source(phi)) != target(f))
    fail(Errc::boundary_mismatch, "cannot whisker " + cell_str("c", phi.value) + " by " + cell_str("f", f.value));
  if (auto r = try_rwhisker(phi, f)) return *r;
  fail(Errc::malformed_table, "missing whisker " + cell_str("c", phi.value) + "*" + cell_str("f", f.value));
}

TwoCellId TwoCategory::associator(OneCellId h, OneCellId g, OneCellId f) const {
  if (target(f) != source(g) || target(g) != source(h)) fail(Errc::boundary_mismatch, "associator on non-composable triple");
  if (auto r = try_associator(h, g, f)) return *r;
  fail(Errc::malformed_table, "missing associator for (" + std::to_string(h.value) + "," + std::to_string(g.value) + "," +
                                  std::to_string(f.value) + ")");
}

TwoCellId TwoCategory::left_unitor(OneCellId f) const {
  if (auto r = try_left_unitor(f)) return *r;
  fail(Errc::malformed_table, "missing left unitor for " + cell_str("f", f.value));
}

TwoCellId TwoCategory::right_unitor(OneCellId f) const {
  if (auto r = try_right_unitor(f)) return *r;
  fail(Errc::malformed_table, "missing right unitor for " + cell_str("f", f.value));
}

TwoCellId TwoCategory::vcomp_chain(std::initializer_list<TwoCellId> cells) const {
  if (cells.size() == 0) fail(Errc::boundary_mismatch, "empty vertical chain");
  auto it = std::rbegin(cells);
  TwoCellId acc = *it;
  for (++it; it != std::rend(cells); ++it) acc = vcomp(*it, acc);
  return acc;
}

TwoCellId TwoCategory::hcomp(TwoCellId psi, TwoCellId phi) const {
  return vcomp(rwhisker(psi, target(phi)), lwhisker(source(psi), phi));
}

// ---------------------------------------------------------------------------

TwoCategory::Builder& TwoCategory::Builder::set_name(std::string name) {
  name_ = std::move(name);
  return *this;
}

ObjectId TwoCategory::Builder::add_object() {
  object_identity_.push_back(kAbsent);
  return ObjectId{static_cast<std::uint32_t>(objects_++)};
}

OneCellId TwoCategory::Builder::add_one_cell(ObjectId source, ObjectId target) {
  if (source.value >= objects_ || target.value >= objects_) fail(Errc::malformed_table, "1-cell endpoint out of range");
  one_cells_.push_back({source, target});
  one_cell_identity_.push_back(kAbsent);
  return OneCellId{static_cast<std::uint32_t>(one_cells_.size() - 1)};
}

TwoCellId TwoCategory::Builder::add_two_cell(OneCellId source, OneCellId target) {
  if (source.value >= one_cells_.size() || target.value >= one_cells_.size())
    fail(Errc::malformed_table, "2-cell boundary out of range");
  if (one_cells_[source.value].source != one_cells_[target.value].source ||
      one_cells_[source.value].target != one_cells_[target.value].target)
    fail(Errc::malformed_table, "2-cell between non-parallel 1-cells f" + std::to_string(source.value) + ", f" +
                                    std::to_string(target.value));
  two_cells_.push_back({source, target});
  return TwoCellId{static_cast<std::uint32_t>(two_cells_.size() - 1)};
}

void TwoCategory::Builder::set_identity(ObjectId x, OneCellId f) {
  if (x.value >= objects_) fail(Errc::malformed_table, "object out of range");
  object_identity_[x.value] = f.value;
}

void TwoCategory::Builder::set_identity(OneCellId f, TwoCellId phi) {
  if (f.value >= one_cells_.size()) fail(Errc::malformed_table, "1-cell out of range");
  one_cell_identity_[f.value] = phi.value;
}

void TwoCategory::Builder::set_compose(OneCellId g, OneCellId f, OneCellId result) {
  compose_.emplace_back(g.value, f.value, result.value);
}
void TwoCategory::Builder::set_vcomp(TwoCellId psi, TwoCellId phi, TwoCellId result) {
  vcomp_.emplace_back(psi.value, phi.value, result.value);
}
void TwoCategory::Builder::set_lwhisker(OneCellId g, TwoCellId phi, TwoCellId result) {
  lw_.emplace_back(g.value, phi.value, result.value);
}
void TwoCategory::Builder::set_rwhisker(TwoCellId phi, OneCellId f, TwoCellId result) {
  rw_.emplace_back(phi.value, f.value, result.value);
}
void TwoCategory::Builder::set_associator(OneCellId h, OneCellId g, OneCellId f, TwoCellId cell) {
  alpha_.emplace_back(h.value, g.value, f.value, cell.value);
}
void TwoCategory::Builder::set_left_unitor(OneCellId f, TwoCellId cell) { lambda_.emplace_back(f.value, cell.value); }
void TwoCategory::Builder::set_right_unitor(OneCellId f, TwoCellId cell) { rho_.emplace_back(f.value, cell.value); }

TwoCategory TwoCategory::Builder::build() && {
  TwoCategory c;
  c.name_ = std::move(name_);
  c.one_cells_ = std::move(one_cells_);
  c.two_cells_ = std::move(two_cells_);
  const auto n0 = objects_;
  const auto n1 = c.one_cells_.size();
  const auto n2 = c.two_cells_.size();

  for (std::size_t x = 0; x < n0; ++x) {
    auto f = object_identity_[x];
    if (f == kAbsent) fail(Errc::malformed_table, "object " + std::to_string(x) + " has no identity 1-cell");
    if (f >= n1 || c.one_cells_[f].source.value != x || c.one_cells_[f].target.value != x)
      fail(Errc::malformed_table, "identity of object " + std::to_string(x) + " is not an endo-1-cell on it");
    c.object_identity_.push_back(OneCellId{f});
  }
  for (std::size_t f = 0; f < n1; ++f) {
    auto phi = one_cell_identity_[f];
    if (phi == kAbsent) fail(Errc::malformed_table, "1-cell " + std::to_string(f) + " has no identity 2-cell");
    if (phi >= n2 || c.two_cells_[phi].source.value != f || c.two_cells_[phi].target.value != f)
      fail(Errc::malformed_table, "identity of 1-cell " + std::to_string(f) + " has the wrong boundary");
    c.one_cell_identity_.push_back(TwoCellId{phi});
  }

  // adjacency
  c.from_sorted_.resize(n1);
  for (std::size_t i = 0; i < n1; ++i) c.from_sorted_[i] = OneCellId{static_cast<std::uint32_t>(i)};
  c.to_sorted_ = c.from_sorted_;
  std::sort(c.from_sorted_.begin(), c.from_sorted_.end(), [&](OneCellId a, OneCellId b) {
    return std::tie(c.one_cells_[a.value].source, c.one_cells_[a.value].target, a) <
           std::tie(c.one_cells_[b.value].source, c.one_cells_[b.value].target, b);
  });
  std::sort(c.to_sorted_.begin(), c.to_sorted_.end(), [&](OneCellId a, OneCellId b) {
    return std::tie(c.one_cells_[a.value].target, c.one_cells_[a.value].source, a) <
           std::tie(c.one_cells_[b.value].target, c.one_cells_[b.value].source, b);
  });
  c.from_begin_.assign(n0 + 1, 0);
  c.to_begin_.assign(n0 + 1, 0);
  for (const auto& f : c.one_cells_) {
    ++c.from_begin_[f.source.value + 1];
    ++c.to_begin_[f.target.value + 1];
  }
  for (std::size_t x = 0; x < n0; ++x) {
    c.from_begin_[x + 1] += c.from_begin_[x];
    c.to_begin_[x + 1] += c.to_begin_[x];
  }
  c.rank_from_.assign(n1, 0);
  c.rank_to_.assign(n1, 0);
  for (std::size_t i = 0; i < n1; ++i) {
    auto f = c.from_sorted_[i];
    c.rank_from_[f.value] = static_cast<std::uint32_t>(i - c.from_begin_[c.one_cells_[f.value].source.value]);
    auto g = c.to_sorted_[i];
    c.rank_to_[g.value] = static_cast<std::uint32_t>(i - c.to_begin_[c.one_cells_[g.value].target.value]);
  }

  c.two_from_sorted_.resize(n2);
  for (std::size_t i = 0; i < n2; ++i) c.two_from_sorted_[i] = TwoCellId{static_cast<std::uint32_t>(i)};
  c.two_to_sorted_ = c.two_from_sorted_;
  std::sort(c.two_from_sorted_.begin(), c.two_from_sorted_.end(), [&](TwoCellId a, TwoCellId b) {
    return std::tie(c.two_cells_[a.value].source, c.two_cells_[a.value].target, a) <
           std::tie(c.two_cells_[b.value].source, c.two_cells_[b.value].target, b);
  });
  std::sort(c.two_to_sorted_.begin(), c.two_to_sorted_.end(), [&](TwoCellId a, TwoCellId b) {
    return std::tie(c.two_cells_[a.value].target, c.two_cells_[a.value].source, a) <
           std::tie(c.two_cells_[b.value].target, c.two_cells_[b.value].source, b);
  });
  c.two_from_begin_.assign(n1 + 1, 0);
  c.two_to_begin_.assign(n1 + 1, 0);
  for (const auto& phi : c.two_cells_) {
    ++c.two_from_begin_[phi.source.value + 1];
    ++c.two_to_begin_[phi.target.value + 1];
  }
  for (std::size_t f = 0; f < n1; ++f) {
    c.two_from_begin_[f + 1] += c.two_from_begin_[f];
    c.two_to_begin_[f + 1] += c.two_to_begin_[f];
  }
  c.rank_two_from_.assign(n2, 0);
  for (std::size_t i = 0; i < n2; ++i) {
    auto phi = c.two_from_sorted_[i];
    c.rank_two_from_[phi.value] = static_cast<std::uint32_t>(i - c.two_from_begin_[c.two_cells_[phi.value].source.value]);
  }

  auto from_size = [&](ObjectId x) { return std::uint64_t{c.from_begin_[x.value + 1] - c.from_begin_[x.value]}; };
  auto to_size = [&](ObjectId x) { return std::uint64_t{c.to_begin_[x.value + 1] - c.to_begin_[x.value]}; };

  c.hcomp_off_.resize(n1);
  std::uint64_t total = 0;
  for (std::size_t f = 0; f < n1; ++f) {
    c.hcomp_off_[f] = total;
    total += from_size(c.one_cells_[f].target);
  }
  c.hcomp_.assign(total, kAbsent);

  c.vcomp_off_.resize(n2);
  c.lw_off_.resize(n2);
  c.rw_off_.resize(n2);
  std::uint64_t tv = 0, tl = 0, tr = 0;
  for (std::size_t phi = 0; phi < n2; ++phi) {
    auto f = c.two_cells_[phi].source;
    auto g = c.two_cells_[phi].target;
    c.vcomp_off_[phi] = tv;
    tv += c.two_from_begin_[g.value + 1] - c.two_from_begin_[g.value];
    c.lw_off_[phi] = tl;
    tl += from_size(c.one_cells_[f.value].target);
    c.rw_off_[phi] = tr;
    tr += to_size(c.one_cells_[f.value].source);
  }
  c.vcomp_.assign(tv, kAbsent);
  c.lw_.assign(tl, kAbsent);
  c.rw_.assign(tr, kAbsent);

  auto check1 = [&](std::uint32_t f) {
    if (f >= n1) fail(Errc::malformed_table, "1-cell id " + std::to_string(f) + " out of range");
  };
  auto check2 = [&](std::uint32_t phi) {
    if (phi >= n2) fail(Errc::malformed_table, "2-cell id " + std::to_string(phi) + " out of range");
  };

  for (auto [g, f, r] : compose_) {
    check1(g), check1(f), check1(r);
    const auto& cf = c.one_cells_[f];
    const auto& cg = c.one_cells_[g];
    const auto& cr = c.one_cells_[r];
    if (cf.target != cg.source) fail(Errc::malformed_table, "composite of non-composable f" + std::to_string(g) + ", f" + std::to_string(f));
    if (cr.source != cf.source || cr.target != cg.target)
      fail(Errc::malformed_table, "composite f" + std::to_string(g) + "*f" + std::to_string(f) + " has wrong endpoints");
    set_entry(c.hcomp_, c.hcomp_off_[f] + c.rank_from_[g], r, [&] { return "f" + std::to_string(g) + "*f" + std::to_string(f); });
  }
  for (auto [psi, phi, r] : vcomp_) {
    check2(psi), check2(phi), check2(r);
    if (c.two_cells_[phi].target != c.two_cells_[psi].source)
      fail(Errc::malformed_table, "vertical composite of non-composable c" + std::to_string(psi) + ", c" + std::to_string(phi));
    if (c.two_cells_[r].source != c.two_cells_[phi].source || c.two_cells_[r].target != c.two_cells_[psi].target)
      fail(Errc::malformed_table, "vertical composite c" + std::to_string(psi) + "c" + std::to_string(phi) + " has wrong boundary");
    set_entry(c.vcomp_, c.vcomp_off_[phi] + c.rank_two_from_[psi], r, [&] { return "c" + std::to_string(psi) + "c" + std::to_string(phi); });
  }
  auto composite_or_skip = [&](std::uint32_t g, std::uint32_t f) -> std::uint32_t {
    return c.hcomp_[c.hcomp_off_[f] + c.rank_from_[g]];
  };
  for (auto [g, phi, r] : lw_) {
    check1(g), check2(phi), check2(r);
    auto s = c.two_cells_[phi].source.value;
    auto t = c.two_cells_[phi].target.value;
    if (c.one_cells_[s].target != c.one_cells_[g].source)
      fail(Errc::malformed_table, "left whisker of non-composable f" + std::to_string(g) + ", c" + std::to_string(phi));
    auto gs = composite_or_skip(g, s);
    auto gt = composite_or_skip(g, t);
    if ((gs != kAbsent && c.two_cells_[r].source.value != gs) || (gt != kAbsent && c.two_cells_[r].target.value != gt))
      fail(Errc::malformed_table, "left whisker f" + std::to_string(g) + "*c" + std::to_string(phi) + " has wrong boundary");
    set_entry(c.lw_, c.lw_off_[phi] + c.rank_from_[g], r, [&] { return "f" + std::to_string(g) + "*c" + std::to_string(phi); });
  }
  for (auto [phi, f, r] : rw_) {
    check2(phi), check1(f), check2(r);
    auto s = c.two_cells_[phi].source.value;
    auto t = c.two_cells_[phi].target.value;
    if (c.one_cells_[s].source != c.one_cells_[f].target)
      fail(Errc::malformed_table, "right whisker of non-composable c" + std::to_string(phi) + ", f" + std::to_string(f));
    auto sf = composite_or_skip(s, f);
    auto tf = composite_or_skip(t, f);
    if ((sf != kAbsent && c.two_cells_[r].source.value != sf) || (tf != kAbsent && c.two_cells_[r].target.value != tf))
      fail(Errc::malformed_table, "right whisker c" + std::to_string(phi) + "*f" + std::to_string(f) + " has wrong boundary");
    set_entry(c.rw_, c.rw_off_[phi] + c.rank_to_[f], r, [&] { return "c" + std::to_string(phi) + "*f" + std::to_string(f); });
  }

  c.explicit_coherence_ = !alpha_.empty() || !lambda_.empty() || !rho_.empty();
  for (auto [h, g, f, a] : alpha_) {
    check1(h), check1(g), check1(f), check2(a);
    if (c.one_cells_[f].target != c.one_cells_[g].source || c.one_cells_[g].target != c.one_cells_[h].source)
      fail(Errc::malformed_table, "associator on non-composable triple");
    auto gf = composite_or_skip(g, f);
    auto hg = composite_or_skip(h, g);
    if (gf != kAbsent && hg != kAbsent) {
      auto l = composite_or_skip(h, gf);
      auto r = composite_or_skip(hg, f);
      if ((l != kAbsent && c.two_cells_[a].source.value != l) || (r != kAbsent && c.two_cells_[a].target.value != r))
        fail(Errc::malformed_table, "associator (" + std::to_string(h) + "," + std::to_string(g) + "," + std::to_string(f) +
                                        ") has wrong boundary");
    }
    auto key = c.triple_key(OneCellId{h}, OneCellId{g}, OneCellId{f});
    auto [it, inserted] = c.alpha_.emplace(key, a);
    if (!inserted && it->second != a) fail(Errc::malformed_table, "conflicting associator entries");
  }
  c.lambda_.assign(n1, kAbsent);
  c.rho_.assign(n1, kAbsent);
  for (auto [f, l] : lambda_) {
    check1(f), check2(l);
    auto idf = composite_or_skip(c.object_identity_[c.one_cells_[f].target.value].value, f);
    if (c.two_cells_[l].target.value != f || (idf != kAbsent && c.two_cells_[l].source.value != idf))
      fail(Errc::malformed_table, "left unitor of f" + std::to_string(f) + " has wrong boundary");
    set_entry(c.lambda_, f, l, [&] { return "lambda f" + std::to_string(f); });
  }
  for (auto [f, r] : rho_) {
    check1(f), check2(r);
    auto fid = composite_or_skip(f, c.object_identity_[c.one_cells_[f].source.value].value);
    if (c.two_cells_[r].target.value != f || (fid != kAbsent && c.two_cells_[r].source.value != fid))
      fail(Errc::malformed_table, "right unitor of f" + std::to_string(f) + " has wrong boundary");
    set_entry(c.rho_, f, r, [&] { return "rho f" + std::to_string(f); });
  }
  return c;
}

}  // namespace twobundle
