// One PASS/FAIL line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "twobundle/adjoint.hpp"
#include "twobundle/bundle.hpp"
#include "twobundle/constructions.hpp"
#include "twobundle/examples.hpp"
#include "twobundle/io.hpp"
#include "twobundle/nerve.hpp"
#include "twobundle/simplicial.hpp"

using namespace twobundle;

namespace {

struct Shipped {
  std::string name;
  TwoCategory cat;
};

std::vector<Shipped> shipped_categories() {
  std::vector<Shipped> out;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(TWOBUNDLE_DATA_DIR))
    if (e.path().extension() == ".2cat") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out.push_back({f.stem().string(), load_two_category(f.string())});
  return out;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

bool run(int number, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool in_time = limit_s <= 0 || secs < limit_s;
  bool ok = o.pass && in_time;
  std::printf("[%s] %d. %s: %s (%.2fs%s)\n", ok ? "PASS" : "FAIL", number, title.c_str(), o.detail.c_str(), secs,
              in_time ? "" : ", over time limit");
  std::fflush(stdout);
  return ok;
}

Outcome gerbe_classes() {
  auto sphere = simplex_boundary(3);
  std::ostringstream s;
  bool ok = true;
  for (std::size_t p : {2, 3}) {
    auto c = concordance_classes(std::make_shared<const TwoCategory>(cyclic_gerbe(p)), sphere);
    auto expected = oracle::cohomology_order(sphere, p, 2);
    ok = ok && c.count() == expected;
    s << "p=" << p << ": " << c.count() << " classes, oracle " << expected << "; ";
  }
  return {ok, s.str()};
}

Outcome delooping_classes() {
  auto circle = circle_complex(3);
  auto c = concordance_classes(std::make_shared<const TwoCategory>(delooping(cyclic_group(3))), circle);
  auto expected = oracle::cohomology_order(circle, 3, 1);
  return {c.count() == expected && c.bundles.size() == 27,
          std::to_string(c.bundles.size()) + " bundles, " + std::to_string(c.count()) + " classes, oracle " + std::to_string(expected)};
}

Outcome kan_dichotomy(const std::vector<Shipped>& cats) {
  std::ostringstream s;
  bool ok = true;
  std::size_t groupoids = 0, fillers = 0;
  for (const auto& [name, c] : cats) {
    auto nerve = duskin_nerve(c, 4);
    auto kan = check_discrete_kan(nerve.sset(), 4);
    if (!is_two_groupoid(c)) {
      const auto* first = kan.first_failure();
      bool witnessed = first && first->witness && is_compatible(nerve.sset(), *first->witness) &&
                       horn_fillers(nerve.sset(), *first->witness).empty();
      ok = ok && !kan.kan && witnessed;
      s << name << " fails at (" << (first ? first->n : -1) << "," << (first ? first->k : -1) << ") with horn "
        << (first ? first->witness->to_string() : "-") << "; ";
      continue;
    }
    ++groupoids;
    ok = ok && kan.kan;
    if (!kan.kan) s << name << " not Kan; ";
    HornFiller filler(c, nerve);
    for (int n = 1; n <= 4; ++n)
      for (int k = 0; k <= n; ++k)
        for (const auto& horn : cohorns(nerve.sset(), n, horn_indices(n, k))) {
          auto z = groupoid_horn_filler(c, nerve, horn);
          auto id = nerve.find(z);
          auto all = horn_fillers(nerve.sset(), horn);
          ++fillers;
          if (!id || std::find(all.begin(), all.end(), *id) == all.end()) {
            ok = false;
            s << name << " bad filler for " << horn.to_string() << "; ";
          }
        }
  }
  s << groupoids << " 2-groupoids Kan through dim 4, " << fillers << " constructed fillers checked";
  return {ok, s.str()};
}

Outcome coskeletal(const std::vector<Shipped>& cats) {
  std::ostringstream s;
  bool ok = true;
  for (const auto& [name, c] : cats) {
    auto nerve = duskin_nerve(c, 4);
    auto tuples = oracle::boundary_tuple_count(nerve.sset(), 4);
    ok = ok && tuples == nerve.size(4) && is_coskeletal(nerve.sset(), 3);
    s << name << " " << nerve.size(4) << "/" << tuples << "; ";
  }
  return {ok, s.str()};
}

Outcome flags(const std::vector<Shipped>& cats) {
  std::size_t simplices = 0, alternatives = 0, bad = 0;
  for (const auto& [name, c] : cats) {
    // a second intermediate index first appears in dimension 4
    auto nerve = duskin_nerve(c, 4);
    InverseTable inv(c);
    for (int k = 0; k <= 4; ++k)
      for (const auto& s : nerve.simplices(k)) {
        ++simplices;
        auto r = reconstruct_from_flag(c, flag_of(s), inv);
        alternatives += r.alternatives_checked;
        if (!(r.simplex == s) || !r.choice_independent) ++bad;
      }
  }
  return {bad == 0 && alternatives > 0, std::to_string(simplices) + " simplices round-tripped, " + std::to_string(alternatives) +
                                             " alternative index choices agreed, " + std::to_string(bad) + " mismatches"};
}

Outcome whiskers(const std::vector<Shipped>& cats) {
  std::size_t instances = 0, bad = 0;
  for (const auto& [name, c] : cats) {
    if (!is_two_groupoid(c)) continue;
    for (std::uint32_t fi = 0; fi < c.one_cell_count(); ++fi) {
      OneCellId f{fi};
      auto adj = *first_adjoint_equivalence(c, f);
      // phi * f = psi with h_s, h_t leaving target(f).
      for (auto h_s : c.one_cells_from(c.target(f)))
        for (auto h_t : c.one_cells_between(c.target(f), c.target(h_s)))
          for (auto psi : c.two_cells_between(c.compose(h_s, f), c.compose(h_t, f))) {
            ++instances;
            auto brute = oracle::left_whisker_solutions(c, psi, f, h_s, h_t);
            if (brute.size() != 1 || brute[0] != solve_left_whisker(c, psi, adj, h_s, h_t)) ++bad;
          }
      // f * phi = psi with h_s, h_t arriving at source(f).
      for (auto h_s : c.one_cells_to(c.source(f)))
        for (auto h_t : c.one_cells_between(c.source(h_s), c.source(f)))
          for (auto psi : c.two_cells_between(c.compose(f, h_s), c.compose(f, h_t))) {
            ++instances;
            auto brute = oracle::right_whisker_solutions(c, psi, f, h_s, h_t);
            if (brute.size() != 1 || brute[0] != solve_right_whisker(c, psi, adj, h_s, h_t)) ++bad;
          }
    }
  }
  return {bad == 0 && instances > 0, std::to_string(instances) + " equations, " + std::to_string(bad) + " not uniquely solved"};
}

Outcome baez_crans() {
  std::ostringstream s;
  bool ok = true;
  struct Case {
    std::size_t b1, b0;
    std::uint32_t p;
  };
  for (auto [b1, b0, p] : {Case{1, 1, 2}, Case{1, 1, 3}, Case{2, 1, 2}}) {
    BCOptions o;
    o.b1 = b1;
    o.b0 = b0;
    o.p = p;
    o.dim_b_bound = 1;
    auto b = build_2B(o);
    auto h = homology_functor(b);
    const auto group = oracle::invertible_matrix_count(b1, p) * oracle::invertible_matrix_count(b0, p);
    bool hi = h.ok() && h.elements == group;
    for (std::uint32_t x = 0; x < h.i.size(); ++x) hi = hi && h.h[h.i[x].value] == x;
    auto ho = quotient_to_Ho(b);
    auto in_ho = verify_sigma_colax(b, &ho);
    auto in_2b = verify_sigma_colax(b, nullptr);
    // Recheck the reported 2B witness directly against the tables.
    bool witness = false;
    if (in_2b.witness) {
      auto [g, f] = *in_2b.witness;
      auto sd = sigma_data(b);
      auto lhs = sigma_component(b, b.cat.compose(g, f));
      auto rhs = b.cat.vcomp(b.cat.lwhisker(sd.ih[g.value], sigma_component(b, f)), b.cat.rwhisker(sigma_component(b, g), f));
      witness = lhs != rhs;
    }
    ok = ok && hi && ho.well_defined() && in_ho.ok() && in_ho.pairs > 0 && witness;
    s << "(" << b1 << "," << b0 << ",F" << p << "): Hi=id on " << h.elements << "/" << group << ", 2B^Ho colax on "
      << in_ho.pairs << " pairs " << (in_ho.ok() ? "holds" : "FAILS") << ", 2B violation "
      << (witness ? "found" : "missing") << "; ";
  }
  return {ok, s.str()};
}

Outcome free_2xu() {
  std::ostringstream s;
  bool ok = true;
  for (int k = 1; k <= 5; ++k) {
    auto free = free_two_category_2XU(simplex_complex(k));
    auto expected = oracle::parenthesized_words(k);
    std::vector<OneCellId> cells;
    std::set<std::string> words;
    for (auto f : free.cat.one_cells_between(ObjectId{0}, ObjectId{static_cast<std::uint32_t>(k)})) {
      cells.push_back(f);
      words.insert(free.words[f.value]);
    }
    ok = ok && words == expected && cells.size() == expected.size();
    for (auto f : cells)
      for (auto g : cells) {
        auto cf = oracle::word_chain(free.words[f.value]), cg = oracle::word_chain(free.words[g.value]);
        const std::size_t want = std::includes(cg.begin(), cg.end(), cf.begin(), cf.end()) ? 1 : 0;
        ok = ok && free.cat.two_cells_between(f, g).size() == want;
      }
    s << k << ":" << cells.size() << (k < 5 ? ", " : "");
  }
  return {ok, "1-cells x0 -> xk for k=" + s.str() + "; refinement rule holds on every pair"};
}

Outcome gluing() {
  auto sphere = simplex_boundary(3);
  const auto& tri = sphere.simplices(2);
  std::size_t cases = 0, bad = 0;
  for (auto s : {std::make_shared<const TwoCategory>(cyclic_gerbe(2)), std::make_shared<const TwoCategory>(delooping(cyclic_group(2))),
                 std::make_shared<const TwoCategory>(two_group(2, 2, true))}) {
    auto bundles = enumerate_bundles(s, sphere);
    // exhaustive search over each glued base, done once and filtered per decomposition
    std::vector<std::pair<CombinatorialBase, std::vector<Bundle>>> searched;
    auto everything_over = [&](const CombinatorialBase& base) -> const std::vector<Bundle>& {
      for (const auto& [b, all] : searched)
        if (b == base) return all;
      searched.emplace_back(base, oracle::all_bundles(s, base, [](const Bundle&) { return true; }));
      return searched.back().second;
    };
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << tri.size()); ++mask) {
      std::vector<std::vector<long>> xs, bs;
      for (std::size_t t = 0; t < tri.size(); ++t) (mask >> t & 1 ? xs : bs).push_back(sphere.to_labels(tri[t]));
      auto x = CombinatorialBase::from_simplices(sphere.labels(), xs);
      auto bb = CombinatorialBase::from_simplices(sphere.labels(), bs);
      std::vector<std::vector<long>> shared;
      for (int d = 0; d <= 1; ++d)
        for (const auto& e : x.simplices(d))
          if (bb.contains(e)) shared.push_back(x.to_labels(e));
      auto a = CombinatorialBase::from_simplices(sphere.labels(), shared);
      for (const auto& whole : bundles) {
        auto px = restrict_bundle(whole, x), pb = restrict_bundle(whole, bb);
        auto glued = glue(px, pb, inclusion(a, bb));
        std::vector<const Bundle*> sols;
        for (const auto& y : everything_over(glued.base))
          if (restrict_bundle(y, x) == px && restrict_bundle(y, bb) == pb) sols.push_back(&y);
        ++cases;
        if (sols.size() != 1 || !(*sols[0] == glued)) ++bad;
      }
    }
  }
  return {bad == 0 && cases > 0, std::to_string(cases) + " decompositions glued, " + std::to_string(bad) + " differ from the exhaustive search"};
}

}  // namespace

int main() {
  auto cats = shipped_categories();
  int failed = 0;
  failed += !run(1, "gerbe classification over the 2-sphere", 60, gerbe_classes);
  failed += !run(2, "delooping(Z/3) over the 3-circle", 10, delooping_classes);
  failed += !run(3, "Kan dichotomy and constructed fillers", 120, [&] { return kan_dichotomy(cats); });
  failed += !run(4, "3-coskeletality at dim 4", 60, [&] { return coskeletal(cats); });
  failed += !run(5, "flag round trip and index independence", 0, [&] { return flags(cats); });
  failed += !run(6, "whisker equation solver", 0, [&] { return whiskers(cats); });
  failed += !run(7, "Baez-Crans calculus", 120, baez_crans);
  failed += !run(8, "2X_U combinatorics", 10, free_2xu);
  failed += !run(9, "gluing hemispheres of the 2-sphere", 30, gluing);
  std::printf("%d of 9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
