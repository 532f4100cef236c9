#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "twobundle/adjoint.hpp"
#include "twobundle/bundle.hpp"
#include "twobundle/complex.hpp"
#include "twobundle/constructions.hpp"
#include "twobundle/examples.hpp"
#include "twobundle/io.hpp"
#include "twobundle/nerve.hpp"
#include "twobundle/simplicial.hpp"
#include "twobundle/two_category.hpp"

using namespace twobundle;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kMaxNerveDim = 6;

struct Globals {
  std::size_t bound = 1'000'000;
  int dim = -1;  // command default when negative
  bool json_only = false;
  std::uint64_t seed = 0;
};

// One run: JSON on stdout, summary lines on stderr.
struct RunReport {
  Json j;
  std::vector<std::string> summary;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit RunReport(const std::string& command) {
    j["command"] = command;
    j["inputs"] = Json::object();
    j["outcome"] = "pass";
    j["counts"] = Json::object();
    j["witnesses"] = Json::object();
  }
  void fail() { j["outcome"] = "fail"; }
  void say(const std::string& line) { summary.push_back(line); }
};

int finish(RunReport& r, const Globals& g) {
  r.j["wall_time_s"] =
      std::round(std::chrono::duration<double>(std::chrono::steady_clock::now() - r.start).count() * 1000.0) / 1000.0;
  std::cout << r.j.dump(2) << std::endl;
  if (!g.json_only)
    for (const auto& line : r.summary) std::cerr << line << "\n";
  const auto& outcome = r.j["outcome"];
  if (outcome == "pass") return 0;
  if (outcome == "limit") return 2;
  return 1;
}

Json cohorn_json(const Cohorn& c) { return {{"n", c.n}, {"indices", c.indices}, {"entries", c.entries}}; }

Json without_name(const TwoCategory& c) {
  auto j = Json::parse(dump_two_category(c));
  j.erase("name");
  return j;
}

// "a:b,c:d" as label pairs.
std::map<long, long> parse_label_map(const std::string& text) {
  std::map<long, long> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw ParseError(0, 0, "map entries are written source:target, got \"" + item + "\"");
    try {
      out[std::stol(item.substr(0, colon))] = std::stol(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw ParseError(0, 0, "map entries must be integer labels, got \"" + item + "\"");
    }
  }
  return out;
}

BaseMap base_map_from(const CombinatorialBase& source, const CombinatorialBase& target, const std::string& spec) {
  if (spec.empty()) return inclusion(source, target);
  auto pairs = parse_label_map(spec);
  BaseMap f{source, target, std::vector<int>(source.vertex_count(), -1)};
  for (auto [from, to] : pairs) {
    auto a = source.rank_of(from);
    auto b = target.rank_of(to);
    if (!a || !b) fail(Errc::index_mismatch, "map mentions unknown label " + std::to_string(!a ? from : to));
    f.image[*a] = *b;
  }
  for (std::size_t v = 0; v < f.image.size(); ++v)
    if (f.image[v] < 0) fail(Errc::index_mismatch, "map leaves vertex " + std::to_string(source.label(static_cast<int>(v))) + " unassigned");
  check_base_map(f);
  return f;
}

Json category_counts(const TwoCategory& c) {
  return {{"objects", c.object_count()}, {"one_cells", c.one_cell_count()}, {"two_cells", c.two_cell_count()}};
}

// ---- commands

int cmd_validate(const Globals& g, const std::string& path, bool groupoid) {
  RunReport r("validate");
  r.j["inputs"] = {{"file", path}, {"groupoid", groupoid}};
  auto c = load_two_category(path);
  auto rep = validate_bicategory(c);
  r.j["counts"] = category_counts(c);
  r.j["counts"]["violations"] = rep.total;
  r.j["valid"] = rep.ok();
  r.j["strict"] = rep.ok() && is_strict(c);
  if (!rep.ok()) {
    r.fail();
    Json w = Json::array();
    std::map<std::string, bool> seen;
    for (const auto& v : rep.violations)
      if (!seen[v.rule]) {
        seen[v.rule] = true;
        w.push_back({{"rule", v.rule}, {"witness", v.witness}});
      }
    r.j["witnesses"]["violations"] = w;
  }
  if (groupoid && rep.ok()) r.j["groupoid"] = is_two_groupoid(c);
  std::string line = "validate " + path + ": " + (rep.ok() ? "valid" : std::to_string(rep.total) + " violations");
  if (r.j.contains("groupoid")) line += r.j["groupoid"].get<bool>() ? ", 2-groupoid" : ", not a 2-groupoid";
  r.say(line);
  return finish(r, g);
}

DuskinNerve nerve_for(const Globals& g, const TwoCategory& c, int dim) {
  if (dim < 0 || dim > kMaxNerveDim)
    fail(Errc::size_limit, "nerve dimension " + std::to_string(dim) + " outside 0.." + std::to_string(kMaxNerveDim));
  return duskin_nerve(c, dim, g.bound);
}

int cmd_nerve(const Globals& g, const std::string& path, const std::string& out) {
  RunReport r("nerve");
  const int dim = g.dim < 0 ? 3 : g.dim;
  r.j["inputs"] = {{"file", path}, {"dim", dim}, {"bound", g.bound}};
  auto c = load_two_category(path);
  auto nerve = nerve_for(g, c, dim);
  Json sizes = Json::array();
  for (int k = 0; k <= dim; ++k) sizes.push_back(nerve.size(k));
  r.j["counts"]["simplices"] = sizes;
  std::string line = "nerve " + path + ": simplices";
  for (int k = 0; k <= dim; ++k) line += " " + std::to_string(nerve.size(k));
  if (dim >= 4) {
    auto cosk = coskeletal_report(nerve.sset(), 3);
    Json levels = Json::array();
    for (const auto& l : cosk.levels)
      levels.push_back({{"n", l.n}, {"simplices", l.simplices}, {"boundary_tuples", l.boundary_tuples}, {"injective", l.injective}});
    r.j["coskeletal_3"] = cosk.coskeletal;
    r.j["counts"]["coskeletal_levels"] = levels;
    if (!cosk.coskeletal) r.fail();
    line += cosk.coskeletal ? "; 3-coskeletal" : "; not 3-coskeletal";
  }
  if (!out.empty()) {
    write_file(out, dump_sset(nerve.sset()));
    r.j["inputs"]["sset_out"] = out;
  }
  r.say(line);
  return finish(r, g);
}

int cmd_kan(const Globals& g, const std::string& path) {
  RunReport r("kan");
  const int dim = g.dim < 0 ? 4 : g.dim;
  r.j["inputs"] = {{"file", path}, {"dim", dim}, {"bound", g.bound}};
  auto c = load_two_category(path);
  auto nerve = nerve_for(g, c, dim);
  auto rep = check_discrete_kan(nerve.sset(), dim);
  Json levels = Json::array();
  for (const auto& l : rep.levels) levels.push_back({{"n", l.n}, {"k", l.k}, {"horns", l.horns}, {"unfilled", l.unfilled}});
  r.j["kan"] = rep.kan;
  r.j["counts"]["levels"] = levels;
  std::string line = "kan " + path + ": ";
  if (const auto* first = rep.first_failure()) {
    r.fail();
    r.j["witnesses"]["horn"] = cohorn_json(*first->witness);
    r.j["witnesses"]["level"] = {first->n, first->k};
    line += "fails at (" + std::to_string(first->n) + "," + std::to_string(first->k) + "), horn " + first->witness->to_string();
  } else {
    line += "Kan through dim " + std::to_string(dim);
  }
  const bool groupoid = is_two_groupoid(c);
  r.j["groupoid"] = groupoid;
  if (groupoid && dim >= 1) {
    HornFiller filler(c, nerve);
    std::size_t checked = 0, wrong = 0;
    for (int n = 1; n <= dim; ++n) {
      FillerIndex index(nerve.sset(), n);
      for (int k = 0; k <= n; ++k)
        for (const auto& horn : cohorns(nerve.sset(), n, horn_indices(n, k))) {
          ++checked;
          auto z = filler.fill_id(horn);
          auto all = index.fillers(horn);
          if (std::find(all.begin(), all.end(), z) == all.end()) {
            if (!r.j["witnesses"].contains("filler")) r.j["witnesses"]["filler"] = cohorn_json(horn);
            ++wrong;
          }
        }
    }
    r.j["counts"]["constructed_fillers"] = checked;
    r.j["counts"]["constructed_fillers_wrong"] = wrong;
    if (wrong) r.fail();
    line += "; " + std::to_string(checked) + " constructed fillers, " + std::to_string(wrong) + " wrong";
  }
  r.say(line);
  return finish(r, g);
}

// Cochain prediction when the structure is a cyclic gerbe or a cyclic delooping of prime order.
std::optional<std::pair<std::string, std::size_t>> oracle_for(const TwoCategory& c, const CombinatorialBase& k) {
  auto power = [](std::size_t p, std::size_t e) {
    std::size_t out = 1;
    while (e--) out *= p;
    return out;
  };
  const auto n2 = c.two_cell_count(), n1 = c.one_cell_count();
  if (c.object_count() == 1 && n1 == 1 && n2 >= 1 && is_prime(static_cast<std::uint32_t>(n2)) &&
      without_name(c) == without_name(cyclic_gerbe(n2))) {
    auto p = static_cast<std::uint32_t>(n2);
    return std::pair{"cyclic_gerbe(" + std::to_string(p) + "): p^dim H^2", power(p, cochain_cohomology(k, p, 2))};
  }
  if (c.object_count() == 1 && n2 == n1 && n1 >= 2 && is_prime(static_cast<std::uint32_t>(n1)) &&
      without_name(c) == without_name(delooping(cyclic_group(n1)))) {
    auto p = static_cast<std::uint32_t>(n1);
    return std::pair{"delooping(Z/" + std::to_string(p) + "): p^dim H^1", power(p, cochain_cohomology(k, p, 1))};
  }
  return std::nullopt;
}

Json bundle_tables(const Bundle& b) {
  Json v = Json::array(), e = Json::array(), t = Json::array();
  for (auto x : b.V) v.push_back(x.value);
  for (auto x : b.E) e.push_back(x.value);
  for (auto x : b.phi) t.push_back(x.value);
  return {{"V", v}, {"E", e}, {"phi", t}};
}

int cmd_classify(const Globals& g, const std::string& cat_path, const std::string& base_path) {
  RunReport r("classify");
  r.j["inputs"] = {{"structure", cat_path}, {"base", base_path}, {"bound", g.bound}};
  auto structure = std::make_shared<const TwoCategory>(load_two_category(cat_path));
  auto base = load_complex(base_path);
  auto classes = concordance_classes(structure, base, g.bound);
  r.j["counts"]["bundles"] = classes.bundles.size();
  r.j["counts"]["classes"] = classes.count();
  r.j["counts"]["prism_searches"] = classes.prism_searches;
  Json reps = Json::array();
  for (std::size_t i = 0; i < classes.count(); ++i) {
    auto rep = bundle_tables(classes.bundles[classes.representatives[i]]);
    rep["size"] = classes.members[i].size();
    reps.push_back(rep);
  }
  r.j["representatives"] = reps;
  std::string line = "classify " + cat_path + " over " + base_path + ": " + std::to_string(classes.bundles.size()) +
                     " bundles, " + std::to_string(classes.count()) + " classes";
  if (auto o = oracle_for(*structure, base)) {
    const bool agree = o->second == classes.count();
    r.j["oracle"] = {{"rule", o->first}, {"predicted", o->second}, {"agrees", agree}};
    if (!agree) r.fail();
    line += agree ? " (cochain oracle agrees)" : " (cochain oracle predicts " + std::to_string(o->second) + ")";
  }
  r.say(line);
  return finish(r, g);
}

int cmd_bundle_verify(const Globals& g, const std::string& path) {
  RunReport r("bundle-verify");
  r.j["inputs"] = {{"file", path}};
  auto b = load_bundle(path);
  auto rep = validate_bundle(b);
  r.j["counts"]["violations"] = rep.total;
  r.j["valid"] = rep.ok();
  std::string line = "bundle-verify " + path + ": ";
  if (!rep.ok()) {
    r.fail();
    Json w = Json::array();
    for (std::size_t i = 0; i < rep.violations.size() && i < 8; ++i)
      w.push_back({{"rule", rep.violations[i].rule}, {"witness", rep.violations[i].witness}});
    r.j["witnesses"]["violations"] = w;
    line += std::to_string(rep.total) + " violations, first " + rep.violations.front().rule + " " + rep.violations.front().witness;
  } else {
    auto functor = bundle_to_strict_functor(b);
    r.j["counts"]["tetrahedra_checked"] = functor.tetrahedra_checked;
    const int top = std::min(3, std::max(b.base.dimension(), 0));
    auto cech = ordered_simplicial_set(b.base, top);
    auto nerve = duskin_nerve(*b.structure, top, g.bound);
    auto round = simplicial_map_to_bundle(bundle_to_simplicial_map(b, cech, nerve), cech, nerve, b.base, b.structure);
    r.j["round_trip"] = round == b;
    if (!(round == b)) r.fail();
    line += std::string("valid; strict functor on ") + std::to_string(functor.tetrahedra_checked) +
            " tetrahedra; simplicial round trip " + (round == b ? "exact" : "differs");
  }
  r.say(line);
  return finish(r, g);
}

struct ExampleArgs {
  std::string kind, out;
  std::size_t n = 2, m = 2, k = 2;
  bool twisted = false;
  std::string variant = "weak", scope = "all";
  std::size_t b1 = 1, b0 = 1, dim_b_bound = 1, kv_n = 2;
  std::uint32_t p = 2;
  long entry_bound = 1;
  bool literal_epsilon = false;
};

BCOptions bc_options(const ExampleArgs& a, std::size_t bound) {
  BCOptions o;
  auto v = parse_variant(a.variant);
  if (!v) throw ParseError(0, 0, "unknown variant \"" + a.variant + "\" (strict, weak, eq, ad)");
  if (a.scope != "all" && a.scope != "single") throw ParseError(0, 0, "scope is single or all");
  if (!is_prime(a.p)) throw ParseError(0, 0, "p must be prime");
  o.variant = *v;
  o.scope = a.scope == "single" ? BCScope::single : BCScope::all;
  o.b1 = a.b1;
  o.b0 = a.b0;
  o.p = a.p;
  o.dim_b_bound = a.dim_b_bound;
  o.literal_epsilon = a.literal_epsilon;
  o.cell_bound = bound;
  return o;
}

int cmd_example(const Globals& g, const ExampleArgs& a) {
  RunReport r("example");
  r.j["inputs"] = {{"kind", a.kind}, {"out", a.out}};
  TwoCategory c;
  if (a.kind == "gerbe") {
    c = cyclic_gerbe(a.n);
  } else if (a.kind == "deloop") {
    c = delooping(cyclic_group(a.n));
  } else if (a.kind == "symmetric") {
    c = delooping(symmetric_group(a.n));
  } else if (a.kind == "monoid") {
    c = delooping(idempotent_monoid());
  } else if (a.kind == "two-group") {
    c = two_group(a.m, a.k, a.twisted);
  } else if (a.kind == "gl") {
    c = delooping(general_linear_group(a.n, a.p));
  } else if (a.kind == "bc") {
    c = build_2B(bc_options(a, g.bound)).cat;
  } else if (a.kind == "bc-ho") {
    c = quotient_to_Ho(build_2B(bc_options(a, g.bound))).cat;
  } else if (a.kind == "kv") {
    auto kv = kv_skeleton(a.kv_n, a.entry_bound);
    r.j["counts"]["undefined_products"] = kv.undefined_products;
    c = std::move(kv.cat);
  } else {
    throw ParseError(0, 0, "unknown example kind \"" + a.kind + "\"");
  }
  auto counts = category_counts(c);
  for (auto it = counts.begin(); it != counts.end(); ++it) r.j["counts"][it.key()] = it.value();
  r.j["name"] = c.name();
  if (!a.out.empty()) write_file(a.out, dump_two_category(c));
  r.say("example " + a.kind + ": " + c.name() + " with " + std::to_string(c.object_count()) + " objects, " +
        std::to_string(c.one_cell_count()) + " 1-cells, " + std::to_string(c.two_cell_count()) + " 2-cells" +
        (a.out.empty() ? "" : ", written to " + a.out));
  return finish(r, g);
}

int cmd_bc_report(const Globals& g, const ExampleArgs& a, std::optional<std::size_t> sample) {
  RunReport r("bc-report");
  auto o = bc_options(a, g.bound);
  r.j["inputs"] = {{"variant", to_string(o.variant)}, {"b1", o.b1},       {"b0", o.b0},
                   {"p", o.p},                        {"dim_b_bound", o.dim_b_bound}, {"bound", g.bound}};
  if (sample) r.j["inputs"]["sample"] = *sample, r.j["inputs"]["seed"] = g.seed;
  if (o.variant != BCVariant::weak || o.scope != BCScope::all)
    throw ParseError(0, 0, "bc-report runs on the weak variant over all objects");
  auto b = build_2B(o);
  r.j["counts"]["instance"] = category_counts(b.cat);
  auto h = homology_functor(b);
  r.j["hi_identity"] = {{"elements", h.elements}, {"hi_failures", h.hi_failures}, {"functor_failures", h.functor_failures}, {"ok", h.ok()}};
  auto ho = quotient_to_Ho(b);
  r.j["counts"]["ho_two_cells"] = ho.cat.two_cell_count();
  r.j["ho_well_defined"] = ho.well_defined();
  auto in_ho = verify_sigma_colax(b, &ho, sample, g.seed);
  auto in_2b = verify_sigma_colax(b, nullptr, sample, g.seed);
  r.j["sigma_ho"] = {{"pairs", in_ho.pairs}, {"failures", in_ho.failures}, {"normalized", in_ho.normalized}, {"ok", in_ho.ok()}};
  r.j["sigma_2b"] = {{"pairs", in_2b.pairs}, {"failures", in_2b.failures}, {"counterexample", in_2b.witness.has_value()}};
  if (in_2b.witness) r.j["witnesses"]["sigma_2b"] = {in_2b.witness->first.value, in_2b.witness->second.value};
  if (in_ho.witness) r.j["witnesses"]["sigma_ho"] = {in_ho.witness->first.value, in_ho.witness->second.value};
  // A counterexample is expected exactly when B and both homology groups can be nonzero.
  const bool expect_counterexample = o.dim_b_bound >= 1 && o.b1 >= 1 && o.b0 >= 1;
  const bool pattern = h.ok() && ho.well_defined() && in_ho.ok() && in_2b.witness.has_value() == expect_counterexample;
  if (!pattern) r.fail();
  r.say("bc-report " + to_string(o.variant) + "(b1=" + std::to_string(o.b1) + ", b0=" + std::to_string(o.b0) +
        ", p=" + std::to_string(o.p) + ", dimB<=" + std::to_string(o.dim_b_bound) + "): Hi " + (h.ok() ? "identity" : "fails") +
        ", colax in 2B^Ho " + (in_ho.ok() ? "holds" : "fails") + " on " + std::to_string(in_ho.pairs) + " pairs, 2B " +
        (in_2b.witness ? "counterexample (" + std::to_string(in_2b.witness->first.value) + ", " +
                             std::to_string(in_2b.witness->second.value) + ")"
                       : std::string("no counterexample")));
  return finish(r, g);
}

int cmd_glue(const Globals& g, const std::string& x_path, const std::string& b_path, const std::string& along,
             const std::string& map, const std::string& out) {
  RunReport r("glue");
  r.j["inputs"] = {{"x", x_path}, {"b", b_path}, {"along", along}, {"map", map}};
  auto bx = load_bundle(x_path);
  auto bb = load_bundle(b_path);
  // Both files usually name the same structure; glue wants one instance.
  if (dump_two_category(*bb.structure) == dump_two_category(*bx.structure)) bb.structure = bx.structure;
  auto a = load_complex(along);
  auto f = base_map_from(a, bb.base, map);
  auto glued = glue(bx, bb, f);
  auto rep = validate_bundle(glued);
  r.j["valid"] = rep.ok();
  r.j["counts"]["vertices"] = glued.base.vertex_count();
  r.j["counts"]["violations"] = rep.total;
  r.j["bundle"] = Json::parse(dump_bundle(glued));
  if (!rep.ok()) r.fail();
  if (!out.empty()) write_file(out, dump_bundle(glued));
  r.say("glue: " + std::to_string(glued.base.vertex_count()) + " vertices, " + (rep.ok() ? "valid" : "invalid"));
  return finish(r, g);
}

int cmd_pullback(const Globals& g, const std::string& b_path, const std::string& k_path, const std::string& map,
                 const std::string& out) {
  RunReport r("pullback");
  r.j["inputs"] = {{"bundle", b_path}, {"source", k_path}, {"map", map}};
  auto b = load_bundle(b_path);
  auto k = load_complex(k_path);
  auto f = base_map_from(k, b.base, map);
  auto pulled = pullback(b, f);
  auto rep = validate_bundle(pulled);
  r.j["valid"] = rep.ok();
  r.j["counts"]["violations"] = rep.total;
  r.j["bundle"] = Json::parse(dump_bundle(pulled));
  if (!rep.ok()) r.fail();
  if (!out.empty()) write_file(out, dump_bundle(pulled));
  r.say("pullback: " + std::to_string(k.vertex_count()) + " vertices, " + (rep.ok() ? "valid" : "invalid"));
  return finish(r, g);
}

int report_error(const Globals& g, const std::string& command, const Error& e) {
  RunReport r(command);
  const bool limit = e.code() == Errc::size_limit;
  r.j["outcome"] = limit ? "limit" : "error";
  r.j["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
  if (auto pe = dynamic_cast<const ParseError*>(&e); pe && pe->line() > 0)
    r.j["error"]["line"] = pe->line(), r.j["error"]["column"] = pe->column();
  r.say(command + ": " + e.what());
  return finish(r, g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite 2-categories, Duskin nerves and principal 2-bundles over ordered complexes"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--bound", g.bound, "Cap on enumerated cells and search nodes")->capture_default_str();
  app.add_option("--dim", g.dim, "Nerve dimension (nerve: 3, kan: 4)");
  app.add_flag("--json", g.json_only, "Only write the JSON report; no summary on stderr");
  app.add_option("--seed", g.seed, "Seed for sampled checks")->capture_default_str();

  std::string path, path2, along, map, out;
  bool groupoid = false;
  ExampleArgs ex;
  std::optional<std::size_t> sample;

  auto* validate = app.add_subcommand("validate", "Check the bicategory axioms of a .2cat file");
  validate->add_option("file", path, ".2cat file")->required();
  validate->add_flag("--groupoid", groupoid, "Also decide whether it is a 2-groupoid");

  auto* nerve = app.add_subcommand("nerve", "Duskin nerve counts and 3-coskeletality");
  nerve->add_option("file", path, ".2cat file")->required();
  nerve->add_option("--out", out, "Write the truncated nerve as .sset");

  auto* kan = app.add_subcommand("kan", "Discrete Kan condition of the Duskin nerve");
  kan->add_option("file", path, ".2cat file")->required();

  auto* classify = app.add_subcommand("classify", "Concordance classes of bundles over a complex");
  classify->add_option("structure", path, ".2cat file")->required();
  classify->add_option("base", path2, ".cplx file")->required();

  auto* verify = app.add_subcommand("bundle-verify", "Validate a .bundle file");
  verify->add_option("file", path, ".bundle file")->required();

  auto bc_flags = [&](CLI::App* cmd) {
    cmd->add_option("--variant", ex.variant, "strict, weak, eq or ad")->capture_default_str();
    cmd->add_option("--scope", ex.scope, "single or all")->capture_default_str();
    cmd->add_option("--b1", ex.b1)->capture_default_str();
    cmd->add_option("--b0", ex.b0)->capture_default_str();
    cmd->add_option("--p", ex.p)->capture_default_str();
    cmd->add_option("--dim-b-bound", ex.dim_b_bound)->capture_default_str();
  };
  auto* example = app.add_subcommand("example", "Write a shipped construction as .2cat");
  example->add_option("kind", ex.kind, "gerbe, deloop, symmetric, monoid, two-group, gl, bc, bc-ho, kv")->required();
  example->add_option("-o,--out", ex.out, "Output .2cat path");
  example->add_option("--n", ex.n, "Order (gerbe, deloop), degree (symmetric, gl)")->capture_default_str();
  example->add_option("--m", ex.m, "two-group: 1-cells Z/m")->capture_default_str();
  example->add_option("--k", ex.k, "two-group: 2-cell labels Z/k")->capture_default_str();
  example->add_flag("--twisted", ex.twisted, "two-group: twisted associator");
  example->add_option("--kv-n", ex.kv_n, "kv: matrix size")->capture_default_str();
  example->add_option("--entry-bound", ex.entry_bound, "kv: largest entry")->capture_default_str();
  example->add_flag("--literal-epsilon", ex.literal_epsilon, "eq/ad: untyped epsilon rule (single scope)");
  bc_flags(example);

  auto* bc = app.add_subcommand("bc-report", "Hi, colax law in 2B^Ho and counterexample search in 2B");
  bc_flags(bc);
  bc->add_option("--sample", sample, "Check this many random composable pairs instead of all");

  auto* gl = app.add_subcommand("glue", "Glue two bundles along a common subcomplex");
  gl->add_option("x", path, ".bundle over X")->required();
  gl->add_option("b", path2, ".bundle over B")->required();
  gl->add_option("--along", along, ".cplx of the subcomplex A of X")->required();
  gl->add_option("--map", map, "Attaching map A -> B as label pairs a:b,...; inclusion by labels if omitted");
  gl->add_option("-o,--out", out, "Write the glued .bundle");

  auto* pb = app.add_subcommand("pullback", "Pull a bundle back along a vertex map");
  pb->add_option("bundle", path, ".bundle file")->required();
  pb->add_option("source", path2, ".cplx of the source complex")->required();
  pb->add_option("--map", map, "Vertex map as label pairs a:b,...; inclusion by labels if omitted");
  pb->add_option("-o,--out", out, "Write the pulled back .bundle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  auto* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();
  try {
    if (cmd == validate) return cmd_validate(g, path, groupoid);
    if (cmd == nerve) return cmd_nerve(g, path, out);
    if (cmd == kan) return cmd_kan(g, path);
    if (cmd == classify) return cmd_classify(g, path, path2);
    if (cmd == verify) return cmd_bundle_verify(g, path);
    if (cmd == example) return cmd_example(g, ex);
    if (cmd == bc) return cmd_bc_report(g, ex, sample);
    if (cmd == gl) return cmd_glue(g, path, path2, along, map, out);
    if (cmd == pb) return cmd_pullback(g, path, path2, map, out);
  } catch (const Error& e) {
    return report_error(g, name, e);
  } catch (const std::exception& e) {
    return report_error(g, name, Error(Errc::parse_error, e.what()));
  }
  return 1;
}
