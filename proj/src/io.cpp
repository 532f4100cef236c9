#include "twobundle/io.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace twobundle {

using Json = nlohmann::ordered_json;

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(Errc::parse_error, (line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " : "") + message),
      line_(line),
      column_(column) {}

namespace {

std::pair<std::size_t, std::size_t> position(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Semantic errors point at the first occurrence of the offending key.
class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {
    try {
      doc_ = Json::parse(text_.begin(), text_.end());
    } catch (const nlohmann::json::parse_error& e) {
      auto [line, col] = position(text_, e.byte > 0 ? e.byte - 1 : 0);
      std::string what = e.what();
      auto cut = what.find(": ", what.find("parse error"));
      throw ParseError(line, col, cut == std::string::npos ? what : what.substr(cut + 2));
    }
    if (!doc_.is_object()) throw ParseError(1, 1, "expected a JSON object");
  }

  const Json& doc() const { return doc_; }

  [[noreturn]] void error(const std::string& key, const std::string& message) const {
    auto at = text_.find("\"" + key + "\"");
    auto [line, col] = position(text_, at == std::string_view::npos ? 0 : at);
    throw ParseError(line, col, message);
  }

  void allow(const Json& obj, std::initializer_list<const char*> keys, const std::string& where) const {
    std::set<std::string> ok(keys.begin(), keys.end());
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (!ok.count(it.key())) error(it.key(), "unknown key \"" + it.key() + "\" in " + where);
  }

  void require(const Json& obj, std::initializer_list<const char*> keys) const {
    for (const char* k : keys)
      if (!obj.contains(k)) throw ParseError(1, 1, std::string("missing key \"") + k + "\"");
  }

  long integer(const Json& v, const std::string& key) const {
    if (!v.is_number_integer()) error(key, "expected an integer in \"" + key + "\"");
    return v.get<long>();
  }

  std::uint32_t index(const Json& v, const std::string& key) const {
    long x = integer(v, key);
    if (x < 0 || x > 0xFFFFFFF0L) error(key, "negative or oversized index in \"" + key + "\"");
    return static_cast<std::uint32_t>(x);
  }

  // Rows of exactly `arity` integers.
  std::vector<std::vector<long>> rows(const Json& obj, const std::string& key, std::size_t arity) const {
    std::vector<std::vector<long>> out;
    if (!obj.contains(key)) return out;
    const auto& arr = obj.at(key);
    if (!arr.is_array()) error(key, "\"" + key + "\" must be an array");
    for (const auto& row : arr) {
      if (!row.is_array() || row.size() != arity)
        error(key, "entries of \"" + key + "\" must be arrays of " + std::to_string(arity) + " integers");
      std::vector<long> r;
      for (const auto& x : row) r.push_back(integer(x, key));
      out.push_back(std::move(r));
    }
    return out;
  }

  std::vector<long> list(const Json& obj, const std::string& key) const {
    std::vector<long> out;
    const auto& arr = obj.at(key);
    if (!arr.is_array()) error(key, "\"" + key + "\" must be an array");
    for (const auto& x : arr) out.push_back(integer(x, key));
    return out;
  }

 private:
  std::string_view text_;
  Json doc_;
};

bool scalar_array(const Json& v) {
  for (const auto& x : v)
    if (x.is_array() || x.is_object()) return false;
  return true;
}

// Arrays of scalars stay on one line; everything else nests.
void emit(const Json& v, int indent, std::string& out) {
  const std::string pad(indent, ' '), inner(indent + 2, ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += inner + Json(it.key()).dump() + ": ";
      emit(it.value(), indent + 2, out);
    }
    out += "\n" + pad + "}";
  } else if (v.is_array()) {
    if (scalar_array(v)) {
      out += "[";
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].dump();
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      out += inner;
      emit(v[i], indent + 2, out);
      out += i + 1 < v.size() ? ",\n" : "\n";
    }
    out += pad + "]";
  } else {
    out += v.dump();
  }
}

std::string pretty(const Json& v) {
  std::string out;
  emit(v, 0, out);
  return out + "\n";
}

Json two_category_json(const TwoCategory& c) {
  Json j;
  j["name"] = c.name();
  Json objects = Json::array(), ones = Json::array(), twos = Json::array(), id1 = Json::array(), id2 = Json::array();
  for (std::uint32_t x = 0; x < c.object_count(); ++x) {
    objects.push_back(x);
    id1.push_back({x, c.identity(ObjectId{x}).value});
  }
  for (std::uint32_t f = 0; f < c.one_cell_count(); ++f) {
    OneCellId fi{f};
    ones.push_back({f, c.source(fi).value, c.target(fi).value});
    id2.push_back({f, c.identity(fi).value});
  }
  for (std::uint32_t a = 0; a < c.two_cell_count(); ++a) {
    TwoCellId ai{a};
    twos.push_back({a, c.source(ai).value, c.target(ai).value});
  }
  Json hcomp = Json::array(), vcomp = Json::array(), lw = Json::array(), rw = Json::array();
  for (std::uint32_t f = 0; f < c.one_cell_count(); ++f) {
    OneCellId fi{f};
    for (auto g : c.one_cells_from(c.target(fi)))
      if (auto r = c.try_compose(g, fi)) hcomp.push_back({g.value, f, r->value});
  }
  for (std::uint32_t a = 0; a < c.two_cell_count(); ++a) {
    TwoCellId phi{a};
    for (auto psi : c.two_cells_from(c.target(phi)))
      if (auto r = c.try_vcomp(psi, phi)) vcomp.push_back({psi.value, a, r->value});
    for (auto g : c.one_cells_from(c.target(c.source(phi))))
      if (auto r = c.try_lwhisker(g, phi)) lw.push_back({g.value, a, r->value});
    for (auto f : c.one_cells_to(c.source(c.source(phi))))
      if (auto r = c.try_rwhisker(phi, f)) rw.push_back({a, f.value, r->value});
  }
  j["objects"] = objects;
  j["one_cells"] = ones;
  j["two_cells"] = twos;
  j["identity_one"] = id1;
  j["identity_two"] = id2;
  j["hcomp1"] = hcomp;
  j["vcomp"] = vcomp;
  j["lwhisker"] = lw;
  j["rwhisker"] = rw;
  if (c.has_explicit_coherence()) {
    Json alpha = Json::array(), lambda = Json::array(), rho = Json::array();
    for (std::uint32_t f = 0; f < c.one_cell_count(); ++f) {
      OneCellId fi{f};
      for (auto g : c.one_cells_from(c.target(fi)))
        for (auto h : c.one_cells_from(c.target(g)))
          if (auto a = c.try_associator(h, g, fi)) alpha.push_back({h.value, g.value, f, a->value});
      if (auto l = c.try_left_unitor(fi)) lambda.push_back({f, l->value});
      if (auto r = c.try_right_unitor(fi)) rho.push_back({f, r->value});
    }
    j["coherence"] = {{"alpha", alpha}, {"lambda", lambda}, {"rho", rho}};
  }
  return j;
}

TwoCategory two_category_from(const Reader& in, const Json& j) {
  in.allow(j,
           {"name", "objects", "one_cells", "two_cells", "identity_one", "identity_two", "hcomp1", "vcomp", "lwhisker",
            "rwhisker", "coherence"},
           ".2cat");
  in.require(j, {"objects", "one_cells", "two_cells"});
  TwoCategory::Builder b;
  if (j.contains("name")) {
    if (!j["name"].is_string()) in.error("name", "\"name\" must be a string");
    b.set_name(j["name"].get<std::string>());
  }
  auto objects = in.list(j, "objects");
  for (std::size_t x = 0; x < objects.size(); ++x) {
    if (objects[x] != static_cast<long>(x)) in.error("objects", "objects must be listed as 0, 1, ..., n-1");
    b.add_object();
  }
  auto cells = [&](const char* key, auto add) {
    auto rs = in.rows(j, key, 3);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      if (rs[i][0] != static_cast<long>(i)) in.error(key, std::string("ids in \"") + key + "\" must run 0, 1, ... in order");
      if (rs[i][1] < 0 || rs[i][2] < 0) in.error(key, std::string("negative id in \"") + key + "\"");
      add(static_cast<std::uint32_t>(rs[i][1]), static_cast<std::uint32_t>(rs[i][2]));
    }
  };
  const auto n0 = objects.size();
  cells("one_cells", [&](std::uint32_t s, std::uint32_t t) {
    if (s >= n0 || t >= n0) in.error("one_cells", "1-cell endpoint out of range");
    b.add_one_cell(ObjectId{s}, ObjectId{t});
  });
  const auto n1 = b.one_cell_count();
  cells("two_cells", [&](std::uint32_t s, std::uint32_t t) {
    if (s >= n1 || t >= n1) in.error("two_cells", "2-cell boundary out of range");
    b.add_two_cell(OneCellId{s}, OneCellId{t});
  });
  auto u = [&](long v, const char* key) {
    if (v < 0) in.error(key, std::string("negative id in \"") + key + "\"");
    return static_cast<std::uint32_t>(v);
  };
  for (const auto& r : in.rows(j, "identity_one", 2)) b.set_identity(ObjectId{u(r[0], "identity_one")}, OneCellId{u(r[1], "identity_one")});
  for (const auto& r : in.rows(j, "identity_two", 2)) b.set_identity(OneCellId{u(r[0], "identity_two")}, TwoCellId{u(r[1], "identity_two")});
  for (const auto& r : in.rows(j, "hcomp1", 3))
    b.set_compose(OneCellId{u(r[0], "hcomp1")}, OneCellId{u(r[1], "hcomp1")}, OneCellId{u(r[2], "hcomp1")});
  for (const auto& r : in.rows(j, "vcomp", 3))
    b.set_vcomp(TwoCellId{u(r[0], "vcomp")}, TwoCellId{u(r[1], "vcomp")}, TwoCellId{u(r[2], "vcomp")});
  for (const auto& r : in.rows(j, "lwhisker", 3))
    b.set_lwhisker(OneCellId{u(r[0], "lwhisker")}, TwoCellId{u(r[1], "lwhisker")}, TwoCellId{u(r[2], "lwhisker")});
  for (const auto& r : in.rows(j, "rwhisker", 3))
    b.set_rwhisker(TwoCellId{u(r[0], "rwhisker")}, OneCellId{u(r[1], "rwhisker")}, TwoCellId{u(r[2], "rwhisker")});
  if (j.contains("coherence")) {
    const auto& coh = j["coherence"];
    if (!coh.is_object()) in.error("coherence", "\"coherence\" must be an object");
    in.allow(coh, {"alpha", "lambda", "rho"}, "coherence");
    for (const auto& r : in.rows(coh, "alpha", 4))
      b.set_associator(OneCellId{u(r[0], "alpha")}, OneCellId{u(r[1], "alpha")}, OneCellId{u(r[2], "alpha")},
                       TwoCellId{u(r[3], "alpha")});
    for (const auto& r : in.rows(coh, "lambda", 2)) b.set_left_unitor(OneCellId{u(r[0], "lambda")}, TwoCellId{u(r[1], "lambda")});
    for (const auto& r : in.rows(coh, "rho", 2)) b.set_right_unitor(OneCellId{u(r[0], "rho")}, TwoCellId{u(r[1], "rho")});
  }
  return std::move(b).build();
}

Json complex_json(const CombinatorialBase& k) {
  Json j;
  j["vertices"] = k.labels();
  Json simplices = Json::array();
  for (const auto& s : k.maximal_simplices()) simplices.push_back(k.to_labels(s));
  j["simplices"] = simplices;
  return j;
}

CombinatorialBase complex_from(const Reader& in, const Json& j) {
  in.allow(j, {"vertices", "simplices"}, ".cplx");
  in.require(j, {"vertices"});
  auto labels = in.list(j, "vertices");
  std::vector<std::vector<long>> simplices;
  if (j.contains("simplices")) {
    if (!j["simplices"].is_array()) in.error("simplices", "\"simplices\" must be an array");
    for (const auto& s : j["simplices"]) {
      if (!s.is_array() || s.empty()) in.error("simplices", "each simplex must be a nonempty array of labels");
      std::vector<long> row;
      for (const auto& x : s) row.push_back(in.integer(x, "simplices"));
      simplices.push_back(row);
    }
  }
  try {
    return CombinatorialBase::from_simplices(labels, simplices);
  } catch (const Error& e) {
    in.error(e.code() == Errc::size_limit ? "simplices" : "vertices", e.what());
  }
}

}  // namespace

TwoCategory parse_two_category(std::string_view text) {
  Reader in(text);
  return two_category_from(in, in.doc());
}

std::string dump_two_category(const TwoCategory& c) { return pretty(two_category_json(c)); }

CombinatorialBase parse_complex(std::string_view text) {
  Reader in(text);
  return complex_from(in, in.doc());
}

std::string dump_complex(const CombinatorialBase& k) { return pretty(complex_json(k)); }

Bundle parse_bundle(std::string_view text, const std::string& base_dir) {
  Reader in(text);
  const auto& j = in.doc();
  in.allow(j, {"structure", "base", "V", "E", "phi"}, ".bundle");
  in.require(j, {"structure", "base"});
  auto resolve = [&](const std::string& ref) {
    std::filesystem::path p(ref);
    return p.is_absolute() ? p.string() : (std::filesystem::path(base_dir) / p).string();
  };
  StructurePtr structure;
  if (j["structure"].is_string()) {
    structure = std::make_shared<const TwoCategory>(load_two_category(resolve(j["structure"].get<std::string>())));
  } else if (j["structure"].is_object()) {
    auto sub = j["structure"].dump();
    structure = std::make_shared<const TwoCategory>(parse_two_category(sub));
  } else {
    in.error("structure", "\"structure\" must be a path or an object");
  }
  CombinatorialBase base;
  if (j["base"].is_string()) {
    base = load_complex(resolve(j["base"].get<std::string>()));
  } else if (j["base"].is_object()) {
    base = parse_complex(j["base"].dump());
  } else {
    in.error("base", "\"base\" must be a path or an object");
  }
  Bundle b = blank_bundle(structure, base);
  auto rank = [&](long label, const char* key) {
    auto r = base.rank_of(label);
    if (!r) in.error(key, "unknown vertex label " + std::to_string(label) + " in \"" + key + "\"");
    return *r;
  };
  auto cell = [&](long v, const char* key) {
    if (v < 0) in.error(key, std::string("negative cell id in \"") + key + "\"");
    return static_cast<std::uint32_t>(v);
  };
  for (const auto& r : in.rows(j, "V", 2)) {
    auto a = rank(r[0], "V");
    if (b.V[a].value != kAbsent) in.error("V", "vertex listed twice in \"V\"");
    b.V[a] = ObjectId{cell(r[1], "V")};
  }
  for (const auto& r : in.rows(j, "E", 3)) {
    auto e = base.index_of({rank(r[0], "E"), rank(r[1], "E")});
    if (!e) in.error("E", "(" + std::to_string(r[0]) + ", " + std::to_string(r[1]) + ") is not an ordered edge of the base");
    if (b.E[*e].value != kAbsent) in.error("E", "edge listed twice in \"E\"");
    b.E[*e] = OneCellId{cell(r[2], "E")};
  }
  for (const auto& r : in.rows(j, "phi", 4)) {
    auto t = base.index_of({rank(r[0], "phi"), rank(r[1], "phi"), rank(r[2], "phi")});
    if (!t) in.error("phi", "not an ordered triangle of the base");
    if (b.phi[*t].value != kAbsent) in.error("phi", "triangle listed twice in \"phi\"");
    b.phi[*t] = TwoCellId{cell(r[3], "phi")};
  }
  return b;
}

std::string dump_bundle(const Bundle& b, const std::string& structure_ref, const std::string& base_ref) {
  Json j;
  if (structure_ref.empty())
    j["structure"] = two_category_json(*b.structure);
  else
    j["structure"] = structure_ref;
  if (base_ref.empty())
    j["base"] = complex_json(b.base);
  else
    j["base"] = base_ref;
  const auto& k = b.base;
  Json v = Json::array(), e = Json::array(), phi = Json::array();
  for (std::size_t a = 0; a < b.V.size(); ++a)
    if (b.V[a].value != kAbsent) v.push_back({k.label(static_cast<int>(a)), b.V[a].value});
  for (std::size_t i = 0; i < b.E.size(); ++i) {
    if (b.E[i].value == kAbsent) continue;
    auto l = k.to_labels(k.simplices(1)[i]);
    e.push_back({l[0], l[1], b.E[i].value});
  }
  for (std::size_t i = 0; i < b.phi.size(); ++i) {
    if (b.phi[i].value == kAbsent) continue;
    auto l = k.to_labels(k.simplices(2)[i]);
    phi.push_back({l[0], l[1], l[2], b.phi[i].value});
  }
  j["V"] = v;
  j["E"] = e;
  j["phi"] = phi;
  return pretty(j);
}

FinSimplicialSet parse_sset(std::string_view text) {
  Reader in(text);
  const auto& j = in.doc();
  in.allow(j, {"max_dim", "sizes", "faces", "degeneracies"}, ".sset");
  in.require(j, {"max_dim", "sizes", "faces", "degeneracies"});
  FinSimplicialSet::Tables t;
  t.max_dim = static_cast<int>(in.integer(j["max_dim"], "max_dim"));
  for (auto s : in.list(j, "sizes")) {
    if (s < 0) in.error("sizes", "negative size");
    t.sizes.push_back(static_cast<std::size_t>(s));
  }
  auto cube = [&](const char* key) {
    std::vector<std::vector<std::vector<std::uint32_t>>> out;
    const auto& a = j[key];
    if (!a.is_array()) in.error(key, std::string("\"") + key + "\" must be an array");
    for (const auto& per_dim : a) {
      if (!per_dim.is_array()) in.error(key, std::string("\"") + key + "\" must nest three arrays deep");
      out.emplace_back();
      for (const auto& per_index : per_dim) {
        if (!per_index.is_array()) in.error(key, std::string("\"") + key + "\" must nest three arrays deep");
        out.back().emplace_back();
        for (const auto& z : per_index) out.back().back().push_back(in.index(z, key));
      }
    }
    return out;
  };
  t.faces = cube("faces");
  t.degeneracies = cube("degeneracies");
  try {
    return FinSimplicialSet(std::move(t));
  } catch (const Error& e) {
    in.error("faces", e.what());
  }
}

std::string dump_sset(const FinSimplicialSet& x) {
  const auto& t = x.tables();
  Json j;
  j["max_dim"] = t.max_dim;
  j["sizes"] = t.sizes;
  j["faces"] = t.faces;
  j["degeneracies"] = t.degeneracies;
  return pretty(j);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError(0, 0, "cannot open " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError(0, 0, "cannot write " + path);
  f << text;
}

std::string directory_of(const std::string& path) {
  auto parent = std::filesystem::path(path).parent_path();
  return parent.empty() ? "." : parent.string();
}

TwoCategory load_two_category(const std::string& path) { return parse_two_category(read_file(path)); }
CombinatorialBase load_complex(const std::string& path) { return parse_complex(read_file(path)); }
Bundle load_bundle(const std::string& path) { return parse_bundle(read_file(path), directory_of(path)); }

}  // namespace twobundle
