#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twobundle/adjoint.hpp"
#include "twobundle/bundle.hpp"
#include "twobundle/constructions.hpp"
#include "twobundle/examples.hpp"
#include "twobundle/io.hpp"
#include "twobundle/nerve.hpp"
#include "twobundle/simplicial.hpp"

namespace py = pybind11;
using namespace twobundle;

namespace {

using CatPtr = std::shared_ptr<TwoCategory>;

CatPtr own(TwoCategory c) { return std::make_shared<TwoCategory>(std::move(c)); }

py::dict report_dict(const ValidationReport& r) {
  py::list items;
  for (const auto& v : r.violations) items.append(py::make_tuple(v.rule, v.witness));
  py::dict d;
  d["ok"] = r.ok();
  d["total"] = r.total;
  d["violations"] = items;
  return d;
}

std::vector<std::size_t> nerve_counts(const TwoCategory& c, int dim, std::size_t bound) {
  auto n = duskin_nerve(c, dim, bound);
  std::vector<std::size_t> out;
  for (int k = 0; k <= dim; ++k) out.push_back(n.size(k));
  return out;
}

py::dict kan_dict(const TwoCategory& c, int dim, std::size_t bound) {
  auto rep = check_discrete_kan(duskin_nerve(c, dim, bound).sset(), dim);
  py::dict d;
  d["kan"] = rep.kan;
  if (auto f = rep.first_failure()) {
    d["n"] = f->n;
    d["k"] = f->k;
    d["entries"] = f->witness ? f->witness->entries : std::vector<std::uint32_t>{};
  }
  return d;
}

struct PyBundle {
  Bundle b;

  std::vector<std::uint32_t> V() const {
    std::vector<std::uint32_t> out;
    for (auto x : b.V) out.push_back(x.value);
    return out;
  }
  std::vector<std::uint32_t> E() const {
    std::vector<std::uint32_t> out;
    for (auto x : b.E) out.push_back(x.value);
    return out;
  }
  std::vector<std::uint32_t> phi() const {
    std::vector<std::uint32_t> out;
    for (auto x : b.phi) out.push_back(x.value);
    return out;
  }
};

StructurePtr shared(const CatPtr& c) { return c; }

OneCellId one(const TwoCategory& c, std::uint32_t f) {
  if (f >= c.one_cell_count()) fail(Errc::index_mismatch, "no 1-cell " + std::to_string(f));
  return OneCellId{f};
}

TwoCellId two(const TwoCategory& c, std::uint32_t phi) {
  if (phi >= c.two_cell_count()) fail(Errc::index_mismatch, "no 2-cell " + std::to_string(phi));
  return TwoCellId{phi};
}

ObjectId obj(const TwoCategory& c, std::uint32_t x) {
  if (x >= c.object_count()) fail(Errc::index_mismatch, "no object " + std::to_string(x));
  return ObjectId{x};
}

// Bundles loaded from separate files carry separate copies of the same structure.
Bundle with_structure(Bundle b, const StructurePtr& s) {
  if (b.structure != s && dump_two_category(*b.structure) == dump_two_category(*s)) b.structure = s;
  return b;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite 2-categories, Duskin nerves and principal 2-bundles";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object code = py::str(std::string(to_string(e.code())));
      PyErr_SetObject(error.ptr(), py::make_tuple(code, e.what()).ptr());
    }
  });

  py::class_<TwoCategory, CatPtr>(m, "TwoCategory")
      .def_property_readonly("name", &TwoCategory::name)
      .def_property_readonly("object_count", &TwoCategory::object_count)
      .def_property_readonly("one_cell_count", &TwoCategory::one_cell_count)
      .def_property_readonly("two_cell_count", &TwoCategory::two_cell_count)
      .def("compose", [](const TwoCategory& c, std::uint32_t g, std::uint32_t f) { return c.compose(one(c, g), one(c, f)).value; })
      .def("vcomp", [](const TwoCategory& c, std::uint32_t psi, std::uint32_t phi) { return c.vcomp(two(c, psi), two(c, phi)).value; })
      .def("lwhisker", [](const TwoCategory& c, std::uint32_t g, std::uint32_t phi) { return c.lwhisker(one(c, g), two(c, phi)).value; })
      .def("rwhisker", [](const TwoCategory& c, std::uint32_t phi, std::uint32_t f) { return c.rwhisker(two(c, phi), one(c, f)).value; })
      .def("hcomp", [](const TwoCategory& c, std::uint32_t psi, std::uint32_t phi) { return c.hcomp(two(c, psi), two(c, phi)).value; })
      .def("identity_one_cell", [](const TwoCategory& c, std::uint32_t x) { return c.identity(obj(c, x)).value; })
      .def("identity_two_cell", [](const TwoCategory& c, std::uint32_t f) { return c.identity(one(c, f)).value; })
      .def("validate", [](const TwoCategory& c) { return report_dict(validate_bicategory(c)); })
      .def("is_strict", [](const TwoCategory& c) { return is_strict(c); })
      .def("is_two_groupoid", [](const TwoCategory& c) { return is_two_groupoid(c); })
      .def("nerve_counts", &nerve_counts, py::arg("dim") = 3, py::arg("bound") = 1'000'000)
      .def("kan", &kan_dict, py::arg("dim") = 4, py::arg("bound") = 1'000'000)
      .def("dumps", [](const TwoCategory& c) { return dump_two_category(c); });

  m.def("cyclic_gerbe", [](std::size_t n) { return own(cyclic_gerbe(n)); });
  m.def("delooping_cyclic", [](std::size_t n) { return own(delooping(cyclic_group(n))); });
  m.def("delooping_symmetric", [](std::size_t n) { return own(delooping(symmetric_group(n))); });
  m.def("delooping_monoid", [] { return own(delooping(idempotent_monoid())); });
  m.def("two_group", [](std::size_t mm, std::size_t k, bool twisted) { return own(two_group(mm, k, twisted)); },
        py::arg("m"), py::arg("k"), py::arg("twisted") = true);
  m.def("parse_two_category", [](const std::string& text) { return own(parse_two_category(text)); });
  m.def("load_two_category", [](const std::string& path) { return own(load_two_category(path)); });

  py::class_<CombinatorialBase>(m, "Complex")
      .def_property_readonly("labels", &CombinatorialBase::labels)
      .def_property_readonly("dimension", &CombinatorialBase::dimension)
      .def("count", &CombinatorialBase::count)
      .def("simplices", [](const CombinatorialBase& k, int d) {
        std::vector<std::vector<long>> out;
        for (const auto& s : k.simplices(d)) out.push_back(k.to_labels(s));
        return out;
      })
      .def("dumps", [](const CombinatorialBase& k) { return dump_complex(k); })
      .def("__eq__", [](const CombinatorialBase& a, const CombinatorialBase& b) { return a == b; });

  m.def("complex_from_simplices", &CombinatorialBase::from_simplices, py::arg("labels"), py::arg("simplices"));
  m.def("point", &point_complex);
  m.def("simplex", &simplex_complex);
  m.def("simplex_boundary", &simplex_boundary);
  m.def("circle", &circle_complex);
  m.def("parse_complex", [](const std::string& text) { return parse_complex(text); });
  m.def("load_complex", &load_complex);
  m.def("cohomology_dimension", &cochain_cohomology, py::arg("complex"), py::arg("p"), py::arg("degree"));

  py::class_<PyBundle>(m, "Bundle")
      .def_property_readonly("V", &PyBundle::V)
      .def_property_readonly("E", &PyBundle::E)
      .def_property_readonly("phi", &PyBundle::phi)
      .def_property_readonly("base", [](const PyBundle& b) { return b.b.base; })
      .def("validate", [](const PyBundle& b) { return report_dict(validate_bundle(b.b)); })
      .def("restrict", [](const PyBundle& b, const CombinatorialBase& sub) { return PyBundle{restrict_bundle(b.b, sub)}; })
      .def("dumps", [](const PyBundle& b) { return dump_bundle(b.b); })
      .def("__eq__", [](const PyBundle& a, const PyBundle& b) { return a.b == b.b; });

  m.def("load_bundle", [](const std::string& path) { return PyBundle{load_bundle(path)}; });
  m.def("trivial_bundle", [](const CatPtr& c, const CombinatorialBase& base, std::uint32_t x) {
    return PyBundle{trivial_bundle(shared(c), base, obj(*c, x))};
  }, py::arg("structure"), py::arg("base"), py::arg("object") = 0);
  m.def("enumerate_bundles", [](const CatPtr& c, const CombinatorialBase& base, std::size_t bound) {
    std::vector<PyBundle> out;
    for (auto& b : enumerate_bundles(shared(c), base, bound)) out.push_back(PyBundle{std::move(b)});
    return out;
  }, py::arg("structure"), py::arg("base"), py::arg("bound") = 1'000'000);
  m.def("concordance_class_count", [](const CatPtr& c, const CombinatorialBase& base, std::size_t bound) {
    return concordance_classes(shared(c), base, bound).count();
  }, py::arg("structure"), py::arg("base"), py::arg("bound") = 1'000'000);
  m.def("glue", [](const PyBundle& x, const PyBundle& b, const CombinatorialBase& along) {
    return PyBundle{glue(x.b, with_structure(b.b, x.b.structure), inclusion(along, b.b.base))};
  }, py::arg("x"), py::arg("b"), py::arg("along"));
  m.def("pullback", [](const PyBundle& b, const CombinatorialBase& source, const std::vector<int>& image) {
    return PyBundle{pullback(b.b, BaseMap{source, b.b.base, image})};
  }, py::arg("bundle"), py::arg("source"), py::arg("image"));

  m.def("bc_report", [](std::size_t b1, std::size_t b0, std::uint32_t p, std::size_t dim_b_bound) {
    BCOptions o;
    o.b1 = b1;
    o.b0 = b0;
    o.p = p;
    o.dim_b_bound = dim_b_bound;
    auto inst = build_2B(o);
    auto ho = quotient_to_Ho(inst);
    auto h = homology_functor(inst);
    auto in_ho = verify_sigma_colax(inst, &ho);
    auto in_2b = verify_sigma_colax(inst, nullptr);
    py::dict d;
    d["objects"] = inst.cat.object_count();
    d["one_cells"] = inst.cat.one_cell_count();
    d["two_cells"] = inst.cat.two_cell_count();
    d["ho_two_cells"] = ho.cat.two_cell_count();
    d["ho_well_defined"] = ho.well_defined();
    d["hi_identity"] = h.ok();
    d["sigma_colax_in_ho"] = in_ho.ok();
    d["sigma_colax_in_2b"] = in_2b.ok();
    return d;
  }, py::arg("b1") = 1, py::arg("b0") = 1, py::arg("p") = 2, py::arg("dim_b_bound") = 1);
}
