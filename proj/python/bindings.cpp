#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kf/selftest.hpp"

namespace py = pybind11;
using namespace kf;

namespace {

// Exactly one of pd (JSON text), braid or catalog; results travel as JSON text.
PlanarDiagram diagram_arg(const std::string& pd, const std::string& braid, const std::string& catalog, bool mirror) {
  int given = !pd.empty() + !braid.empty() + !catalog.empty();
  if (given != 1) throw ParseError("give exactly one of pd, braid, catalog");
  PlanarDiagram d;
  if (!pd.empty()) {
    d = diagram_from_json(parse_json(pd, "pd"));
  } else if (!braid.empty()) {
    d = braid_closure(parse_braid(braid));
    d.set_name("braid " + braid);
  } else {
    d = find_catalog_entry(catalog).knot_diagram();
  }
  return mirror ? d.mirrored() : d;
}

TemplateSpec template_arg(const std::string& tmpl, const std::string& catalog) {
  if (tmpl.empty() == catalog.empty()) throw ParseError("give exactly one of template, catalog");
  if (!tmpl.empty()) return template_from_json(parse_json(tmpl, "template"));
  CatalogEntry e = find_catalog_entry(catalog);
  if (!e.tmpl) throw Error("catalog entry '" + catalog + "' has no template");
  return {e.tmpl->tmpl, e.mirror};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reduced Khovanov homology over F2, kappa invariants and classical knot invariants";

  // Translators run newest first, so the base class goes in first.
  py::register_exception<Error>(m, "KfError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_RuntimeError);

  m.def(
      "kh_json",
      [](const std::string& pd, const std::string& braid, const std::string& catalog, bool mirror, int threads) {
        PlanarDiagram d = diagram_arg(pd, braid, catalog, mirror);
        RunOptions o;
        o.threads = threads;
        KhTable t;
        {
          py::gil_scoped_release release;
          t = kh_table(d, o.kh());
        }
        t.link = d.name();
        return kh_to_json(t).dump();
      },
      py::arg("pd") = "", py::arg("braid") = "", py::arg("catalog") = "", py::arg("mirror") = false,
      py::arg("threads") = 1);

  m.def(
      "fill_json",
      [](const std::string& tmpl, const std::string& catalog, const std::string& slope) {
        TemplateSpec t = template_arg(tmpl, catalog);
        PlanarDiagram d = fill(t.tmpl, parse_slope(slope));
        if (t.mirror) d = d.mirrored();
        return diagram_to_json(d).dump();
      },
      py::arg("template") = "", py::arg("catalog") = "", py::arg("slope") = "0");

  m.def(
      "lspace_json",
      [](const std::string& pd, const std::string& braid, const std::string& catalog) {
        return lspace_to_json(diagram_arg(pd, braid, catalog, false)).dump();
      },
      py::arg("pd") = "", py::arg("braid") = "", py::arg("catalog") = "");

  m.def(
      "determinant",
      [](const std::string& pd, const std::string& braid, const std::string& catalog) {
        return determinant(diagram_arg(pd, braid, catalog, false));
      },
      py::arg("pd") = "", py::arg("braid") = "", py::arg("catalog") = "");

  m.def(
      "kappa_json",
      [](const std::string& tmpl, const std::string& catalog, std::optional<std::pair<int, int>> range, bool mirror,
         int threads) {
        TemplateSpec t = template_arg(tmpl, catalog);
        RunOptions o;
        o.threads = threads;
        KappaOptions ko;
        ko.family = o.family(t.mirror != mirror);
        if (range) ko.has_range = true, ko.lo = range->first, ko.hi = range->second;
        KappaResult r;
        {
          py::gil_scoped_release release;
          r = run_kappa(t.tmpl, ko);
        }
        Json j = kappa_to_json(r.kappa);
        j["family"] = family_to_json(r.family, r.profile);
        return j.dump();
      },
      py::arg("template") = "", py::arg("catalog") = "", py::arg("range") = py::none(), py::arg("mirror") = false,
      py::arg("threads") = 1);

  m.def(
      "validate_json",
      [](const std::string& tmpl, const std::string& catalog) {
        return validation_to_json(validate_template(template_arg(tmpl, catalog).tmpl)).dump();
      },
      py::arg("template") = "", py::arg("catalog") = "");

  m.def(
      "selftest_json",
      [](int threads) {
        RunOptions o;
        o.threads = threads;
        py::gil_scoped_release release;
        return run_selftest(o).dump();
      },
      py::arg("threads") = 1);

  m.def("catalog_names", [] {
    std::vector<std::string> names;
    for (auto& e : builtin_catalog()) names.push_back(e.name);
    return names;
  });
}
