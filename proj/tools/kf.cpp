#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "kf/selftest.hpp"

using namespace kf;

namespace {

struct Flags {
  std::string pd, braid, catalog, tmpl, slope, range;
  std::string format = "text";
  bool mirror = false;
  int threads = 1;
  long long max_generators = KhOptions{}.max_generators;
};

// Exit codes: 0 success, 1 a check failed, 2 bad input, 3 computation failed.
struct CheckFailed {
  int code = 1;
};

struct Input {
  std::optional<PlanarDiagram> diagram;
  std::optional<TangleTemplate> tmpl;
  bool tmpl_mirror = false;  // entry convention xor --mirror
};

Input resolve(const Flags& f) {
  int given = !f.pd.empty() + !f.braid.empty() + !f.catalog.empty() + !f.tmpl.empty();
  if (given != 1) throw ParseError("give exactly one of --pd, --braid, --catalog, --template");
  Input in;
  if (!f.pd.empty()) {
    in.diagram = diagram_from_json(parse_json(read_text_file(f.pd), f.pd));
  } else if (!f.braid.empty()) {
    in.diagram = braid_closure(parse_braid(f.braid));
    in.diagram->set_name("braid " + f.braid);
  } else if (!f.catalog.empty()) {
    CatalogEntry e = find_catalog_entry(f.catalog);
    if (e.has_diagram()) in.diagram = e.knot_diagram();
    if (e.tmpl) in.tmpl = e.tmpl->tmpl;
    in.tmpl_mirror = e.mirror;
  } else {
    TemplateSpec s = template_from_json(parse_json(read_text_file(f.tmpl), f.tmpl));
    in.tmpl = s.tmpl;
    in.tmpl_mirror = s.mirror;
  }
  if (in.diagram && f.mirror) in.diagram = in.diagram->mirrored();
  in.tmpl_mirror = in.tmpl_mirror != f.mirror;
  return in;
}

PlanarDiagram filling(const Input& in, const RationalSlope& s) {
  PlanarDiagram d = fill(*in.tmpl, s);
  if (in.tmpl_mirror) d = d.mirrored();
  return d;
}

PlanarDiagram diagram_of(const Flags& f, const Input& in) {
  if (!f.slope.empty()) {
    if (!in.tmpl) throw ParseError("--slope needs a template input (--template or a template catalog entry)");
    return filling(in, parse_slope(f.slope));
  }
  if (!in.diagram) throw ParseError("template input needs --slope to pick a filling");
  return *in.diagram;
}

const TangleTemplate& template_of(const Input& in) {
  if (!in.tmpl) throw ParseError("this command needs a template (--template FILE or a template catalog entry)");
  return *in.tmpl;
}

std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) throw ParseError("range must look like LO..HI, got '" + s + "'");
  try {
    size_t used = 0;
    std::string a = s.substr(0, dots), b = s.substr(dots + 2);
    int lo = std::stoi(a, &used);
    if (used != a.size()) throw ParseError("");
    int hi = std::stoi(b, &used);
    if (used != b.size()) throw ParseError("");
    if (lo > hi) throw ParseError("");
    return {lo, hi};
  } catch (const std::exception&) {
    throw ParseError("range must look like LO..HI with LO <= HI, got '" + s + "'");
  }
}

RunOptions run_options(const Flags& f) {
  if (f.threads < 1) throw ParseError("--threads must be at least 1");
  RunOptions o;
  o.threads = f.threads;
  o.max_generators = f.max_generators;
  return o;
}

void emit_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

void cmd_kh(const Flags& f) {
  Input in = resolve(f);
  PlanarDiagram d = diagram_of(f, in);
  KhTable t = kh_table(d, run_options(f).kh());
  t.link = d.name();
  if (f.format == "json") return emit_json(kh_to_json(t));
  if (f.format == "latex") {
    std::cout << grid_latex(t.entries);
    return;
  }
  std::cout << "link " << d.name() << ": " << d.crossing_count() << " crossings, " << d.component_count()
            << " component(s)\n";
  std::cout << "total dim " << t.total_dim() << ", width " << width(t) << "\n" << grid_text(t.entries);
}

void cmd_width(const Flags& f) {
  Input in = resolve(f);
  RunOptions ro = run_options(f);
  if (in.tmpl && f.slope.empty() && !in.diagram) {
    int lo, hi;
    if (!f.range.empty()) {
      std::tie(lo, hi) = parse_range(f.range);
    } else {
      int g = in.tmpl->n_guess.value_or(0);
      lo = g - 5, hi = g + 5;
    }
    FillingFamily fam = compute_family(*in.tmpl, lo, hi, ro.family(in.tmpl_mirror));
    Json rows = Json::array();
    for (auto& [n, t] : fam.tables) rows.push_back({{"n", n}, {"total_dim", t.total_dim()}, {"width", width(t)}});
    if (f.format == "json")
      return emit_json({{"format", kFormat}, {"template", in.tmpl->name}, {"fillings", rows}});
    std::cout << "template " << in.tmpl->name << "\n";
    for (auto& r : rows)
      std::cout << "T(" << r["n"].get<int>() << ")  dim " << r["total_dim"].get<int>() << "  width "
                << r["width"].get<int>() << "\n";
    return;
  }
  PlanarDiagram d = diagram_of(f, in);
  KhTable t = kh_table(d, ro.kh());
  if (f.format == "json")
    return emit_json({{"format", kFormat}, {"link", d.name()}, {"width", width(t)}, {"total_dim", t.total_dim()}});
  std::cout << width(t) << "\n";
}

void cmd_kappa(const Flags& f) {
  Input in = resolve(f);
  const TangleTemplate& t = template_of(in);
  KappaOptions ko;
  ko.family = run_options(f).family(in.tmpl_mirror);
  if (!f.range.empty()) {
    ko.has_range = true;
    std::tie(ko.lo, ko.hi) = parse_range(f.range);
  }
  KappaResult r = run_kappa(t, ko);
  if (f.format == "json") {
    Json j = kappa_to_json(r.kappa);
    j["family"] = family_to_json(r.family, r.profile);
    return emit_json(j);
  }
  if (f.format == "latex") {
    std::cout << grid_latex(r.kappa.entries);
    return;
  }
  std::cout << "template " << t.name << (r.kappa.mirror ? " (mirrored)" : "") << ", fillings " << r.family.lo
            << ".." << r.family.hi << ", N = " << r.profile.N << "\n";
  std::map<int, const StepClass*> step;
  for (auto& s : r.profile.evidence) step[s.n] = &s;
  for (auto& [n, tab] : r.family.tables) {
    std::cout << "  T(" << n << ")  dim " << tab.total_dim() << "  width " << width(tab);
    if (auto it = step.find(n); it != step.end())
      std::cout << "  f_" << n << " " << (it->second->kind == StepKind::Surjective ? "surjective" : "injective");
    std::cout << "\n";
  }
  std::cout << "kappa: total dim " << r.kappa.total_dim();
  if (!r.kappa.entries.empty()) std::cout << ", width " << kappa_width(r.kappa);
  std::cout << "\n" << grid_text(r.kappa.entries);
}

void cmd_alexander(const Flags& f) {
  Input in = resolve(f);
  PlanarDiagram d = diagram_of(f, in);
  AlexanderPoly a = alexander(d);
  if (f.format == "json")
    return emit_json({{"format", kFormat}, {"link", d.name()}, {"alexander", poly_to_json(a.poly)}});
  std::cout << a.poly.str("t") << "\n";
}

void cmd_det(const Flags& f) {
  Input in = resolve(f);
  PlanarDiagram d = diagram_of(f, in);
  long long v = determinant(d);
  if (f.format == "json") return emit_json({{"format", kFormat}, {"link", d.name()}, {"det", v}});
  std::cout << v << "\n";
}

void cmd_semigroup(const Flags& f) {
  Input in = resolve(f);
  PlanarDiagram d = diagram_of(f, in);
  Json j = lspace_to_json(d);
  if (!j["lspace_form"].get<bool>())
    throw Error("Alexander polynomial " + j["alexander_text"].get<std::string>() + " is not of L-space form");
  if (f.format == "json") return emit_json(j);
  const Json& s = j["semigroup"];
  std::cout << "alexander " << j["alexander_text"].get<std::string>() << "\n";
  std::cout << "elements below " << s["threshold"].get<int>() << ": " << s["elements_below"].dump() << "\n";
  std::cout << "is_semigroup: " << (s["is_semigroup"].get<bool>() ? "true" : "false") << "\n";
}

void cmd_validate(const Flags& f) {
  Input in = resolve(f);
  ValidationReport r = validate_template(template_of(in), run_options(f).kh());
  if (f.format == "json")
    emit_json(validation_to_json(r));
  else
    for (auto& c : r.checks) std::cout << (c.pass ? "pass  " : "FAIL  ") << c.name << ": " << c.detail << "\n";
  if (!r.ok()) throw CheckFailed{};
}

void cmd_selftest(const Flags& f) {
  Json j = run_selftest(run_options(f));
  if (f.format == "json") {
    emit_json(j);
  } else {
    for (auto& r : j["selftest"]) {
      std::cout << (r["pass"].get<bool>() ? "pass  " : "FAIL  ") << r["entry"].get<std::string>() << " "
                << r["check"].get<std::string>();
      if (!r["pass"].get<bool>())
        std::cout << "  expected " << r["expected"].dump() << " got "
                  << (r.contains("got") ? r["got"].dump() : r["error"].get<std::string>());
      std::cout << "\n";
    }
    std::cout << j["passed"].get<int>() << "/" << j["total"].get<int>() << " checks passed\n";
  }
  if (!j["pass"].get<bool>()) throw CheckFailed{};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced Khovanov homology over F2, kappa invariants of tangle families, and classical invariants"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--pd", f.pd, "PD code JSON file");
  app.add_option("--braid", f.braid, "braid word such as \"(2,1,3,2)^3,1,2,3,3,2\"");
  app.add_option("--catalog", f.catalog, "built-in or KF_CATALOG_DIR entry");
  app.add_option("--template", f.tmpl, "tangle template JSON file");
  app.add_option("--slope", f.slope, "filling slope p/q, integer, or inf");
  app.add_option("--range", f.range, "filling range LO..HI");
  app.add_option("--format", f.format, "output format")->check(CLI::IsMember({"text", "json", "latex"}));
  app.add_flag("--mirror", f.mirror, "mirror every diagram (toggles the catalog convention)");
  app.add_option("--threads", f.threads, "worker threads");
  app.add_option("--max-generators", f.max_generators, "generator budget per complex");

  std::vector<std::pair<std::string, std::function<void(const Flags&)>>> cmds = {
      {"kh", cmd_kh},
      {"width", cmd_width},
      {"kappa", cmd_kappa},
      {"alexander", cmd_alexander},
      {"det", cmd_det},
      {"semigroup", cmd_semigroup},
      {"validate", cmd_validate},
      {"selftest", cmd_selftest}};
  const std::map<std::string, std::string> help = {
      {"kh", "reduced Khovanov homology table"},
      {"width", "Khovanov width of a diagram, a filling, or every filling in a range"},
      {"kappa", "transition N and the kappa table of a tangle family"},
      {"alexander", "symmetrised Alexander polynomial of a knot"},
      {"det", "determinant via a Goeritz matrix"},
      {"semigroup", "formal semigroup of an L-space-form Alexander polynomial"},
      {"validate", "check the filling conventions of a template"},
      {"selftest", "check every built-in catalog fixture"}};
  for (auto& [name, fn] : cmds) app.add_subcommand(name, help.at(name))->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    for (auto& [name, fn] : cmds)
      if (app.got_subcommand(name)) fn(f);
  } catch (const CheckFailed& c) {
    return c.code;
  } catch (const ParseError& e) {
    std::cerr << "kf: " << e.what() << "\n";
    return 2;
  } catch (const RangeError& e) {
    std::cerr << "kf: " << e.what() << "\nkf: try --range with a wider interval\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "kf: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
