#include "kf/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <regex>
#include <sstream>

namespace kf {

namespace {

DiagramOptions named(const std::string& n) {
  DiagramOptions o;
  o.name = n;
  return o;
}

Json kappa_entries(int h0, const std::vector<int>& top, const std::vector<std::pair<int, int>>& lower) {
  // top: dims of the delta = 17 row from h0; lower: (h, dim) on the delta = 15 row
  std::map<Bigrade, int> e;
  for (size_t i = 0; i < top.size(); ++i) {
    int h = h0 + static_cast<int>(i);
    e[{h, 17 + 2 * h}] += top[i];
  }
  for (auto [h, v] : lower) e[{h, 15 + 2 * h}] += v;
  return entries_to_json(e);
}

CatalogEntry braid_entry(const std::string& name, const std::string& word, const std::string& note) {
  CatalogEntry e;
  e.name = name;
  e.note = note;
  e.braid = parse_braid(word);
  return e;
}

std::vector<CatalogEntry> make_builtins() {
  std::vector<CatalogEntry> out;

  CatalogEntry unknot;
  unknot.name = "unknot";
  unknot.note = "crossingless unknot";
  unknot.diagram = PlanarDiagram::unlink(1);
  unknot.fixtures = {{"kh_entries", entries_to_json({{{0, 0}, 1}}), "trivial"},
                     {"det", 1, "trivial"},
                     {"alexander", poly_to_json(LaurentPoly::monomial(0)), "trivial"}};
  out.push_back(unknot);

  CatalogEntry unlink2;
  unlink2.name = "unlink2";
  unlink2.note = "two-component unlink";
  unlink2.diagram = PlanarDiagram::unlink(2);
  unlink2.fixtures = {{"kh_total", 2, "trivial"}, {"det", 0, "trivial"}, {"components", 2, "trivial"}};
  out.push_back(unlink2);

  CatalogEntry hopf;
  hopf.name = "hopf";
  hopf.note = "Hopf link, standard PD code";
  hopf.diagram = PlanarDiagram::from_tuples({{1, 3, 2, 4}, {3, 1, 4, 2}}, named("hopf"));
  hopf.fixtures = {{"components", 2, "derived"}, {"kh_total", 2, "derived"}, {"det", 2, "derived"}};
  out.push_back(hopf);

  auto trefoil = braid_entry("trefoil", "1,1,1", "right-handed trefoil");
  trefoil.fixtures = {{"kh_entries", entries_to_json({{{0, 2}, 1}, {{2, 6}, 1}, {{3, 8}, 1}}), "derived"},
                      {"width", 1, "derived"},
                      {"det", 3, "derived"},
                      {"alexander", poly_to_json(LaurentPoly::monomial(-1) - LaurentPoly::monomial(0) +
                                                 LaurentPoly::monomial(1)),
                       "derived"},
                      {"semigroup_elements", Json::array({0}), "derived"},
                      {"semigroup_threshold", 2, "derived"},
                      {"is_semigroup", true, "derived"}};
  out.push_back(trefoil);

  auto left = braid_entry("trefoil-left", "-1,-1,-1", "left-handed trefoil");
  left.fixtures = {{"kh_entries", entries_to_json({{{0, -2}, 1}, {{-2, -6}, 1}, {{-3, -8}, 1}}), "derived"},
                   {"det", 3, "derived"}};
  out.push_back(left);

  auto fig8 = braid_entry("fig8", "1,-2,1,-2", "figure-eight knot");
  fig8.fixtures = {{"kh_total", 5, "derived"},
                   {"width", 1, "derived"},
                   {"det", 5, "derived"},
                   {"lspace_form", false, "trivial"}};
  out.push_back(fig8);

  auto t34 = braid_entry("T34", "1,2,1,2,1,2,1,2", "(3,4) torus knot");
  t34.fixtures = {{"semigroup_elements", Json::array({0, 3, 4}), "derived"},
                  {"semigroup_threshold", 6, "derived"},
                  {"is_semigroup", true, "derived"}};
  out.push_back(t34);

  auto pretzel = braid_entry("P-2_3_7", "1,2,1,1,2,2,1,1,1,1,1,1", "(-2,3,7) pretzel knot as a 3-braid");
  pretzel.fixtures = {{"det", 1, "derived"},
                      {"semigroup_elements", Json::array({0, 3, 5, 7, 8}), "derived"},
                      {"semigroup_threshold", 10, "derived"},
                      {"is_semigroup", false, "derived"}};
  out.push_back(pretzel);

  TemplateSpec triv{trivial_tangle(), false};
  CatalogEntry trivial;
  trivial.name = "trivial";
  trivial.note = "two parallel strands; T(n) is the (2,n) torus link";
  trivial.tmpl = triv;
  trivial.fixtures = {{"validate", true, "trivial"},
                      {"det T(0)", 0, "trivial"},
                      {"det T(5)", 5, "derived"},
                      {"N", 0, "derived"},
                      {"kappa_total_dim", 0, "derived"}};
  out.push_back(trivial);

  // Quotient tangles of the strong inversions; the twist offset fixes the integer labelling.
  TemplateSpec t1{symmetric_quotient_template("T1", {2, 2, 1, 3, 2, 2, 1}, 2, 20), true};
  TemplateSpec t2{symmetric_quotient_template("T2", {2, 2, 1, 3, 2, 2, 1}, -2, 16), true};

  CatalogEntry e1;
  e1.name = "T1";
  e1.note = "quotient tangle of K1";
  e1.tmpl = t1;
  e1.mirror = true;
  e1.fixtures = {{"validate", true, "published"},
                 {"det T(0)", 0, "published"},
                 {"det T(inf)", 1, "published"},
                 {"det T(19)", 19, "derived"},
                 {"det T(20)", 20, "derived"}};
  out.push_back(e1);

  CatalogEntry e2;
  e2.name = "T2";
  e2.note = "quotient tangle of K2";
  e2.tmpl = t2;
  e2.mirror = true;
  e2.fixtures = {{"validate", true, "published"},
                 {"det T(0)", 0, "published"},
                 {"det T(inf)", 1, "published"},
                 {"det T(16)", 16, "derived"}};
  out.push_back(e2);

  auto k1 = braid_entry("K1", "(2,1,3,2)^3,1,2,3,3,2", "strongly invertible L-space knot K1 with its quotient tangle T1");
  k1.tmpl = t1;
  k1.mirror = true;
  k1.fixtures = {{"crossings", 17, "published"},
                 {"components", 1, "trivial"},
                 {"lspace_form", true, "published"},
                 {"is_semigroup", true, "published"},
                 {"N", 20, "published"},
                 {"kappa", kappa_entries(-9, {1, 2, 3, 4, 4, 4, 3, 2, 1}, {{-5, 1}, {-3, 1}, {-2, 1}, {0, 1}}),
                  "published"},
                 {"kappa_width", 2, "published"}};
  out.push_back(k1);

  auto k2 = braid_entry("K2", "(2,1,3,2)^3,-1,2,1,1,2", "strongly invertible L-space knot K2 with its quotient tangle T2");
  k2.tmpl = t2;
  k2.mirror = true;
  k2.fixtures = {{"crossings", 17, "published"},
                 {"components", 1, "trivial"},
                 {"lspace_form", true, "published"},
                 {"is_semigroup", true, "published"},
                 {"N", 16, "published"},
                 {"kappa",
                  kappa_entries(-6, {1, 2, 3, 4, 4, 4, 3, 2, 1},
                                {{-2, 1}, {-1, 1}, {0, 1}, {1, 2}, {2, 1}, {3, 1}, {4, 1}}),
                  "published"},
                 {"kappa_width", 2, "published"}};
  out.push_back(k2);
  return out;
}

std::vector<Tuple> scan_pd_text(const std::string& text) {
  static const std::regex quad(R"(\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\])");
  std::vector<Tuple> out;
  for (std::sregex_iterator it(text.begin(), text.end(), quad), end; it != end; ++it)
    out.push_back({std::stoi((*it)[1]), std::stoi((*it)[2]), std::stoi((*it)[3]), std::stoi((*it)[4])});
  return out;
}

}  // namespace

PlanarDiagram CatalogEntry::knot_diagram() const {
  PlanarDiagram d;
  if (braid)
    d = braid_closure(*braid);
  else if (diagram)
    d = *diagram;
  else
    throw Error("catalog entry '" + name + "' has no diagram; it is a template");
  if (mirror) d = d.mirrored();
  d.set_name(name);
  return d;
}

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> c = make_builtins();
  return c;
}

CatalogEntry catalog_entry_from_json(const Json& j) {
  CatalogEntry e;
  e.name = j.value("name", std::string());
  if (e.name.empty()) throw ParseError("catalog entry lacks a name");
  e.note = j.value("note", std::string());
  e.mirror = j.value("mirror", false);
  if (j.contains("ends")) {
    e.tmpl = template_from_json(j);
    e.mirror = e.tmpl->mirror;
  } else if (j.contains("word")) {
    if (j.at("word").is_string())
      e.braid = parse_braid(j.at("word").get<std::string>(), j.value("strands", 0));
    else
      e.braid = braid_from_json(j);
  } else if (j.contains("pd")) {
    e.diagram = diagram_from_json(j);
  } else {
    throw ParseError("catalog entry '" + e.name + "' has neither pd, word nor ends");
  }
  if (j.contains("fixtures"))
    for (const auto& f : j.at("fixtures"))
      e.fixtures.push_back({f.at("check").get<std::string>(), f.at("expected"), f.value("source", "derived")});
  return e;
}

std::vector<CatalogEntry> load_catalog_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<CatalogEntry> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error("catalog directory '" + dir + "' does not exist");
  std::vector<fs::path> files;
  for (auto& p : fs::directory_iterator(dir))
    if (p.is_regular_file()) files.push_back(p.path());
  std::sort(files.begin(), files.end());
  for (auto& path : files) {
    std::string text = read_text_file(path.string());
    if (path.extension() == ".json") {
      Json j = parse_json(text, path.string());
      if (j.contains("entries"))
        for (const auto& x : j.at("entries")) out.push_back(catalog_entry_from_json(x));
      else
        out.push_back(catalog_entry_from_json(j));
      continue;
    }
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      auto start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos || line[start] == '#') continue;
      auto split = line.find_first_of(" \t", start);
      if (split == std::string::npos) throw ParseError(path.string() + ": line lacks a PD code: " + line);
      CatalogEntry e;
      e.name = line.substr(start, split - start);
      auto tuples = scan_pd_text(line.substr(split));
      if (tuples.empty()) throw ParseError(path.string() + ": no crossings found for " + e.name);
      e.diagram = PlanarDiagram::from_tuples(std::move(tuples), named(e.name));
      out.push_back(std::move(e));
    }
  }
  return out;
}

CatalogEntry find_catalog_entry(const std::string& name) {
  for (auto& e : builtin_catalog())
    if (e.name == name) return e;
  if (const char* dir = std::getenv("KF_CATALOG_DIR"); dir && *dir)
    for (auto& e : load_catalog_dir(dir))
      if (e.name == name) return e;
  std::string names;
  for (auto& e : builtin_catalog()) names += (names.empty() ? "" : ", ") + e.name;
  throw Error("no catalog entry named '" + name + "' (built-in: " + names + "; set KF_CATALOG_DIR for more)");
}

}  // namespace kf
