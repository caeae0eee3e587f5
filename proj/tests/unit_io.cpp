#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "kf/catalog.hpp"

using namespace kf;

TEST_CASE("Kh table JSON round trip") {
  KhTable t = kh_table(braid_closure(parse_braid("1,-2,1,-2")));
  Json j = kh_to_json(t);
  CHECK(j["format"] == "kf-1");
  CHECK(j["width"] == 1);
  CHECK(kh_from_json(parse_json(j.dump())) == t);
}

TEST_CASE("kappa table JSON round trip") {
  KappaTable k;
  k.tmpl = "x";
  k.N = 4;
  k.lo = -1, k.hi = 9;
  k.entries[{-2, 13}] = 3;
  k.entries[{0, 15}] = 1;
  auto back = kappa_from_json(parse_json(kappa_to_json(k).dump()));
  CHECK(back.entries == k.entries);
  CHECK(back.N == 4);
  CHECK(back.lo == -1);
  CHECK(back.hi == 9);
}

TEST_CASE("template JSON round trip") {
  for (auto& e : builtin_catalog()) {
    if (!e.tmpl) continue;
    CAPTURE(e.name);
    Json j = template_to_json(*e.tmpl);
    TemplateSpec back = template_from_json(parse_json(j.dump()));
    CHECK(back.mirror == e.tmpl->mirror);
    CHECK(back.tmpl.twist_offset == e.tmpl->tmpl.twist_offset);
    for (int n : {-1, 0, 3}) CHECK(fill(back.tmpl, n) == fill(e.tmpl->tmpl, n));
  }
  CHECK_THROWS_AS(template_from_json(parse_json(R"({"name":"x","pd":[],"ends":{"NW":1,"NE":1,"SE":2}})")),
                  ParseError);
  CHECK_THROWS_AS(
      template_from_json(parse_json(
          R"({"name":"x","pd":[],"ends":{"NW":1,"NE":1,"SE":2,"SW":2},"twist_site":["NW","SW"]})")),
      ParseError);
}

TEST_CASE("grids") {
  std::map<Bigrade, int> e{{{-1, 15}, 2}, {{0, 15}, 1}};
  std::string text = grid_text(e);
  CHECK(text.find("d=17") != std::string::npos);
  CHECK(text.find("d=15") != std::string::npos);
  std::string tex = grid_latex(e);
  CHECK(tex.find("\\begin{tabular}") == 0);
  CHECK(tex.find("$2$") != std::string::npos);
}

TEST_CASE("catalog lookups") {
  CHECK(find_catalog_entry("K1").knot_diagram().crossing_count() == 17);
  CHECK(find_catalog_entry("T1").tmpl.has_value());
  CHECK_THROWS_AS(find_catalog_entry("no-such-knot"), Error);
  for (auto& e : builtin_catalog()) {
    CAPTURE(e.name);
    CHECK_FALSE(e.fixtures.empty());
    for (auto& f : e.fixtures) CHECK((f.source == "published" || f.source == "derived" || f.source == "trivial"));
  }
}

TEST_CASE("external catalog directory") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "kf_catalog_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "links.txt") << "# name and PD code\n"
                                      "L2a1 PD[X[1,3,2,4], X[3,1,4,2]]\n"
                                      "K3a1 [[1,5,2,4],[3,1,4,6],[5,3,6,2]]\n";
  std::ofstream(dir / "more.json") << R"({"format":"kf-1","entries":[{"name":"tw","word":"1,-2,1,-2"}]})";
  auto entries = load_catalog_dir(dir.string());
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].name == "L2a1");
  CHECK(entries[0].knot_diagram().component_count() == 2);
  CHECK(kh_table(entries[1].knot_diagram()).total_dim() == 3);
  setenv("KF_CATALOG_DIR", dir.c_str(), 1);
  CHECK(find_catalog_entry("tw").knot_diagram().crossing_count() == 4);
  unsetenv("KF_CATALOG_DIR");
  fs::remove_all(dir);
}
