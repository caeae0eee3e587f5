#include <random>

#include "doctest.h"
#include "kf/catalog.hpp"
#include "kf/khovanov.hpp"
#include "kf/lspace.hpp"
#include "kf/validate.hpp"

using namespace kf;

namespace {

PlanarDiagram braid(const std::string& s) { return braid_closure(parse_braid(s)); }

PlanarDiagram pd_json(const std::string& text) { return diagram_from_json(parse_json(text)); }

}  // namespace

TEST_CASE("PD parsing") {
  auto hopf = pd_json(R"({"pd": [[1,3,2,4],[3,1,4,2]]})");
  CHECK(hopf.crossing_count() == 2);
  CHECK(hopf.component_count() == 2);
  CHECK(hopf.n_plus() + hopf.n_minus() == 2);

  auto u = pd_json(R"({"pd": [], "unknot": true})");
  CHECK(u.crossing_count() == 0);
  CHECK(u.component_count() == 1);

  CHECK_THROWS_AS(pd_json(R"({"pd": [[1,2,3]]})"), ParseError);
  CHECK_THROWS_AS(pd_json(R"({"pd": []})"), ParseError);
  CHECK_THROWS_AS(pd_json(R"({"pd": [[1,2,3,4],[1,2,3,5]]})"), ParseError);
  CHECK_THROWS_AS(pd_json(R"({"format": "kf-0", "pd": [[1,3,2,4],[3,1,4,2]]})"), ParseError);
}

TEST_CASE("PD JSON round trip keeps the diagram") {
  for (const char* w : {"1,1,1", "1,-2,1,-2", "1,1", "(2,1,3,2)^3,1,2,3,3,2"}) {
    auto d = braid(w);
    auto back = diagram_from_json(diagram_to_json(d));
    CHECK(back == d);
    CHECK(back.signs() == d.signs());
  }
}

TEST_CASE("braid closures") {
  auto t = braid("1,1,1");
  CHECK(t.crossing_count() == 3);
  CHECK(t.component_count() == 1);
  CHECK(t.n_plus() == 3);

  auto k1 = braid("(2,1,3,2)^3,1,2,3,3,2");
  CHECK(parse_braid("(2,1,3,2)^3,1,2,3,3,2").strands == 4);
  CHECK(k1.crossing_count() == 17);
  CHECK(k1.component_count() == 1);

  BraidWord empty{1, {}};
  auto u = braid_closure(empty);
  CHECK(u.crossing_count() == 0);
  CHECK(u.component_count() == 1);

  CHECK_THROWS_AS(parse_braid("1,,2"), ParseError);
  CHECK_THROWS_AS(parse_braid("0"), ParseError);
}

TEST_CASE("mirror") {
  auto t = braid("1,1,1");
  auto m = mirror(t);
  CHECK(m.n_minus() == 3);
  CHECK(m.n_plus() == 0);
  CHECK(mirror(m) == t);
  CHECK(kh_table(m) == mirror_table(kh_table(t)));
}

TEST_CASE("resolutions of the trefoil and of a kink") {
  auto t = braid("1,1,1");
  CHECK(smoothing_circles(t, {0, 0, 0}).count == 2);
  CHECK(smoothing_circles(t, {1, 1, 1}).count == 3);

  auto kink = braid_closure(BraidWord{2, {1}});
  CHECK(kink.component_count() == 1);
  int a = resolve_crossing(kink, 0, 0).component_count();
  int b = resolve_crossing(kink, 0, 1).component_count();
  CHECK(std::min(a, b) == 1);
  CHECK(std::max(a, b) == 2);
  CHECK(resolve_crossing(kink, 0, 0).crossing_count() == 0);
  CHECK_THROWS(resolve_crossing(kink, 1, 0));
}

TEST_CASE("smoothing circle counts ignore arc relabelling") {
  std::mt19937 rng(3);
  auto d = braid("1,-2,1,2,2,-1,2");
  auto r = d.relabeled();
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<int> v(d.crossing_count());
    for (auto& x : v) x = rng() % 2;
    CHECK(smoothing_circles(d, v).count == smoothing_circles(r, v).count);
  }
}

TEST_CASE("consecutive fillings differ by one crossing and resolve into each other") {
  const auto& cat = builtin_catalog();
  for (auto name : {"trivial", "T1"}) {
    auto it = std::find_if(cat.begin(), cat.end(), [&](auto& e) { return e.name == name; });
    REQUIRE(it != cat.end());
    const TangleTemplate& t = it->tmpl->tmpl;
    const int base = base_crossing_count(t);
    for (int n = t.twist_offset + 1; n <= t.twist_offset + 4; ++n) {
      auto big = fill(t, n), small = fill(t, n - 1);
      CHECK(big.crossing_count() == small.crossing_count() + 1);
      bool found = false;
      for (int kind : {0, 1}) {
        auto r = resolve_crossing(big, base, kind);
        if (r.relabeled().shape_key() == small.relabeled().shape_key()) found = true;
      }
      CHECK(found);
      CHECK(kh_table(big).total_dim() - kh_table(small).total_dim() != 0);
    }
  }
}

TEST_CASE("rational fillings reproduce integer fillings") {
  auto t = trivial_tangle();
  for (int n = -3; n <= 3; ++n) CHECK(fill(t, RationalSlope(n, 1)) == fill(t, n));
  CHECK(fill(t, RationalSlope(3, 2)).crossing_count() == 3);
  CHECK(determinant(fill(t, RationalSlope(5, 2))) == 5);
  CHECK(determinant(fill(t, RationalSlope(-7, 3))) == 7);
}

TEST_CASE("slope parsing") {
  CHECK(parse_slope("19").p == 19);
  CHECK(parse_slope("-3/2").p == -3);
  CHECK(parse_slope("6/4").q == 2);
  CHECK(parse_slope("inf").is_infinity());
  CHECK_THROWS_AS(parse_slope("0/0"), Error);
  CHECK_THROWS_AS(parse_slope("x"), ParseError);
}

TEST_CASE("template validation") {
  auto ok = validate_template(trivial_tangle());
  CHECK(ok.ok());
  CHECK(ok.checks.size() == 6);

  // ends swapped so the 0-filling closes to one circle
  TangleTemplate bad = trivial_tangle();
  bad.ends = {{"NW", 1}, {"SW", 1}, {"NE", 2}, {"SE", 2}};
  auto r = validate_template(bad);
  CHECK_FALSE(r.ok());
  bool two_component_failed = false;
  for (auto& c : r.checks)
    if (c.name == "T(0) has 2 components") two_component_failed = !c.pass;
  CHECK(two_component_failed);

  TangleTemplate broken = trivial_tangle();
  broken.ends.erase("SE");
  auto s = validate_template(broken);
  CHECK_FALSE(s.ok());
  CHECK(s.checks.size() == 1);
}
