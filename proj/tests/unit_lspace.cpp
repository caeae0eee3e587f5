#include <random>

#include "doctest.h"
#include "kf/lspace.hpp"

using namespace kf;

namespace {

PlanarDiagram braid(const std::string& s) { return braid_closure(parse_braid(s)); }

LaurentPoly poly(std::initializer_list<std::pair<int, long long>> terms) {
  LaurentPoly p;
  for (auto [e, c] : terms) p.add(e, c);
  return p;
}

std::vector<int> members_below(const FormalSemigroup& s, int bound) {
  std::vector<int> out;
  for (int k = 0; k <= bound; ++k)
    if (s.contains(k)) out.push_back(k);
  return out;
}

}  // namespace

TEST_CASE("Alexander polynomials") {
  CHECK(alexander(PlanarDiagram()).poly == poly({{0, 1}}));
  CHECK(alexander(braid("1,1,1")).poly == poly({{-1, 1}, {0, -1}, {1, 1}}));
  CHECK(alexander(braid("-1,-1,-1")).poly == poly({{-1, 1}, {0, -1}, {1, 1}}));
  CHECK(alexander(braid("1,-2,1,-2")).poly == poly({{-1, -1}, {0, 3}, {1, -1}}));
  CHECK(alexander(braid("1,2,1,2,1,2,1,2")).poly == poly({{-3, 1}, {-2, -1}, {0, 1}, {2, -1}, {3, 1}}));
  CHECK_THROWS(alexander(braid("1,1")));
}

TEST_CASE("determinants") {
  CHECK(determinant(PlanarDiagram()) == 1);
  CHECK(determinant(PlanarDiagram::unlink(2)) == 0);
  CHECK(determinant(braid("1,1,1")) == 3);
  CHECK(determinant(braid("1,-2,1,-2")) == 5);
  CHECK(determinant(braid("1,1")) == 2);
  CHECK(determinant(braid("1,1,1,1")) == 4);
  CHECK(determinant(braid("1,-1")) == 0);
}

TEST_CASE("determinant equals |Alexander(-1)| on random knots") {
  std::mt19937 rng(17);
  int knots = 0;
  for (int trial = 0; knots < 40 && trial < 400; ++trial) {
    int strands = 2 + static_cast<int>(rng() % 3);
    BraidWord w{strands, {}};
    int len = 3 + static_cast<int>(rng() % 12);
    for (int i = 0; i < len; ++i) {
      int g = 1 + static_cast<int>(rng() % (strands - 1));
      w.letters.push_back(rng() % 2 ? g : -g);
    }
    auto d = braid_closure(w);
    if (d.component_count() != 1) continue;
    ++knots;
    auto a = alexander(d);
    CAPTURE(format_braid(w));
    CHECK(determinant(d) == std::llabs(a.at_minus_one()));
    CHECK(a.poly.eval(1) == 1);
    for (auto [e, c] : a.poly.terms()) CHECK(a.poly.coeff(-e) == c);
  }
  CHECK(knots == 40);
}

TEST_CASE("L-space form") {
  CHECK(is_lspace_form(alexander(braid("1,1,1"))));
  CHECK_FALSE(is_lspace_form(alexander(braid("1,-2,1,-2"))));
  CHECK(is_lspace_form(alexander(braid("1,2,1,2,1,2,1,2"))));
}

TEST_CASE("formal semigroups") {
  auto tre = formal_semigroup(alexander(braid("1,1,1")));
  CHECK(tre.threshold == 2);
  CHECK(members_below(tre, 6) == std::vector<int>{0, 2, 3, 4, 5, 6});
  CHECK(is_actual_semigroup(tre));

  auto t34 = formal_semigroup(alexander(braid("1,2,1,2,1,2,1,2")));
  CHECK(t34.elements_below() == std::vector<int>{0, 3, 4});
  CHECK(t34.threshold == 6);
  CHECK(is_actual_semigroup(t34));

  auto pretzel = alexander(braid("1,2,1,1,2,2,1,1,1,1,1,1"));
  REQUIRE(is_lspace_form(pretzel));
  auto p = formal_semigroup(pretzel);
  CHECK(p.elements_below() == std::vector<int>{0, 3, 5, 7, 8});
  CHECK(p.threshold == 10);
  CHECK_FALSE(is_actual_semigroup(p));

  CHECK_THROWS(formal_semigroup(alexander(braid("1,-2,1,-2"))));
}

TEST_CASE("interval extraction matches the power-series expansion") {
  for (const char* w : {"1,1,1", "1,1,1,1,1", "1,2,1,2,1,2,1,2", "1,2,1,1,2,2,1,1,1,1,1,1", "1,2,1,2,1,2,1,2,1,2",
                        "(2,1,3,2)^3,1,2,3,3,2", "(2,1,3,2)^3,-1,2,1,1,2"}) {
    CAPTURE(w);
    auto a = alexander(braid(w));
    REQUIRE(is_lspace_form(a));
    auto s = formal_semigroup(a);
    int bound = 2 * s.threshold + 5;
    CHECK(semigroup_series(a, bound) == members_below(s, bound));
  }
}
