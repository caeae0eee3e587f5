#include <random>

#include "doctest.h"
#include "kf/khovanov.hpp"

using namespace kf;

namespace {

PlanarDiagram braid(const std::string& s, int strands = 0) { return braid_closure(parse_braid(s, strands)); }

KhTable via(const PlanarDiagram& d, KhMethod m) {
  KhOptions o;
  o.method = m;
  return kh_table(d, o);
}

}  // namespace

TEST_CASE("unknot has Kh = F2 at (0,0)") {
  PlanarDiagram u;
  auto t = kh_table(u);
  CHECK(t.total_dim() == 1);
  CHECK(t.dim(0, 0) == 1);
}

TEST_CASE("right trefoil") {
  auto d = braid("1,1,1");
  for (auto m : {KhMethod::Cube, KhMethod::Scan}) {
    auto t = via(d, m);
    CHECK(t.total_dim() == 3);
    CHECK(width(t) == 1);
    CHECK(t.dim(0, 2) == 1);
    CHECK(t.dim(2, 6) == 1);
    CHECK(t.dim(3, 8) == 1);
  }
  CHECK(jones_from_kh(via(d, KhMethod::Cube)) == kauffman_jones(d));
}

TEST_CASE("figure eight") {
  auto d = braid("1,-2,1,-2");
  auto t = kh_table(d);
  CHECK(t.total_dim() == 5);
  CHECK(width(t) == 1);
  CHECK(via(d, KhMethod::Scan) == t);
}

TEST_CASE("cube and scan agree on random braids") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int strands = 2 + static_cast<int>(rng() % 3);
    int len = 2 + static_cast<int>(rng() % 8);
    BraidWord w{strands, {}};
    for (int i = 0; i < len; ++i) {
      int g = 1 + static_cast<int>(rng() % (strands - 1));
      w.letters.push_back(rng() % 2 ? g : -g);
    }
    auto d = braid_closure(w);
    auto c = via(d, KhMethod::Cube);
    CAPTURE(format_braid(w));
    CHECK(c == via(d, KhMethod::Scan));
    CHECK(jones_from_kh(c) == kauffman_jones(d));
  }
}

TEST_CASE("mirror rule on random braids") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    BraidWord w{3, {}};
    for (int i = 0; i < 7; ++i) w.letters.push_back((rng() % 2 ? 1 : -1) * (1 + static_cast<int>(rng() % 2)));
    auto d = braid_closure(w);
    CAPTURE(format_braid(w));
    CHECK(kh_table(mirror(d)) == mirror_table(kh_table(d)));
  }
}

TEST_CASE("PD and braid presentations agree") {
  auto pd = PlanarDiagram::from_tuples({{1, 5, 2, 4}, {3, 1, 4, 6}, {5, 3, 6, 2}});
  CHECK(pd.n_plus() == 3);
  CHECK(kh_table(pd) == kh_table(braid("1,1,1")));
  auto left = PlanarDiagram::from_tuples({{1, 4, 2, 5}, {3, 6, 4, 1}, {5, 2, 6, 3}});
  CHECK(kh_table(left) == kh_table(braid("-1,-1,-1")));
  auto fig8 = PlanarDiagram::from_tuples({{4, 2, 5, 1}, {8, 6, 1, 5}, {6, 3, 7, 4}, {2, 7, 3, 8}});
  CHECK(kh_table(fig8) == kh_table(braid("1,-2,1,-2")));
  CHECK(kh_table(braid("2,2,2,1", 3)) == kh_table(braid("1,1,1")));
}

TEST_CASE("Hopf link and unlinks") {
  auto hopf = PlanarDiagram::from_tuples({{1, 3, 2, 4}, {3, 1, 4, 2}});
  CHECK(kh_table(hopf).total_dim() == 2);
  CHECK(jones_from_kh(kh_table(hopf)) == kauffman_jones(hopf));
  auto u2 = PlanarDiagram::unlink(2);
  CHECK(kh_table(u2).total_dim() == 2);
  CHECK(jones_from_kh(kh_table(u2)) == kauffman_jones(u2));
}

TEST_CASE("generator budget is enforced") {
  KhOptions o;
  o.method = KhMethod::Cube;
  o.max_generators = 10;
  CHECK_THROWS_AS(kh_table(braid("1,-2,1,-2,1,-2"), o), ResourceError);
}
