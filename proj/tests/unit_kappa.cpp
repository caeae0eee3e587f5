#include "doctest.h"
#include "kf/kappa.hpp"
#include "kf/lspace.hpp"

using namespace kf;

TEST_CASE("trivial tangle family is the (2,n) torus family") {
  auto f = compute_family(trivial_tangle(), -6, 6);
  for (int n = -6; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(f.tables.at(n).total_dim() == (n == 0 ? 2 : std::abs(n)));
    CHECK(determinant(fill(trivial_tangle(), n)) == std::abs(n));
    // (2,n) torus links are thin; the split unlink is not
    CHECK(width(f.tables.at(n)) == (n == 0 ? 2 : 1));
  }
  auto steps = classify_steps(f);
  CHECK(steps.size() == 12);
  for (auto& s : steps) {
    CAPTURE(s.n);
    int diff = f.tables.at(s.n).total_dim() - f.tables.at(s.n - 1).total_dim();
    CHECK((diff == 1) == (s.kind == StepKind::Surjective));
  }
}

TEST_CASE("transition and kappa of the trivial tangle") {
  auto f = compute_family(trivial_tangle(), -6, 6);
  auto p = find_transition(f);
  CHECK(p.N == 0);
  CHECK(p.margin_below == 5);
  CHECK(p.margin_above == 5);
  for (auto& s : p.evidence) {
    if (s.n < p.N) CHECK(s.kind == StepKind::Injective);
    if (s.n > p.N + 1) CHECK(s.kind == StepKind::Surjective);
  }
  // The unknot generator of T(1) lands on the kernel of f_0: the composite vanishes.
  auto k = compute_kappa(f, p);
  CHECK(k.total_dim() == 0);
  CHECK_THROWS(kappa_width(k));
}

TEST_CASE("stability under enlarging the range") {
  auto small = compute_family(trivial_tangle(), -5, 5);
  auto large = compute_family(trivial_tangle(), -8, 9);
  auto ps = find_transition(small), pl = find_transition(large);
  CHECK(ps.N == pl.N);
  CHECK(compute_kappa(small, ps).entries == compute_kappa(large, pl).entries);
}

TEST_CASE("extending a family reuses tables and keeps offsets") {
  auto f = compute_family(trivial_tangle(), -2, 2);
  auto before = f.offsets;
  extend_family(f, -4, 4);
  CHECK(f.lo == -4);
  CHECK(f.hi == 4);
  for (auto& [n, s] : before) CHECK(f.offsets.at(n) == s);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(compute_family(trivial_tangle(), 3, 2), Error);
  // only injective steps below the transition
  auto f = compute_family(trivial_tangle(), -6, -2);
  CHECK_THROWS_AS(find_transition(f), RangeError);
  KappaOptions o;
  o.has_range = true;
  o.lo = -30;
  o.hi = -20;
  o.max_half_width = 8;
  CHECK_THROWS_AS(run_kappa(trivial_tangle(), o), RangeError);
}

TEST_CASE("kappa width") {
  KappaTable k;
  k.entries[{0, 3}] = 1;
  k.entries[{1, 5}] = 2;
  CHECK(kappa_width(k) == 1);
  k.entries[{2, 5}] = 1;
  CHECK(kappa_width(k) == 2);
}

TEST_CASE("run_kappa widens until the margins are met") {
  KappaOptions o;
  o.has_range = true;
  o.lo = 3;
  o.hi = 5;
  auto r = run_kappa(trivial_tangle(), o);
  CHECK(r.profile.N == 0);
  CHECK(r.profile.margin_below >= 4);
  CHECK(r.profile.margin_above >= 4);
}
