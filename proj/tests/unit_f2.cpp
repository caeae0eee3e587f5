#include <random>

#include "doctest.h"
#include "kf/f2.hpp"

using namespace kf;

namespace {

using Dense = std::vector<std::vector<int>>;

// Textbook elimination on plain int rows.
int dense_rank(Dense a) {
  int r = 0;
  const int rows = static_cast<int>(a.size()), cols = rows ? static_cast<int>(a[0].size()) : 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && !a[p][c]) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (int i = 0; i < rows; ++i)
      if (i != r && a[i][c])
        for (int j = 0; j < cols; ++j) a[i][j] ^= a[r][j];
    ++r;
  }
  return r;
}

F2Matrix to_matrix(const Dense& a, int cols) {
  F2Matrix m(static_cast<int>(a.size()), cols);
  for (size_t i = 0; i < a.size(); ++i)
    for (int j = 0; j < cols; ++j)
      if (a[i][j]) m.set(static_cast<int>(i), j);
  return m;
}

// Random complex C^0 -> C^1 -> C^2 in one q-degree built as d1 = A, d0 = B with A*B = 0.
GradedComplexF2 random_complex(std::mt19937& rng, int n0, int n1, int n2, Dense& d0, Dense& d1) {
  // d1 kills a random subspace K of C^1; d0 maps into K.
  int k = n1 ? static_cast<int>(rng() % (n1 + 1)) : 0;
  d1.assign(n2, std::vector<int>(n1, 0));
  d0.assign(n1, std::vector<int>(n0, 0));
  // basis change: C^1 = K (first k coords) + rest, then scramble by a random invertible matrix
  for (int i = 0; i < n2; ++i)
    for (int j = k; j < n1; ++j) d1[i][j] = rng() % 2;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n0; ++j) d0[i][j] = rng() % 2;
  // elementary column ops on d1 and matching row ops on d0 keep d1*d0 = 0
  for (int t = 0; t < 3 * n1; ++t) {
    if (n1 < 2) break;
    int a = static_cast<int>(rng() % n1), b = static_cast<int>(rng() % n1);
    if (a == b) continue;
    // new basis e_b' = e_b + e_a: column b of d1 += column a; row a of d0 -= row b
    for (int i = 0; i < n2; ++i) d1[i][b] ^= d1[i][a];
    for (int j = 0; j < n0; ++j) d0[a][j] ^= d0[b][j];
  }
  GradedComplexF2 c;
  c.gens[{0, 0}] = n0;
  c.gens[{1, 0}] = n1;
  c.gens[{2, 0}] = n2;
  auto block = [](const Dense& m, int src, int tgt) {
    SparseBlock b;
    b.sources = src;
    b.targets = tgt;
    b.rows.resize(src);
    for (int s = 0; s < src; ++s)
      for (int t = 0; t < tgt; ++t)
        if (m[t][s]) b.rows[s].push_back(static_cast<uint32_t>(t));
    return b;
  };
  c.d[{0, 0}] = block(d0, n0, n1);
  c.d[{1, 0}] = block(d1, n1, n2);
  return c;
}

}  // namespace

TEST_CASE("rank of small matrices") {
  CHECK(rank(F2Matrix::identity(5)) == 5);
  CHECK(rank(F2Matrix(4, 7)) == 0);
  F2Matrix m(2, 2);
  m.set(0, 0), m.set(0, 1), m.set(1, 0), m.set(1, 1);
  CHECK(rank(m) == 1);
}

TEST_CASE("rank agrees with a dense oracle and with the transpose") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int r = 1 + static_cast<int>(rng() % 90), c = 1 + static_cast<int>(rng() % 150);
    int density = 1 + static_cast<int>(rng() % 4);
    Dense a(r, std::vector<int>(c));
    for (auto& row : a)
      for (auto& x : row) x = rng() % density == 0;
    F2Matrix m = to_matrix(a, c);
    int want = dense_rank(a);
    CHECK(rank(m) == want);
    CHECK(rank(m.transpose()) == want);
    std::shuffle(a.begin(), a.end(), rng);
    CHECK(rank(to_matrix(a, c)) == want);
  }
}

TEST_CASE("rank leaves its input unchanged") {
  F2Matrix m(3, 70);
  m.set(0, 1), m.set(1, 1), m.set(2, 69);
  F2Matrix copy = m;
  (void)rank(m);
  CHECK(m == copy);
}

TEST_CASE("homology of trivial complexes") {
  GradedComplexF2 c;
  c.gens[{0, 1}] = 3;
  c.gens[{1, 1}] = 2;
  auto h = homology_dims(c);
  CHECK(h[Bigrade{0, 1}] == 3);
  CHECK(h[Bigrade{1, 1}] == 2);

  GradedComplexF2 iso;
  iso.gens[{0, 0}] = 1;
  iso.gens[{1, 0}] = 1;
  iso.d[{0, 0}] = SparseBlock{1, 1, {{0}}};
  auto z = homology_dims(iso);
  int total = 0;
  for (auto& [g, v] : z) total += v;
  CHECK(total == 0);
}

TEST_CASE("homology of random complexes matches rank-nullity and survives cancellation") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    int n0 = static_cast<int>(rng() % 8), n1 = static_cast<int>(rng() % 8), n2 = 20 - n0 - n1;
    Dense d0, d1;
    GradedComplexF2 c = random_complex(rng, n0, n1, n2, d0, d1);
    c.check();
    int r0 = n0 && n1 ? dense_rank(d0) : 0, r1 = n1 && n2 ? dense_rank(d1) : 0;
    std::map<Bigrade, int> want;
    if (n0 - r0) want[{0, 0}] = n0 - r0;
    if (n1 - r0 - r1) want[{1, 0}] = n1 - r0 - r1;
    if (n2 - r1) want[{2, 0}] = n2 - r1;
    auto strip = [](std::map<Bigrade, int> m) {
      std::erase_if(m, [](auto& kv) { return kv.second == 0; });
      return m;
    };
    CHECK(strip(homology_dims(c, {.cancel = false, .threads = 1})) == want);
    CHECK(strip(homology_dims(c, {.cancel = true, .threads = 3})) == want);
    CHECK(strip(homology_dims(cancel_units(c))) == want);
    // Euler characteristic per q
    CHECK(n0 - n1 + n2 == want[{0, 0}] - want[{1, 0}] + want[{2, 0}]);
  }
}
