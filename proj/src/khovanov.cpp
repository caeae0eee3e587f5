#include "kf/khovanov.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "kf/parallel.hpp"

namespace kf {

int KhTable::total_dim() const {
  int t = 0;
  for (auto& [g, n] : entries) t += n;
  return t;
}

int KhTable::dim(int h, int q) const {
  auto it = entries.find({h, q});
  return it == entries.end() ? 0 : it->second;
}

namespace {

struct VertexCircles {
  int k = 0;         // circles including the basepoint circle
  int base = 0;      // basepoint circle id
  int arc_classes = 0;
  std::vector<uint8_t> of;   // dense arc -> circle id
  std::vector<int> rep;      // circle id -> representative dense arc, -1 for free loops
};

// Bit position of a non-basepoint circle in a generator label.
inline int bitpos(const VertexCircles& vc, int c) { return c < vc.base ? c : c - 1; }

}  // namespace

GradedComplexF2 build_reduced_complex(const PlanarDiagram& d, const KhOptions& opt) {
  const int n = d.crossing_count();
  if (n > 30) throw ResourceError("full cube over " + std::to_string(n) + " crossings is out of reach");
  const int np = d.n_plus(), nm = d.n_minus(), f = d.free_loops();
  GradedComplexF2 c;
  if (n == 0) {
    // one free loop carries the basepoint
    for (int l = 0; l < (1 << (f - 1)); ++l) c.gens[{0, (f - 1) - 2 * std::popcount(static_cast<unsigned>(l))}]++;
    return c;
  }
  if (d.basepoint() == 0) throw Error("diagram has no basepoint");
  std::vector<int> labels = d.arc_labels();
  const int m = static_cast<int>(labels.size());
  auto id = [&](int a) { return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), a) - labels.begin()); };
  std::vector<std::array<int, 4>> X(n);
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < 4; ++s) X[i][s] = id(d.pd()[i][s]);
  const int bp = id(d.basepoint());
  const uint32_t V = 1u << n;

  std::vector<VertexCircles> vc(V);
  parallel_for(static_cast<int>(V), opt.threads, [&](int vi) {
    uint32_t v = static_cast<uint32_t>(vi);
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    auto find = [&](int x) {
      while (p[x] != x) x = p[x] = p[p[x]];
      return x;
    };
    auto unite = [&](int a, int b) {
      a = find(a), b = find(b);
      if (a != b) p[std::max(a, b)] = std::min(a, b);
    };
    for (int i = 0; i < n; ++i) {
      if (!((v >> i) & 1)) {
        unite(X[i][0], X[i][1]);
        unite(X[i][2], X[i][3]);
      } else {
        unite(X[i][0], X[i][3]);
        unite(X[i][1], X[i][2]);
      }
    }
    VertexCircles& C = vc[v];
    C.of.assign(m, 0);
    std::vector<int> root_id(m, -1);
    int k = 0;
    for (int a = 0; a < m; ++a) {
      int r = find(a);
      if (root_id[r] < 0) {
        root_id[r] = k++;
        C.rep.push_back(a);
      }
      C.of[a] = static_cast<uint8_t>(root_id[r]);
    }
    C.arc_classes = k;
    for (int l = 0; l < f; ++l) C.rep.push_back(-1);
    C.k = k + f;
    C.base = C.of[bp];
  });

  long long total = 0;
  for (auto& C : vc) total += 1LL << (C.k - 1);
  if (total > opt.max_generators)
    throw ResourceError("cube complex needs " + std::to_string(total) + " generators; budget is " +
                        std::to_string(opt.max_generators));

  // Generator indices, assigned in Gray-code vertex order.
  std::vector<std::vector<uint32_t>> idx(V);
  std::map<Bigrade, int> counter;
  auto hq = [&](uint32_t v, uint32_t l) {
    int r = std::popcount(v);
    return Bigrade{r - nm, (vc[v].k - 1) - 2 * std::popcount(l) + r + np - 2 * nm};
  };
  for (uint32_t i = 0; i < V; ++i) {
    uint32_t v = i ^ (i >> 1);
    uint32_t L = 1u << (vc[v].k - 1);
    idx[v].resize(L);
    for (uint32_t l = 0; l < L; ++l) idx[v][l] = static_cast<uint32_t>(counter[hq(v, l)]++);
  }
  c.gens = counter;
  for (auto& [g, cnt] : counter)
    if (counter.count({g.h + 1, g.q})) {
      SparseBlock& b = c.d[g];
      b.sources = cnt;
      b.targets = counter.at({g.h + 1, g.q});
      b.rows.resize(cnt);
    }

  parallel_for(static_cast<int>(V), opt.threads, [&](int vi) {
    uint32_t v = static_cast<uint32_t>(vi);
    const VertexCircles& A = vc[v];
    uint32_t L = 1u << (A.k - 1);
    std::vector<int> lab(A.k);
    for (int ci = 0; ci < n; ++ci) {
      if ((v >> ci) & 1) continue;
      uint32_t w = v | (1u << ci);
      const VertexCircles& W = vc[w];
      int a1 = A.of[X[ci][0]], a2 = A.of[X[ci][2]];
      int w1 = W.of[X[ci][0]], w2 = W.of[X[ci][1]];
      // image of each uninvolved circle of v in w
      std::vector<int> img(A.k, -1);
      for (int cc = 0; cc < A.k; ++cc) {
        if (cc == a1 || cc == a2) continue;
        img[cc] = A.rep[cc] >= 0 ? W.of[A.rep[cc]] : cc - A.arc_classes + W.arc_classes;
      }
      for (uint32_t l = 0; l < L; ++l) {
        for (int cc = 0; cc < A.k; ++cc) lab[cc] = cc == A.base ? 1 : (l >> bitpos(A, cc)) & 1;
        uint32_t rest = 0;
        for (int cc = 0; cc < A.k; ++cc)
          if (img[cc] >= 0 && img[cc] != W.base && lab[cc]) rest |= 1u << bitpos(W, img[cc]);
        auto put = [&](int circle, int x, uint32_t& t) {
          if (circle != W.base && x) t |= 1u << bitpos(W, circle);
        };
        Bigrade src = hq(v, l);
        auto blk = c.d.find(src);
        std::vector<uint32_t> dummy;
        auto& row = blk == c.d.end() ? dummy : blk->second.rows[idx[v][l]];
        if (a1 != a2) {
          if (lab[a1] && lab[a2]) continue;
          uint32_t t = rest;
          put(w1, lab[a1] | lab[a2], t);
          row.push_back(idx[w][t]);
        } else if (lab[a1]) {
          uint32_t t = rest;
          put(w1, 1, t);
          put(w2, 1, t);
          row.push_back(idx[w][t]);
        } else {
          uint32_t t1 = rest, t2 = rest;
          put(w1, 1, t1);
          put(w2, 1, t2);
          row.push_back(idx[w][t1]);
          row.push_back(idx[w][t2]);
        }
        if (!dummy.empty()) throw Error("cube differential leaves its bigrading");
      }
    }
  });
  for (auto& [g, b] : c.d)
    for (auto& r : b.rows) std::sort(r.begin(), r.end());
#ifndef NDEBUG
  if (total <= 20000) c.check();
#endif
  return c;
}

KhTable kh_table(const PlanarDiagram& d, const KhOptions& opt) {
  bool cube = opt.method == KhMethod::Cube ||
              (opt.method == KhMethod::Auto && d.crossing_count() <= opt.cube_max_crossings);
  if (!cube) return kh_table_scan(d, opt);
  KhTable t;
  t.link = d.name();
  HomologyOptions ho;
  ho.cancel = opt.cancel;
  ho.threads = opt.threads;
  t.entries = homology_dims(build_reduced_complex(d, opt), ho);
  return t;
}

int delta_min(const KhTable& t) {
  if (t.entries.empty()) throw Error("empty table has no width");
  int m = INT32_MAX;
  for (auto& [g, n] : t.entries) m = std::min(m, g.q - 2 * g.h);
  return m;
}

int delta_max(const KhTable& t) {
  if (t.entries.empty()) throw Error("empty table has no width");
  int m = INT32_MIN;
  for (auto& [g, n] : t.entries) m = std::max(m, g.q - 2 * g.h);
  return m;
}

int width(const KhTable& t) { return (delta_max(t) - delta_min(t)) / 2 + 1; }

LaurentPoly jones_from_kh(const KhTable& t) {
  LaurentPoly p;
  for (auto& [g, n] : t.entries) p.add(g.q, (g.h % 2 == 0) ? n : -n);
  return p;
}

KhTable mirror_table(const KhTable& t) {
  KhTable m;
  m.link = t.link;
  for (auto& [g, n] : t.entries) m.entries[{-g.h, -g.q}] = n;
  return m;
}

LaurentPoly kauffman_jones(const PlanarDiagram& d, int max_crossings) {
  const int n = d.crossing_count();
  if (n > max_crossings)
    throw ResourceError("state sum over " + std::to_string(n) + " crossings exceeds the limit of " +
                        std::to_string(max_crossings));
  // bracket[(a-b, loops)] counts states
  std::map<std::pair<int, int>, long long> states;
  std::vector<int> labels = d.arc_labels();
  const int m = static_cast<int>(labels.size());
  auto id = [&](int a) { return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), a) - labels.begin()); };
  for (uint32_t v = 0; v < (1u << n); ++v) {
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    auto find = [&](int x) {
      while (p[x] != x) x = p[x] = p[p[x]];
      return x;
    };
    int loops = m;
    auto unite = [&](int a, int b) {
      a = find(a), b = find(b);
      if (a != b) {
        p[a] = b;
        --loops;
      }
    };
    int na = 0;
    for (int i = 0; i < n; ++i) {
      const Tuple& x = d.pd()[i];
      if (!((v >> i) & 1)) {  // A-smoothing
        ++na;
        unite(id(x[0]), id(x[1]));
        unite(id(x[2]), id(x[3]));
      } else {
        unite(id(x[0]), id(x[3]));
        unite(id(x[1]), id(x[2]));
      }
    }
    states[{na - (n - na), loops + d.free_loops()}]++;
  }
  // delta = -A^2 - A^-2, bracket normalised so one loop gives 1
  LaurentPoly delta;
  delta.add(2, -1);
  delta.add(-2, -1);
  LaurentPoly bracket;
  for (auto& [key, cnt] : states) {
    LaurentPoly term = LaurentPoly::monomial(key.first, cnt);
    for (int i = 1; i < key.second; ++i) term = term * delta;
    bracket = bracket + term;
  }
  const int w = d.writhe();
  LaurentPoly v = bracket * LaurentPoly::monomial(-3 * w, (w % 2 == 0) ? 1 : -1);
  // A^k = t^{-k/4}, t^{1/2} = -q  =>  A^k -> (-1)^{k/2} q^{-k/2}
  LaurentPoly out;
  for (auto [k, c] : v.terms()) {
    if (k % 2 != 0) throw Error("odd bracket exponent; diagram data inconsistent");
    int h = k / 2;
    out.add(-h, (h % 2 == 0) ? c : -c);
  }
  return out;
}

}  // namespace kf
