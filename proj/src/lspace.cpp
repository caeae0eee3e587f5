#include "kf/lspace.hpp"

#include <algorithm>
#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <map>
#include <numeric>

namespace kf {

namespace mp = boost::multiprecision;
using BigInt = mp::cpp_int;
using BigRat = mp::cpp_rational;

namespace {

// Fraction-free elimination; the last pivot is the determinant.
BigInt bareiss(std::vector<std::vector<BigInt>> a) {
  const size_t n = a.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

struct Dense {
  std::vector<int> labels;
  int id(int a) const { return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), a) - labels.begin()); }
};

int find(std::vector<int>& p, int x) {
  while (p[x] != x) x = p[x] = p[p[x]];
  return x;
}

long long to_ll(const BigInt& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw ResourceError("integer result exceeds 64 bits");
  return static_cast<long long>(v);
}

}  // namespace

AlexanderPoly alexander(const PlanarDiagram& d) {
  if (d.crossing_count() == 0) {
    if (d.free_loops() != 1) throw Error("Alexander polynomial is only defined here for knots");
    return {LaurentPoly::monomial(0)};
  }
  if (d.component_count() != 1) throw Error("Alexander polynomial is only defined here for knots");
  const int n = d.crossing_count();
  Dense dn{d.arc_labels()};
  std::vector<int> p(dn.labels.size());
  std::iota(p.begin(), p.end(), 0);
  for (auto& x : d.pd()) {
    int a = find(p, dn.id(x[1])), b = find(p, dn.id(x[3]));
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
  std::map<int, int> gen;
  for (size_t a = 0; a < p.size(); ++a) gen.try_emplace(find(p, static_cast<int>(a)), static_cast<int>(gen.size()));
  if (static_cast<int>(gen.size()) != n) throw Error("Wirtinger arc count does not match crossing count");
  auto g = [&](int label) { return gen.at(find(p, dn.id(label))); };

  // Fox derivatives, each entry a + b t
  std::vector<std::vector<std::array<long long, 2>>> m(n, std::vector<std::array<long long, 2>>(n, {0, 0}));
  for (int c = 0; c < n; ++c) {
    const Tuple& x = d.pd()[c];
    int over = g(x[1]), in = g(x[0]), out = g(x[2]);
    if (d.sign(c) > 0) {
      m[c][over][0] += 1, m[c][over][1] -= 1;
      m[c][in][1] += 1;
      m[c][out][0] -= 1;
    } else {
      m[c][over][1] += 1, m[c][over][0] -= 1;
      m[c][in][0] += 1;
      m[c][out][1] -= 1;
    }
  }
  // The minor has degree at most n-1: sample at n points and interpolate.
  std::vector<BigInt> xs, ys;
  for (int k = 0; k < n; ++k) {
    BigInt t = k + 2;
    std::vector<std::vector<BigInt>> a(n - 1, std::vector<BigInt>(n - 1));
    for (int i = 0; i + 1 < n; ++i)
      for (int j = 0; j + 1 < n; ++j) a[i][j] = m[i][j][0] + m[i][j][1] * t;
    xs.push_back(t);
    ys.push_back(bareiss(std::move(a)));
  }
  // Newton divided differences, then expand to monomials.
  std::vector<BigRat> coef(ys.begin(), ys.end());
  for (int j = 1; j < n; ++j)
    for (int i = n - 1; i >= j; --i) coef[i] = (coef[i] - coef[i - 1]) / BigRat(xs[i] - xs[i - j]);
  std::vector<BigRat> poly(1, coef[n - 1]);
  for (int i = n - 2; i >= 0; --i) {
    std::vector<BigRat> next(poly.size() + 1, BigRat(0));
    for (size_t e = 0; e < poly.size(); ++e) {
      next[e + 1] += poly[e];
      next[e] -= poly[e] * BigRat(xs[i]);
    }
    next[0] += coef[i];
    poly.swap(next);
  }
  LaurentPoly out;
  for (size_t e = 0; e < poly.size(); ++e) {
    if (mp::denominator(poly[e]) != 1) throw Error("Alexander interpolation produced a non-integer coefficient");
    out.add(static_cast<int>(e), to_ll(mp::numerator(poly[e])));
  }
  if (out.is_zero()) throw Error("Alexander minor vanished; diagram data inconsistent");
  int lo = out.min_exp(), hi = out.max_exp();
  if ((hi - lo) % 2) throw Error("Alexander polynomial of a knot must have even span");
  out = out.shifted(-(lo + hi) / 2);
  long long at1 = out.eval(1);
  if (at1 != 1 && at1 != -1) throw Error("Alexander polynomial must take the value ±1 at t = 1");
  if (at1 < 0) out = out.negated();
  return {out};
}

long long determinant(const PlanarDiagram& d) {
  const int n = d.crossing_count();
  if (n == 0) return d.free_loops() == 1 ? 1 : 0;
  if (d.free_loops() > 0) return 0;
  std::map<int, std::vector<std::pair<int, int>>> occ;
  for (int c = 0; c < n; ++c)
    for (int s = 0; s < 4; ++s) occ[d.pd()[c][s]].push_back({c, s});
  auto other = [&](int c, int s) {
    auto& v = occ.at(d.pd()[c][s]);
    return v[0] == std::pair{c, s} ? v[1] : v[0];
  };
  // Corner (c, s) sits between slots s and s+1; it meets corner (c', s') across the edge in slot s+1.
  std::vector<int> p(4 * n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // crossing links with slot parity
  for (int c = 0; c < n; ++c)
    for (int s = 0; s < 4; ++s) {
      auto [c2, s2] = other(c, (s + 1) % 4);
      int a = find(p, 4 * c + s), b = find(p, 4 * c2 + s2);
      if (a != b) p[std::max(a, b)] = std::min(a, b);
      adj[c].push_back({c2, (s + s2) & 1});
    }
  // face colour of corner (c, s) is (s + par[c]) mod 2
  std::vector<int> par(n, -1);
  par[0] = 0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    for (auto [c2, k] : adj[c]) {
      int want = par[c] ^ k;
      if (par[c2] < 0) {
        par[c2] = want;
        stack.push_back(c2);
      } else if (par[c2] != want) {
        throw Error("PD code is not planar: faces admit no checkerboard colouring");
      }
    }
  }
  for (int c = 0; c < n; ++c)
    if (par[c] < 0) return 0;  // disconnected diagram
  std::map<int, int> face;
  for (int c = 0; c < n; ++c)
    for (int s = 0; s < 4; ++s)
      if ((s + par[c]) % 2 == 0) face.try_emplace(find(p, 4 * c + s), static_cast<int>(face.size()));
  const int k = static_cast<int>(face.size());
  std::vector<std::vector<BigInt>> gm(k, std::vector<BigInt>(k, 0));
  for (int c = 0; c < n; ++c) {
    int s0 = par[c] == 0 ? 0 : 1;
    int eta = s0 == 0 ? -1 : 1;
    int fa = face.at(find(p, 4 * c + s0)), fb = face.at(find(p, 4 * c + s0 + 2));
    if (fa == fb) continue;
    gm[fa][fb] += eta;
    gm[fb][fa] += eta;
    gm[fa][fa] -= eta;
    gm[fb][fb] -= eta;
  }
  gm.pop_back();
  for (auto& r : gm) r.pop_back();
  return to_ll(mp::abs(bareiss(std::move(gm))));
}

bool is_lspace_form(const AlexanderPoly& p) {
  if (p.poly.is_zero()) return false;
  int expect = 1;
  for (auto [e, c] : p.poly.terms()) {
    if (c != expect) return false;
    expect = -expect;
  }
  return expect == -1;  // odd number of terms, so it ends on +1
}

bool FormalSemigroup::contains(long long s) const {
  if (s < 0) return false;
  if (s >= threshold) return true;
  for (auto [a, b] : intervals)
    if (s >= a && s <= b) return true;
  return false;
}

std::vector<int> FormalSemigroup::elements_below() const {
  std::vector<int> out;
  for (auto [a, b] : intervals)
    for (int s = a; s <= b; ++s) out.push_back(s);
  return out;
}

FormalSemigroup formal_semigroup(const AlexanderPoly& p) {
  if (!is_lspace_form(p)) throw Error("Alexander polynomial is not of L-space form");
  std::vector<int> a;
  for (auto [e, c] : p.poly.terms()) a.push_back(e - p.poly.min_exp());
  FormalSemigroup s;
  for (size_t i = 0; i + 1 < a.size(); i += 2) s.intervals.push_back({a[i], a[i + 1] - 1});
  s.threshold = a.back();
  return s;
}

bool is_actual_semigroup(const FormalSemigroup& s) {
  std::vector<int> el = s.elements_below();
  for (size_t i = 0; i < el.size(); ++i)
    for (size_t j = i; j < el.size(); ++j)
      if (!s.contains(el[i] + el[j])) return false;
  return true;
}

std::vector<int> semigroup_series(const AlexanderPoly& p, int degree) {
  std::vector<int> out;
  if (p.poly.is_zero()) return out;
  const int lo = p.poly.min_exp();
  long long partial = 0;
  for (int k = 0; k <= degree; ++k) {
    partial += p.poly.coeff(k + lo);  // 1/(1-t) accumulates coefficients
    if (partial == 1) out.push_back(k);
  }
  return out;
}

}  // namespace kf
