#include "kf/f2.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "kf/diagram.hpp"
#include "kf/parallel.hpp"

namespace kf {

F2Matrix::F2Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(static_cast<size_t>(rows) * ((cols + 63) / 64), 0) {}

void F2Matrix::set(int r, int c, bool v) {
  uint64_t bit = uint64_t{1} << (c & 63);
  if (v)
    row_mut(r)[c >> 6] |= bit;
  else
    row_mut(r)[c >> 6] &= ~bit;
}

F2Matrix F2Matrix::identity(int n) {
  F2Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i);
  return m;
}

F2Matrix F2Matrix::transpose() const {
  F2Matrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int w = 0; w < words_; ++w) {
      uint64_t x = row(r)[w];
      while (x) {
        int b = std::countr_zero(x);
        x &= x - 1;
        t.set(w * 64 + b, r);
      }
    }
  return t;
}

F2Matrix F2Matrix::operator*(const F2Matrix& o) const {
  if (cols_ != o.rows_) throw Error("matrix shape mismatch");
  F2Matrix p(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k)
      if (get(r, k)) {
        uint64_t* dst = p.row_mut(r);
        const uint64_t* src = o.row(k);
        for (int w = 0; w < p.words_; ++w) dst[w] ^= src[w];
      }
  return p;
}

bool F2Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](uint64_t x) { return x == 0; });
}

int rank(const F2Matrix& m) {
  F2Matrix a = m;
  const int R = a.rows(), W = a.words();
  int r = 0;
  for (int w = 0; w < W && r < R; ++w)
    for (int b = 0; b < 64 && r < R; ++b) {
      uint64_t bit = uint64_t{1} << b;
      int piv = -1;
      for (int i = r; i < R; ++i)
        if (a.row(i)[w] & bit) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      if (piv != r) std::swap_ranges(a.row_mut(piv), a.row_mut(piv) + W, a.row_mut(r));
      const uint64_t* p = a.row(r);
      for (int i = piv + 1; i < R; ++i) {
        uint64_t* x = a.row_mut(i);
        if (x[w] & bit)
          for (int k = w; k < W; ++k) x[k] ^= p[k];
      }
      ++r;
    }
  return r;
}

F2Matrix SparseBlock::dense() const {
  F2Matrix m(sources, targets);
  for (int i = 0; i < sources; ++i)
    for (uint32_t j : rows[i]) m.flip(i, static_cast<int>(j));
  return m;
}

int GradedComplexF2::total_generators() const {
  int t = 0;
  for (auto& [g, n] : gens) t += n;
  return t;
}

void GradedComplexF2::check() const {
  auto count = [&](Bigrade g) {
    auto it = gens.find(g);
    return it == gens.end() ? 0 : it->second;
  };
  for (auto& [g, b] : d) {
    if (b.sources != count(g) || b.targets != count({g.h + 1, g.q}))
      throw Error("differential block shape does not match generator counts");
    auto next = d.find({g.h + 1, g.q});
    if (next == d.end()) continue;
    F2Matrix dd = b.dense() * next->second.dense();
    if (!dd.is_zero()) throw Error("d∘d ≠ 0 in bigrading (" + std::to_string(g.h) + "," + std::to_string(g.q) + ")");
  }
}

std::map<Bigrade, int> homology_dims(const GradedComplexF2& c0, const HomologyOptions& opt) {
  GradedComplexF2 reduced;
  const GradedComplexF2& c = opt.cancel ? (reduced = cancel_units(c0)) : c0;
  std::vector<Bigrade> keys;
  for (auto& [g, b] : c.d) keys.push_back(g);
  std::vector<int> ranks(keys.size(), 0);
  parallel_for(static_cast<int>(keys.size()), opt.threads, [&](int i) {
    const SparseBlock& b = c.d.at(keys[i]);
    if (b.sources == 0 || b.targets == 0) return;
    F2Matrix m = b.dense();
    ranks[i] = rank(m);
  });
  std::map<Bigrade, int> rk;
  for (size_t i = 0; i < keys.size(); ++i) rk[keys[i]] = ranks[i];
  std::map<Bigrade, int> out;
  for (auto& [g, n] : c.gens) {
    int dim = n;
    if (auto it = rk.find(g); it != rk.end()) dim -= it->second;
    if (auto it = rk.find({g.h - 1, g.q}); it != rk.end()) dim -= it->second;
    if (dim < 0) throw Error("negative homology dimension; complex is inconsistent");
    if (dim > 0) out[g] = dim;
  }
  return out;
}

GradedComplexF2 cancel_units(const GradedComplexF2& c) {
  // Work per q; generators get dense ids ordered by (h, index).
  std::set<int> qs;
  for (auto& [g, n] : c.gens) qs.insert(g.q);
  GradedComplexF2 out;
  for (int q : qs) {
    std::vector<Bigrade> grades;
    std::map<int, int> offset;  // h -> first id
    int total = 0;
    for (auto& [g, n] : c.gens)
      if (g.q == q) {
        grades.push_back(g);
        offset[g.h] = total;
        total += n;
      }
    std::vector<int> hof(total);
    for (auto& g : grades)
      for (int i = 0; i < c.gens.at(g); ++i) hof[offset[g.h] + i] = g.h;
    std::vector<std::unordered_set<int>> fwd(total), bwd(total);
    for (auto& g : grades) {
      auto it = c.d.find(g);
      if (it == c.d.end() || !offset.count(g.h + 1)) continue;
      for (int i = 0; i < it->second.sources; ++i)
        for (uint32_t j : it->second.rows[i]) {
          int a = offset[g.h] + i, b = offset[g.h + 1] + static_cast<int>(j);
          fwd[a].insert(b);
          bwd[b].insert(a);
        }
    }
    std::vector<char> alive(total, 1);
    auto toggle = [&](int a, int b) {
      if (fwd[a].erase(b)) {
        bwd[b].erase(a);
      } else {
        fwd[a].insert(b);
        bwd[b].insert(a);
      }
    };
    auto drop = [&](int v) {
      for (int e : fwd[v]) bwd[e].erase(v);
      for (int e : bwd[v]) fwd[e].erase(v);
      fwd[v].clear();
      bwd[v].clear();
      alive[v] = 0;
    };
    for (int a = 0; a < total; ++a) {
      if (!alive[a] || fwd[a].empty()) continue;
      int b = *std::min_element(fwd[a].begin(), fwd[a].end());
      std::vector<int> srcs(bwd[b].begin(), bwd[b].end()), tgts(fwd[a].begin(), fwd[a].end());
      for (int s : srcs)
        if (s != a)
          for (int t : tgts)
            if (t != b) toggle(s, t);
      drop(a);
      drop(b);
    }
    std::vector<int> newid(total, -1);
    std::map<int, int> count;
    for (int v = 0; v < total; ++v)
      if (alive[v]) newid[v] = count[hof[v]]++;
    for (auto& [h, n] : count) out.gens[{h, q}] = n;
    for (auto& [h, n] : count) {
      if (!count.count(h + 1)) continue;
      SparseBlock blk;
      blk.sources = n;
      blk.targets = count[h + 1];
      blk.rows.resize(n);
      for (int v = 0; v < total; ++v)
        if (alive[v] && hof[v] == h) {
          auto& row = blk.rows[newid[v]];
          for (int e : fwd[v]) row.push_back(static_cast<uint32_t>(newid[e]));
          std::sort(row.begin(), row.end());
        }
      out.d[{h, q}] = std::move(blk);
    }
  }
  return out;
}

std::string complex_to_json(const GradedComplexF2& c) {
  std::ostringstream os;
  os << "{\"gens\":{";
  bool first = true;
  for (auto& [g, n] : c.gens) {
    os << (first ? "" : ",") << "\"" << g.h << "," << g.q << "\":" << n;
    first = false;
  }
  os << "},\"d\":{";
  first = true;
  for (auto& [g, b] : c.d) {
    os << (first ? "" : ",") << "\"" << g.h << "," << g.q << "\":[";
    for (size_t i = 0; i < b.rows.size(); ++i) {
      os << (i ? "," : "") << "[";
      for (size_t k = 0; k < b.rows[i].size(); ++k) os << (k ? "," : "") << b.rows[i][k];
      os << "]";
    }
    os << "]";
    first = false;
  }
  os << "}}";
  return os.str();
}

}  // namespace kf
