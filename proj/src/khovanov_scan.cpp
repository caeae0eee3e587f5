// Tangle-complex scanning over F2 (h = t = 0 Frobenius algebra).
//
// Objects are crossingless tangles on the current boundary, stored as a matching id
// plus (h, q). A morphism between matchings A and B is an F2-combination of dotted
// disk patterns on the cycles of A ∪ B, one mask bit per dotted cycle.

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "kf/khovanov.hpp"

namespace kf {
namespace {

using Mask = uint64_t;
using Mor = std::vector<Mask>;  // sorted, distinct

void mor_toggle(Mor& m, Mask p) {
  auto it = std::lower_bound(m.begin(), m.end(), p);
  if (it != m.end() && *it == p)
    m.erase(it);
  else
    m.insert(it, p);
}

void mor_add(Mor& m, const Mor& o) {
  for (Mask p : o) mor_toggle(m, p);
}

using Matching = std::vector<uint8_t>;  // point -> partner

class MatchTable {
 public:
  int intern(const Matching& m) {
    std::string key(m.begin(), m.end());
    auto [it, fresh] = index_.try_emplace(key, static_cast<int>(list_.size()));
    if (fresh) {
      if (list_.size() >= (1u << 20)) throw ResourceError("too many boundary matchings");
      list_.push_back(m);
    }
    return it->second;
  }
  const Matching& operator[](int i) const { return list_[i]; }

 private:
  std::vector<Matching> list_;
  std::unordered_map<std::string, int> index_;
};

struct Cycles {
  int n = 0;
  std::vector<uint8_t> of;  // point -> cycle, cycles numbered by their least point
};

Cycles cycles_of(const Matching& a, const Matching& b) {
  Cycles c;
  const int P = static_cast<int>(a.size());
  c.of.assign(P, 0xff);
  for (int p = 0; p < P; ++p) {
    if (c.of[p] != 0xff) continue;
    int x = p;
    do {
      c.of[x] = static_cast<uint8_t>(c.n);
      int y = a[x];
      c.of[y] = static_cast<uint8_t>(c.n);
      x = b[y];
    } while (x != p);
    ++c.n;
  }
  if (c.n > 64) throw ResourceError("boundary too large for dot masks");
  return c;
}

struct Component {
  Mask left = 0;   // dot-carrying disks on the old side (L-disks, or β-disks)
  Mask right = 0;  // γ-disks when composing
  Mask loops_top = 0, loops_bot = 0;
  Mask cyc = 0;    // resulting boundary cycles
  int genus = 0;
};

// Evaluate a connected genus-0 surface with `dots` dots against its boundary cycles.
// Returns false when the product is zero; otherwise multiplies `acc` by the factor.
bool apply_component(const Component& k, int dots, std::vector<Mask>& acc) {
  if (k.genus > 0 || dots >= 2) return false;
  if (k.cyc == 0) return dots == 1;
  std::vector<Mask> factor;
  if (dots == 1) {
    factor.push_back(k.cyc);
  } else {
    for (Mask x = k.cyc; x; x &= x - 1) factor.push_back(k.cyc ^ (x & -x));
  }
  std::vector<Mask> next;
  next.reserve(acc.size() * factor.size());
  for (Mask a : acc)
    for (Mask f : factor) next.push_back(a | f);
  acc.swap(next);
  return true;
}

struct DSU {
  std::vector<int> p;
  explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<Component> finish_components(DSU& u, int ndisks, const std::vector<int>& glue_roots,
                                         std::vector<int>& comp_of_root) {
  comp_of_root.assign(ndisks, -1);
  std::vector<Component> comps;
  std::vector<int> chi;
  for (int x = 0; x < ndisks; ++x) {
    int r = u.find(x);
    if (comp_of_root[r] < 0) {
      comp_of_root[r] = static_cast<int>(comps.size());
      comps.emplace_back();
      chi.push_back(0);
    }
    chi[comp_of_root[r]]++;
  }
  for (int r : glue_roots) chi[comp_of_root[u.find(r)]]--;
  for (size_t i = 0; i < comps.size(); ++i) comps[i].genus = chi[i];  // holds χ until boundary is known
  return comps;
}

void set_genus(std::vector<Component>& comps) {
  for (auto& k : comps) {
    int b = std::popcount(k.cyc) + std::popcount(k.loops_top) + std::popcount(k.loops_bot);
    int chi = k.genus;
    int twice = 2 - chi - b;
    if (twice < 0 || twice % 2) throw Error("inconsistent cobordism topology");
    k.genus = twice / 2;
  }
}

struct ComposeInfo {
  std::vector<Component> comps;
};

struct TopInfo {
  int newm = 0;
  std::vector<int> loop_rep;  // one point per closed loop
};

struct GlueInfo {
  std::vector<Component> comps;
};

class Scanner {
 public:
  explicit Scanner(long long budget) : budget_(budget) {
    Matching empty;
    cur_.intern(empty);
    obj_.push_back({0, 0, 0});
    alive_.push_back(1);
    out_.emplace_back();
    in_.emplace_back();
  }

  void add_crossing(const Tuple& x);
  std::map<Bigrade, int> result() const;
  int boundary_size() const { return static_cast<int>(boundary_.size()); }
  size_t size() const { return obj_.size(); }

 private:
  struct Obj {
    int m, h, q;
  };

  const Cycles& cyc(MatchTable& t, std::unordered_map<uint64_t, Cycles>& cache, int a, int b) {
    uint64_t key = (uint64_t(a) << 32) | uint32_t(b);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, cycles_of(t[a], t[b])).first->second;
  }

  void connect(int a, int b, Mor&& m) {
    if (m.empty()) return;
    out_[a][b] = std::move(m);
    in_[b].insert(a);
  }

  const ComposeInfo& compose_info(int c1, int b, int c2);
  Mor compose(const Mor& beta, const Mor& gamma, int c1, int b, int c2);
  void eliminate();
  void cancel(int a, int b);

  long long budget_;
  std::vector<int> boundary_;
  MatchTable cur_;
  std::vector<Obj> obj_;
  std::vector<char> alive_;
  std::vector<std::unordered_map<int, Mor>> out_;
  std::vector<std::unordered_set<int>> in_;
  std::unordered_map<uint64_t, Cycles> cyc_cache_;
  std::unordered_map<uint64_t, ComposeInfo> compose_cache_;
};

const ComposeInfo& Scanner::compose_info(int c1, int b, int c2) {
  uint64_t key = (uint64_t(c1) << 42) | (uint64_t(b) << 21) | uint64_t(c2);
  auto it = compose_cache_.find(key);
  if (it != compose_cache_.end()) return it->second;
  const Cycles& cb = cyc(cur_, cyc_cache_, c1, b);
  const Cycles& bc = cyc(cur_, cyc_cache_, b, c2);
  const Cycles& cc = cyc(cur_, cyc_cache_, c1, c2);
  const Matching& mb = cur_[b];
  const int nb = cb.n, ng = bc.n;
  DSU u(nb + ng);
  std::vector<int> glue_roots;
  for (size_t p = 0; p < mb.size(); ++p)
    if (static_cast<int>(p) < mb[p]) {
      u.unite(cb.of[p], nb + bc.of[p]);
      glue_roots.push_back(cb.of[p]);
    }
  std::vector<int> comp_of_root;
  ComposeInfo info;
  info.comps = finish_components(u, nb + ng, glue_roots, comp_of_root);
  for (int d = 0; d < nb; ++d) info.comps[comp_of_root[u.find(d)]].left |= Mask{1} << d;
  for (int d = 0; d < ng; ++d) info.comps[comp_of_root[u.find(nb + d)]].right |= Mask{1} << d;
  std::vector<char> seen(cc.n, 0);
  for (size_t p = 0; p < cc.of.size(); ++p) {
    int j = cc.of[p];
    if (seen[j]) continue;
    seen[j] = 1;
    info.comps[comp_of_root[u.find(cb.of[p])]].cyc |= Mask{1} << j;
  }
  set_genus(info.comps);
  return compose_cache_.emplace(key, std::move(info)).first->second;
}

Mor Scanner::compose(const Mor& beta, const Mor& gamma, int c1, int b, int c2) {
  const ComposeInfo& info = compose_info(c1, b, c2);
  Mor res;
  std::vector<Mask> acc;
  for (Mask db : beta)
    for (Mask dg : gamma) {
      acc.assign(1, 0);
      bool ok = true;
      for (const Component& k : info.comps) {
        int dots = std::popcount(db & k.left) + std::popcount(dg & k.right);
        if (!apply_component(k, dots, acc)) {
          ok = false;
          break;
        }
      }
      if (ok)
        for (Mask m : acc) mor_toggle(res, m);
    }
  return res;
}

void Scanner::add_crossing(const Tuple& x) {
  const int B = static_cast<int>(boundary_.size());
  const int P = B + 4;
  std::unordered_map<int, int> pos;
  for (int p = 0; p < B; ++p) pos[boundary_[p]] = p;
  std::vector<int> gl(P, -1);
  for (int s = 0; s < 4; ++s) {
    auto it = pos.find(x[s]);
    if (it != pos.end()) {
      gl[it->second] = B + s;
      gl[B + s] = it->second;
    }
  }
  for (int s = 0; s < 4; ++s)
    for (int t = s + 1; t < 4; ++t)
      if (x[s] == x[t] && gl[B + s] < 0) {
        gl[B + s] = B + t;
        gl[B + t] = B + s;
      }
  std::vector<int> new_index(P, -1), new_point;
  std::vector<int> nb;
  for (int p = 0; p < P; ++p)
    if (gl[p] < 0) {
      new_index[p] = static_cast<int>(new_point.size());
      new_point.push_back(p);
      nb.push_back(p < B ? boundary_[p] : x[p - B]);
    }
  const int NB = static_cast<int>(nb.size());

  static constexpr int sm[2][4] = {{1, 0, 3, 2}, {3, 2, 1, 0}};
  auto strip = [](int s, int slot) { return s == 0 ? (slot < 2 ? 0 : 1) : ((slot == 0 || slot == 3) ? 0 : 1); };

  MatchTable next;
  // top(m, s): new matching and closed loops after stacking the smoothing under m
  std::unordered_map<uint64_t, TopInfo> tops;
  auto top = [&](int m, int s) -> const TopInfo& {
    uint64_t key = (uint64_t(m) << 1) | uint64_t(s);
    auto it = tops.find(key);
    if (it != tops.end()) return it->second;
    const Matching& A = cur_[m];
    auto ep = [&](int p) { return p < B ? int(A[p]) : B + sm[s][p - B]; };
    std::vector<char> vis(P, 0);
    Matching nm(NB);
    for (int k = 0; k < NB; ++k) {
      int x0 = new_point[k];
      if (vis[x0]) continue;
      int c = x0;
      vis[c] = 1;
      while (true) {
        int y = ep(c);
        vis[y] = 1;
        if (new_index[y] >= 0) {
          nm[k] = static_cast<uint8_t>(new_index[y]);
          nm[new_index[y]] = static_cast<uint8_t>(k);
          break;
        }
        c = gl[y];
        vis[c] = 1;
      }
    }
    TopInfo t;
    for (int p = 0; p < P; ++p) {
      if (vis[p]) continue;
      t.loop_rep.push_back(p);
      int c = p;
      do {
        vis[c] = 1;
        int y = ep(c);
        vis[y] = 1;
        c = gl[y];
      } while (c != p);
    }
    t.newm = next.intern(nm);
    return tops.emplace(key, std::move(t)).first->second;
  };

  std::unordered_map<uint64_t, GlueInfo> glues;
  auto glue = [&](int ma, int mb, int st, int sb, bool saddle) -> const GlueInfo& {
    uint64_t key = (uint64_t(ma) << 24) | (uint64_t(mb) << 3) | (uint64_t(st) << 2) | (uint64_t(sb) << 1) |
                   uint64_t(saddle);
    auto it = glues.find(key);
    if (it != glues.end()) return it->second;
    const Cycles& L = cyc(cur_, cyc_cache_, ma, mb);
    const int nL = L.n, nR = saddle ? 1 : 2;
    auto disk = [&](int p) { return p < B ? int(L.of[p]) : nL + (saddle ? 0 : strip(st, p - B)); };
    DSU u(nL + nR);
    std::vector<int> glue_roots;
    for (int p = 0; p < P; ++p)
      if (gl[p] > p) {
        u.unite(disk(p), disk(gl[p]));
        glue_roots.push_back(disk(p));
      }
    std::vector<int> comp_of_root;
    GlueInfo g;
    g.comps = finish_components(u, nL + nR, glue_roots, comp_of_root);
    auto comp = [&](int p) -> Component& { return g.comps[comp_of_root[u.find(disk(p))]]; };
    for (int d = 0; d < nL; ++d) g.comps[comp_of_root[u.find(d)]].left |= Mask{1} << d;
    const TopInfo& ta = top(ma, st);
    const TopInfo& tb = top(mb, sb);
    for (size_t i = 0; i < ta.loop_rep.size(); ++i) comp(ta.loop_rep[i]).loops_top |= Mask{1} << i;
    for (size_t i = 0; i < tb.loop_rep.size(); ++i) comp(tb.loop_rep[i]).loops_bot |= Mask{1} << i;
    Cycles nc = cycles_of(next[ta.newm], next[tb.newm]);
    std::vector<char> seen(nc.n, 0);
    for (int k = 0; k < NB; ++k) {
      int j = nc.of[k];
      if (seen[j]) continue;
      seen[j] = 1;
      comp(new_point[k]).cyc |= Mask{1} << j;
    }
    set_genus(g.comps);
    return glues.emplace(key, std::move(g)).first->second;
  };

  auto evaluate = [&](const GlueInfo& g, const Mor& f, Mask e1, Mask e2) {
    Mor res;
    std::vector<Mask> acc;
    for (Mask dmask : f) {
      acc.assign(1, 0);
      bool ok = true;
      for (const Component& k : g.comps) {
        int dots = std::popcount(dmask & k.left) + std::popcount(e1 & k.loops_top) +
                   std::popcount(~e2 & k.loops_bot);
        if (!apply_component(k, dots, acc)) {
          ok = false;
          break;
        }
      }
      if (ok)
        for (Mask m : acc) mor_toggle(res, m);
    }
    return res;
  };

  // New objects.
  const int N = static_cast<int>(obj_.size());
  std::vector<std::array<int, 2>> first(N, {-1, -1});
  std::vector<Obj> nobj;
  for (int o = 0; o < N; ++o) {
    if (!alive_[o]) continue;
    for (int s = 0; s < 2; ++s) {
      const TopInfo& t = top(obj_[o].m, s);
      const int loops = static_cast<int>(t.loop_rep.size());
      if (loops > 20) throw ResourceError("too many closed loops in one resolution");
      first[o][s] = static_cast<int>(nobj.size());
      for (Mask e = 0; e < (Mask{1} << loops); ++e)
        nobj.push_back({t.newm, obj_[o].h + s, obj_[o].q + s + loops - 2 * std::popcount(e)});
    }
  }
  if (static_cast<long long>(nobj.size()) > budget_)
    throw ResourceError("scanning complex reached " + std::to_string(nobj.size()) + " objects; budget is " +
                        std::to_string(budget_));

  std::vector<std::unordered_map<int, Mor>> nout(nobj.size());
  std::vector<std::unordered_set<int>> nin(nobj.size());
  auto nconnect = [&](int a, int b, Mor&& m) {
    if (m.empty()) return;
    mor_add(nout[a][b], m);
    if (nout[a][b].empty()) {
      nout[a].erase(b);
      nin[b].erase(a);
    } else {
      nin[b].insert(a);
    }
  };
  auto loops_of = [&](int o, int s) { return static_cast<int>(top(obj_[o].m, s).loop_rep.size()); };
  for (int o = 0; o < N; ++o) {
    if (!alive_[o]) continue;
    for (auto& [o2, f] : out_[o]) {
      for (int s = 0; s < 2; ++s) {
        const GlueInfo& g = glue(obj_[o].m, obj_[o2].m, s, s, false);
        const int la = loops_of(o, s), lb = loops_of(o2, s);
        for (Mask e1 = 0; e1 < (Mask{1} << la); ++e1)
          for (Mask e2 = 0; e2 < (Mask{1} << lb); ++e2)
            nconnect(first[o][s] + int(e1), first[o2][s] + int(e2), evaluate(g, f, e1, e2));
      }
    }
    const GlueInfo& g = glue(obj_[o].m, obj_[o].m, 0, 1, true);
    const int la = loops_of(o, 0), lb = loops_of(o, 1);
    const Mor id{0};
    for (Mask e1 = 0; e1 < (Mask{1} << la); ++e1)
      for (Mask e2 = 0; e2 < (Mask{1} << lb); ++e2)
        nconnect(first[o][0] + int(e1), first[o][1] + int(e2), evaluate(g, id, e1, e2));
  }

  boundary_ = std::move(nb);
  cur_ = std::move(next);
  obj_ = std::move(nobj);
  alive_.assign(obj_.size(), 1);
  out_ = std::move(nout);
  in_ = std::move(nin);
  cyc_cache_.clear();
  compose_cache_.clear();

#ifndef NDEBUG
  for (size_t a = 0; a < obj_.size(); ++a)
    for (auto& [b, f] : out_[a]) {
      const Cycles& c = cyc(cur_, cyc_cache_, obj_[a].m, obj_[b].m);
      for (Mask m : f)
        if (c.n - NB / 2 - 2 * std::popcount(m) + obj_[b].q - obj_[a].q != 0)
          throw Error("scanning produced a morphism of nonzero degree");
    }
#endif
  eliminate();
}

void Scanner::cancel(int a, int b) {
  std::vector<int> srcs(in_[b].begin(), in_[b].end());
  std::vector<std::pair<int, const Mor*>> tgts;
  for (auto& [e, f] : out_[a])
    if (e != b) tgts.push_back({e, &f});
  std::sort(srcs.begin(), srcs.end());
  std::sort(tgts.begin(), tgts.end());
  for (int c : srcs) {
    if (c == a) continue;
    const Mor beta = out_[c].at(b);
    for (auto& [e, gamma] : tgts) {
      Mor delta = compose(beta, *gamma, obj_[c].m, obj_[b].m, obj_[e].m);
      if (delta.empty()) continue;
      Mor& cur = out_[c][e];
      mor_add(cur, delta);
      if (cur.empty()) {
        out_[c].erase(e);
        in_[e].erase(c);
      } else {
        in_[e].insert(c);
      }
    }
  }
  for (int v : {a, b}) {
    for (auto& [e, f] : out_[v]) in_[e].erase(v);
    for (int c : in_[v]) out_[c].erase(v);
    out_[v].clear();
    in_[v].clear();
    alive_[v] = 0;
  }
}

void Scanner::eliminate() {
  std::deque<int> queue;
  std::vector<char> queued(obj_.size(), 1);
  for (size_t a = 0; a < obj_.size(); ++a) queue.push_back(static_cast<int>(a));
  while (!queue.empty()) {
    int a = queue.front();
    queue.pop_front();
    queued[a] = 0;
    if (!alive_[a]) continue;
    int best = -1;
    for (auto& [b, f] : out_[a])
      if (obj_[b].m == obj_[a].m && obj_[b].q == obj_[a].q && f.size() == 1 && f[0] == 0 &&
          (best < 0 || b < best))
        best = b;
    if (best < 0) continue;
    std::vector<int> touched(in_[best].begin(), in_[best].end());
    cancel(a, best);
    for (int c : touched)
      if (alive_[c] && !queued[c]) {
        queued[c] = 1;
        queue.push_back(c);
      }
  }
  // compact
  std::vector<int> id(obj_.size(), -1);
  std::vector<Obj> keep;
  for (size_t a = 0; a < obj_.size(); ++a)
    if (alive_[a]) {
      id[a] = static_cast<int>(keep.size());
      keep.push_back(obj_[a]);
    }
  std::vector<std::unordered_map<int, Mor>> nout(keep.size());
  std::vector<std::unordered_set<int>> nin(keep.size());
  for (size_t a = 0; a < obj_.size(); ++a)
    if (alive_[a])
      for (auto& [b, f] : out_[a]) {
        nout[id[a]][id[b]] = std::move(f);
        nin[id[b]].insert(id[a]);
      }
  obj_ = std::move(keep);
  alive_.assign(obj_.size(), 1);
  out_ = std::move(nout);
  in_ = std::move(nin);
}

std::map<Bigrade, int> Scanner::result() const {
  std::map<Bigrade, int> r;
  for (size_t a = 0; a < obj_.size(); ++a)
    if (alive_[a]) r[{obj_[a].h, obj_[a].q}]++;
  return r;
}

// Greedy order: begin at the crossing where the basepoint arc starts, then repeatedly
// take the crossing sharing the most labels with the current boundary.
std::vector<int> scan_order(const std::vector<Tuple>& pd, int start) {
  const int n = static_cast<int>(pd.size());
  std::vector<int> order;
  std::vector<char> used(n, 0);
  std::unordered_map<int, int> open;  // label -> multiplicity on boundary
  auto take = [&](int c) {
    used[c] = 1;
    order.push_back(c);
    for (int l : pd[c]) {
      if (open.count(l))
        open.erase(l);
      else
        open[l] = 1;
    }
  };
  take(start);
  while (static_cast<int>(order.size()) < n) {
    int best = -1, score = -1;
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      int s = 0;
      for (int l : pd[c]) s += open.count(l) ? 1 : 0;
      if (s > score) {
        score = s;
        best = c;
      }
    }
    take(best);
  }
  return order;
}

}  // namespace

KhTable kh_table_scan(const PlanarDiagram& d, const KhOptions& opt) {
  KhTable t;
  t.link = d.name();
  if (d.crossing_count() == 0) {
    KhOptions o = opt;
    o.method = KhMethod::Cube;
    return kh_table(d, o);
  }
  std::vector<Tuple> pd = d.pd();
  const int bp = d.basepoint();
  Port head = d.head(bp);
  Port tail = d.tail(bp);
  int fresh = 0;
  for (auto& x : pd)
    for (int l : x) fresh = std::max(fresh, l);
  ++fresh;
  pd[head.crossing][head.slot] = fresh;
  Scanner sc(opt.max_generators);
  const int start = opt.scan_start >= 0 ? opt.scan_start % d.crossing_count() : tail.crossing;
  for (int c : scan_order(pd, start)) sc.add_crossing(pd[c]);
  if (sc.boundary_size() != 2) throw Error("scan finished with a boundary of size " + std::to_string(sc.boundary_size()));
  const int np = d.n_plus(), nm = d.n_minus();
  std::map<Bigrade, int> raw;
  for (auto& [g, n] : sc.result()) raw[{g.h - nm, g.q + np - 2 * nm}] += n;
  // free loops contribute (q + q^-1) each
  for (int l = 0; l < d.free_loops(); ++l) {
    std::map<Bigrade, int> next;
    for (auto& [g, n] : raw) {
      next[{g.h, g.q + 1}] += n;
      next[{g.h, g.q - 1}] += n;
    }
    raw.swap(next);
  }
  t.entries = raw;
  return t;
}

}  // namespace kf
