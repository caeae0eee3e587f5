#include "kf/tangle.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace kf {

namespace {

const char* kEnds[4] = {"NW", "NE", "SE", "SW"};

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

int TangleFragment::max_label() const {
  int m = 0;
  for (auto& t : tuples)
    for (int a : t) m = std::max(m, a);
  for (auto& [k, a] : ends) m = std::max(m, a);
  return m;
}

int MorseBuilder::add(char kind, int sign, std::string name) {
  nodes_.push_back({kind, sign, std::move(name)});
  return static_cast<int>(nodes_.size()) - 1;
}

MorseBuilder::NP MorseBuilder::at(int i) const {
  if (i < 0 || i >= width()) throw Error("Morse position " + std::to_string(i) + " out of range");
  return pos_[i];
}

void MorseBuilder::cup(int i) {
  if (i < 0 || i > width()) throw Error("cup position out of range");
  int j = add('j');
  pos_.insert(pos_.begin() + i, {NP{j, 0}, NP{j, 1}});
}

void MorseBuilder::cap(int i) {
  NP a = at(i), b = at(i + 1);
  int j = add('j');
  link(a, {j, 0});
  link(b, {j, 1});
  pos_.erase(pos_.begin() + i, pos_.begin() + i + 2);
}

// Crossing ports counterclockwise: 0 SW, 1 SE, 2 NE, 3 NW.
void MorseBuilder::cross(int i, int sign) {
  NP a = at(i), b = at(i + 1);
  int x = add('x', sign > 0 ? 1 : -1);
  link(a, {x, 0});
  link(b, {x, 1});
  pos_[i] = {x, 3};
  pos_[i + 1] = {x, 2};
}

void MorseBuilder::end(int i, const std::string& name) {
  NP a = at(i);
  int e = add('e', 0, name);
  link(a, {e, 0});
  pos_.erase(pos_.begin() + i);
}

void MorseBuilder::start(int i, const std::string& name) {
  if (i < 0 || i > width()) throw Error("start position out of range");
  int e = add('e', 0, name);
  pos_.insert(pos_.begin() + i, NP{e, 0});
}

void MorseBuilder::orient_up(int i) { up_.push_back(at(i)); }
void MorseBuilder::mark_basepoint(int i) { base_.push_back(at(i)); }

TangleFragment MorseBuilder::fragment() const {
  if (!pos_.empty()) throw Error("Morse diagram has unclosed strands");
  std::map<NP, NP> adj;
  for (auto& [a, b] : edges_) {
    adj[a] = b;
    adj[b] = a;
  }
  std::vector<char> joint_seen(nodes_.size(), 0);
  // Follows joints to the next crossing or end; {-1,-1} on a joint-only loop.
  auto walk = [&](NP p) {
    NP cur = adj.at(p);
    size_t steps = 0;
    while (nodes_[cur.node].kind == 'j') {
      if (++steps > nodes_.size()) return NP{-1, -1};
      joint_seen[cur.node] = 1;
      cur = adj.at({cur.node, 1 - cur.port});
    }
    return cur;
  };
  std::map<NP, int> wire;
  std::vector<int> xindex(nodes_.size(), -1);
  int nx = 0, next = 0;
  for (size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].kind == 'x') xindex[i] = nx++;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    char k = nodes_[i].kind;
    if (k == 'j') continue;
    for (int p = 0; p < (k == 'x' ? 4 : 1); ++p) {
      NP s{static_cast<int>(i), p};
      if (wire.count(s)) continue;
      ++next;
      wire[s] = next;
      wire[walk(s)] = next;
    }
  }
  TangleFragment f;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].kind != 'j' || joint_seen[i]) continue;
    ++f.free_loops;
    NP cur{static_cast<int>(i), 0};
    while (!joint_seen[cur.node]) {
      joint_seen[cur.node] = 1;
      NP o = adj.at({cur.node, 1 - cur.port});
      cur = o;
    }
  }
  auto rot = [&](int node) { return nodes_[node].sign > 0 ? 1 : 0; };
  for (size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].kind == 'x') {
      Tuple t;
      for (int k = 0; k < 4; ++k) t[k] = wire.at({static_cast<int>(i), (k + rot(i)) % 4});
      f.tuples.push_back(t);
    } else if (nodes_[i].kind == 'e') {
      f.ends[nodes_[i].name] = wire.at({static_cast<int>(i), 0});
    }
  }
  auto port_of = [&](NP p) { return Port{xindex[p.node], (p.port - rot(p.node) + 4) % 4}; };
  for (NP u : up_) {
    NP fwd = walk(u);
    if (fwd.node < 0) continue;
    if (nodes_[fwd.node].kind == 'x') {
      f.hints.push_back({port_of(fwd), true});
      continue;
    }
    if (nodes_[u.node].kind == 'x') {
      f.hints.push_back({port_of(u), false});
      continue;
    }
    NP back = walk({u.node, 1 - u.port});
    if (nodes_[back.node].kind == 'x') f.hints.push_back({port_of(back), false});
  }
  for (NP b : base_) {
    NP t = nodes_[b.node].kind == 'j' ? walk({b.node, 1 - b.port}) : b;
    if (t.node < 0) continue;  // basepoint on a free loop: keep the default
    f.basepoint = wire.at(t);
  }
  return f;
}

PlanarDiagram MorseBuilder::diagram(const std::string& name) const {
  TangleFragment f = fragment();
  if (!f.ends.empty()) throw Error("diagram has open ends");
  DiagramOptions o;
  o.name = name;
  o.hints = f.hints;
  o.free_loops = f.free_loops;
  if (f.basepoint) o.basepoint = f.basepoint;
  o.canonical_labels = true;
  return PlanarDiagram::from_tuples(f.tuples, o);
}

PlanarDiagram braid_closure(const BraidWord& b) {
  if (b.strands < 1) throw Error("braid needs at least one strand");
  for (int L : b.letters)
    if (L == 0 || std::abs(L) >= b.strands) throw Error("braid letter " + std::to_string(L) + " out of range");
  MorseBuilder mb;
  const int s = b.strands;
  for (int i = 0; i < s; ++i) mb.cup(i);
  for (int i = 0; i < s; ++i) mb.orient_up(i);
  mb.mark_basepoint(0);
  for (int L : b.letters) mb.cross(std::abs(L) - 1, L > 0 ? 1 : -1);
  for (int k = s - 1; k >= 0; --k) mb.cap(k);
  return mb.diagram("braid[" + format_braid(b) + "]");
}

TangleFragment rational_tangle(const RationalSlope& r, bool right_handed) {
  TangleFragment f;
  if (r.is_infinity()) {
    f.ends = {{"NW", 1}, {"SW", 1}, {"NE", 2}, {"SE", 2}};
    return f;
  }
  std::vector<long long> a;
  for (long long p = r.p, q = r.q; q != 0;) {
    long long fl = floor_div(p, q);
    a.push_back(fl);
    long long rem = p - fl * q;
    p = q;
    q = rem;
  }
  const size_t k = a.size();
  if (k % 2 == 1)
    f.ends = {{"NW", 1}, {"NE", 1}, {"SW", 2}, {"SE", 2}};
  else
    f.ends = {{"NW", 1}, {"SW", 1}, {"NE", 2}, {"SE", 2}};
  int next = 2;
  // Local corners of one crossing; "\" has the NW-SE strand on top.
  auto crossing = [&](int nw, int ne, int sw, int se, bool backslash) {
    f.tuples.push_back(backslash ? Tuple{sw, se, ne, nw} : Tuple{nw, sw, se, ne});
  };
  for (size_t i = k; i >= 1; --i) {
    long long t = a[i - 1];
    bool backslash = (t > 0) == right_handed;
    for (long long j = 0; j < std::abs(t); ++j) {
      int n1 = ++next, n2 = ++next;
      if (i % 2 == 1) {
        crossing(f.ends["NE"], n1, f.ends["SE"], n2, backslash);
        f.ends["NE"] = n1;
        f.ends["SE"] = n2;
      } else {
        crossing(f.ends["SW"], f.ends["SE"], n1, n2, backslash);
        f.ends["SW"] = n1;
        f.ends["SE"] = n2;
      }
    }
  }
  return f;
}

void check_template_shape(const TangleTemplate& t) {
  if (t.ends.size() != 4) throw ParseError("template needs exactly the ends NW, NE, SE, SW");
  for (const char* e : kEnds)
    if (!t.ends.count(e)) throw ParseError(std::string("template is missing end ") + e);
  std::map<int, int> count;
  for (auto& x : t.pd)
    for (int a : x) {
      if (a <= 0) throw ParseError("arc labels must be positive");
      ++count[a];
    }
  for (auto& [k, a] : t.ends) ++count[a];
  for (auto& [a, c] : count)
    if (c != 2)
      throw ParseError("template arc " + std::to_string(a) + " occurs " + std::to_string(c) +
                       " times counting ends; expected 2");
  if (t.basepoint && !count.count(t.basepoint)) throw ParseError("template basepoint arc not present");
  if (t.orientation_rule != "parallel" && t.orientation_rule != "lowest-arc")
    throw ParseError("unknown orientation rule '" + t.orientation_rule + "'");
}

int base_crossing_count(const TangleTemplate& t) { return static_cast<int>(t.pd.size()); }

PlanarDiagram fill(const TangleTemplate& t, long long n) { return fill(t, RationalSlope(n, 1)); }

PlanarDiagram fill(const TangleTemplate& t, const RationalSlope& r) {
  check_template_shape(t);
  RationalSlope s = r.is_infinity() ? r : RationalSlope(r.p - static_cast<long long>(t.twist_offset) * r.q, r.q);
  TangleFragment rt = rational_tangle(s, t.right_handed);
  int shift = 0;
  for (auto& x : t.pd)
    for (int a : x) shift = std::max(shift, a);
  for (auto& [k, a] : t.ends) shift = std::max(shift, a);
  const int total = shift + rt.max_label() + 1;
  std::vector<int> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const char* e : kEnds) {
    int x = find(t.ends.at(e)), y = find(rt.ends.at(e) + shift);
    if (x < y) std::swap(x, y);
    parent[x] = y;
  }
  std::vector<Tuple> tuples = t.pd;
  for (auto x : rt.tuples) {
    for (auto& a : x) a += shift;
    tuples.push_back(x);
  }
  for (auto& x : tuples)
    for (auto& a : x) a = find(a);
  std::set<int> used;
  for (auto& x : tuples)
    for (int a : x) used.insert(a);
  std::set<int> end_roots;
  for (const char* e : kEnds) end_roots.insert(find(t.ends.at(e)));
  int loops = 0;
  for (int rt_root : end_roots)
    if (!used.count(rt_root)) ++loops;

  DiagramOptions o;
  o.name = t.name + "(" + r.str() + ")";
  o.free_loops = loops;
  o.canonical_labels = true;
  const int base_n = static_cast<int>(t.pd.size());
  if (t.orientation_rule == "parallel") {
    for (const char* e : {"NW", "SW"}) {
      bool done = false;
      for (size_t c = 0; c < rt.tuples.size() && !done; ++c)
        for (int k = 0; k < 4 && !done; ++k)
          if (rt.tuples[c][k] == rt.ends.at(e)) {
            o.hints.push_back({{base_n + static_cast<int>(c), k}, true});
            done = true;
          }
      for (int c = 0; c < base_n && !done; ++c)
        for (int k = 0; k < 4 && !done; ++k)
          if (t.pd[c][k] == t.ends.at(e)) {
            o.hints.push_back({{c, k}, false});
            done = true;
          }
    }
  }
  for (auto& h : t.hints) o.hints.push_back(h);
  if (t.basepoint && used.count(find(t.basepoint))) o.basepoint = find(t.basepoint);
  return PlanarDiagram::from_tuples(std::move(tuples), o);
}

TangleTemplate trivial_tangle() {
  TangleTemplate t;
  t.name = "trivial";
  t.ends = {{"NW", 1}, {"NE", 1}, {"SE", 2}, {"SW", 2}};
  t.basepoint = 1;
  t.n_guess = 0;
  return t;
}

TangleTemplate symmetric_quotient_template(const std::string& name, const std::vector<int>& w, int centre,
                                           int twist_offset) {
  MorseBuilder b;
  // nested hooks joining strands 1-2 and 3-4 of the doubled braid
  b.cup(0);
  b.cup(1);
  b.cup(4);
  b.cup(5);
  // quotient arc of the [1,3] half: over strands 1 and 3, under 2 and 4
  b.cup(0);
  b.mark_basepoint(0);
  const int travel[8] = {+1, +1, -1, -1, +1, +1, -1, -1};
  for (int k = 0; k < 8; ++k) b.cross(1 + k, travel[k]);
  for (int L : w) {
    int i = std::abs(L), e = L > 0 ? 1 : -1, base = 2 * i - 1;
    for (int off : {1, 0, 2, 1}) b.cross(base + off, e);
  }
  // twist site on the doubled strand 4
  b.end(7, "NW");
  b.end(7, "SW");
  b.start(7, "NE");
  b.start(8, "SE");
  // quotient arc of the centre letter
  int s2 = centre > 0 ? 1 : -1;
  const int alpha[4] = {-s2, -s2, s2, s2};
  for (int k = 0; k < 4; ++k) b.cross(2 + k, alpha[k]);
  b.cap(6);
  b.cap(3);
  b.cap(2);
  b.cap(0);
  b.cap(0);
  TangleFragment f = b.fragment();
  TangleTemplate t;
  t.name = name;
  t.pd = f.tuples;
  t.ends = f.ends;
  t.basepoint = f.basepoint;
  t.twist_offset = twist_offset;
  t.n_guess = twist_offset;
  return t;
}

}  // namespace kf
