#include "kf/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace kf {

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

std::string label_str(int a) { return std::to_string(a); }

}  // namespace

int PlanarDiagram::dense(int label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) throw Error("no arc labeled " + label_str(label));
  return static_cast<int>(it - labels_.begin());
}

PlanarDiagram PlanarDiagram::unlink(int components) {
  if (components < 1) throw Error("unlink needs at least one component");
  PlanarDiagram d;
  d.free_loops_ = components;
  d.name_ = components == 1 ? "unknot" : "unlink" + std::to_string(components);
  return d;
}

PlanarDiagram PlanarDiagram::from_tuples(std::vector<Tuple> tuples, const DiagramOptions& opt) {
  PlanarDiagram d;
  d.name_ = opt.name.empty() ? "diagram" : opt.name;
  if (tuples.empty()) {
    d.free_loops_ = std::max(1, opt.free_loops);
    return d;
  }
  d.free_loops_ = opt.free_loops;
  const int n = static_cast<int>(tuples.size());

  std::map<int, std::vector<Port>> occ;
  for (int c = 0; c < n; ++c)
    for (int s = 0; s < 4; ++s) {
      int a = tuples[c][s];
      if (a <= 0) throw ParseError("arc labels must be positive, got " + label_str(a));
      occ[a].push_back({c, s});
    }
  std::vector<std::array<Port, 2>> ends;
  for (auto& [a, v] : occ) {
    if (v.size() != 2)
      throw ParseError("arc " + label_str(a) + " appears " + std::to_string(v.size()) +
                       " times; every arc must appear exactly twice");
    d.labels_.push_back(a);
    ends.push_back({v[0], v[1]});
  }
  const int m = static_cast<int>(d.labels_.size());
  std::vector<std::array<int, 4>> port_arc(n);
  for (int i = 0; i < m; ++i)
    for (auto& p : ends[i]) port_arc[p.crossing][p.slot] = i;

  // Planarity: dart orbits must give V - E + F = 2 per connected piece.
  {
    Dsu pieces(n);
    for (int i = 0; i < m; ++i) pieces.unite(ends[i][0].crossing, ends[i][1].crossing);
    int npieces = 0;
    for (int c = 0; c < n; ++c) npieces += pieces.find(c) == c;
    std::vector<char> seen(4 * n, 0);
    int faces = 0;
    for (int start = 0; start < 4 * n; ++start) {
      if (seen[start]) continue;
      ++faces;
      int cur = start;
      while (!seen[cur]) {
        seen[cur] = 1;
        int c = cur / 4, s = cur % 4, a = port_arc[c][s];
        Port o = ends[a][0] == Port{c, s} ? ends[a][1] : ends[a][0];
        cur = o.crossing * 4 + (o.slot + 3) % 4;
      }
    }
    if (faces != n + 2 * npieces) throw ParseError("PD code does not describe a planar diagram");
  }

  // Trace components. dir[i] = index into ends[i] of the head.
  std::vector<int> comp(m, -1), dir(m, 1);
  std::vector<std::vector<int>> comps;
  for (int a0 = 0; a0 < m; ++a0) {
    if (comp[a0] >= 0) continue;
    int id = static_cast<int>(comps.size());
    comps.emplace_back();
    int a = a0, h = 1;
    while (comp[a] < 0) {
      comp[a] = id;
      dir[a] = h;
      comps[id].push_back(a);
      Port hp = ends[a][h];
      Port nt{hp.crossing, (hp.slot + 2) % 4};
      int b = port_arc[nt.crossing][nt.slot];
      int hb = (ends[b][0] == nt) ? 1 : 0;
      a = b;
      h = hb;
    }
  }

  // Orientation decisions.
  const int nc = static_cast<int>(comps.size());
  std::vector<int> flip(nc, 0), decided(nc, 0);
  auto hint = [&](Port p, bool is_head) {
    if (p.crossing < 0 || p.crossing >= n || p.slot < 0 || p.slot > 3)
      throw Error("orientation hint refers to a missing crossing port");
    int a = port_arc[p.crossing][p.slot];
    int c = comp[a];
    if (decided[c]) return;
    decided[c] = 1;
    bool head_now = ends[a][dir[a]] == p;
    // a looping arc may have both ends on one crossing; compare the exact port
    flip[c] = (head_now != is_head) ? 1 : 0;
  };
  for (auto [x, y] : opt.orientations) {
    if (!occ.count(x) || !occ.count(y))
      throw ParseError("orientation refers to unknown arc " + label_str(occ.count(x) ? y : x));
    int a = d.dense(x), b = d.dense(y);
    bool found = false;
    for (int i = 0; i < 2 && !found; ++i)
      for (int j = 0; j < 2 && !found; ++j) {
        Port pa = ends[a][i], pb = ends[b][j];
        if (pa.crossing == pb.crossing && (pa.slot + 2) % 4 == pb.slot) {
          hint(pa, true);
          found = true;
        }
      }
    if (!found) throw ParseError("arcs " + label_str(x) + " and " + label_str(y) + " are not consecutive");
  }
  for (auto& h : opt.hints) hint(h.port, h.head);
  for (int c = 0; c < nc; ++c) {
    if (decided[c]) continue;
    // KnotTheory convention: slot 0 is incoming, slot 2 outgoing.
    int agree = 0, disagree = 0;
    for (int a : comps[c])
      for (int e = 0; e < 2; ++e) {
        Port p = ends[a][e];
        bool is_head = e == dir[a];
        if (p.slot == 0) (is_head ? agree : disagree)++;
        if (p.slot == 2) (is_head ? disagree : agree)++;
      }
    if (agree + disagree > 0 && (agree == 0 || disagree == 0)) {
      flip[c] = agree == 0;
    } else {
      // lowest arc first, stepping toward its smaller neighbour
      auto& v = comps[c];
      auto it = std::min_element(v.begin(), v.end());
      size_t k = it - v.begin(), L = v.size();
      int next = v[(k + 1) % L], prev = v[(k + L - 1) % L];
      flip[c] = next > prev;
    }
  }
  for (int a = 0; a < m; ++a)
    if (flip[comp[a]]) dir[a] = 1 - dir[a];
  for (int c = 0; c < nc; ++c)
    if (flip[c]) std::reverse(comps[c].begin(), comps[c].end());

  // Normalize tuple rotation: slot 0 is the incoming under-strand.
  auto is_head_at = [&](int c, int s) {
    int a = port_arc[c][s];
    return ends[a][dir[a]] == Port{c, s};
  };
  std::vector<int> rot(n, 0);
  for (int c = 0; c < n; ++c) {
    bool in0 = is_head_at(c, 0), in2 = is_head_at(c, 2);
    if (in0 == in2) throw ParseError("under-strand orientation inconsistent at crossing " + std::to_string(c));
    rot[c] = in0 ? 0 : 2;
  }
  auto newslot = [&](Port p) { return Port{p.crossing, (p.slot - rot[p.crossing] + 4) % 4}; };

  d.pd_.resize(n);
  d.signs_.resize(n);
  for (int c = 0; c < n; ++c) {
    for (int k = 0; k < 4; ++k) d.pd_[c][k] = tuples[c][(k + rot[c]) % 4];
    int s3 = (3 + rot[c]) % 4;
    d.signs_[c] = is_head_at(c, s3) ? +1 : -1;
  }
  d.head_.resize(m);
  d.tail_.resize(m);
  for (int a = 0; a < m; ++a) {
    d.head_[a] = newslot(ends[a][dir[a]]);
    d.tail_[a] = newslot(ends[a][1 - dir[a]]);
  }

  // Rotate each component to start at its lowest arc; order components by lowest arc.
  for (auto& v : comps) {
    auto it = std::min_element(v.begin(), v.end());
    std::rotate(v.begin(), it, v.end());
  }
  std::sort(comps.begin(), comps.end(), [](auto& x, auto& y) { return x[0] < y[0]; });
  d.comp_.assign(m, 0);
  d.components_.clear();
  for (size_t c = 0; c < comps.size(); ++c) {
    std::vector<int> lab;
    for (int a : comps[c]) {
      d.comp_[a] = static_cast<int>(c);
      lab.push_back(d.labels_[a]);
    }
    d.components_.push_back(lab);
  }

  if (opt.basepoint) {
    if (!occ.count(*opt.basepoint)) throw ParseError("basepoint arc " + label_str(*opt.basepoint) + " not in diagram");
    d.basepoint_ = *opt.basepoint;
  } else {
    d.basepoint_ = d.labels_.front();
  }
  if (opt.canonical_labels) return d.relabeled();
  return d;
}

int PlanarDiagram::n_plus() const { return static_cast<int>(std::count(signs_.begin(), signs_.end(), 1)); }
int PlanarDiagram::n_minus() const { return static_cast<int>(std::count(signs_.begin(), signs_.end(), -1)); }

std::vector<int> PlanarDiagram::arc_labels() const { return labels_; }
Port PlanarDiagram::tail(int arc) const { return tail_[dense(arc)]; }
Port PlanarDiagram::head(int arc) const { return head_[dense(arc)]; }
int PlanarDiagram::component_of(int arc) const { return comp_[dense(arc)]; }

std::vector<std::pair<int, int>> PlanarDiagram::orientation_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (auto& c : components_) out.emplace_back(c[0], c.size() > 1 ? c[1] : c[0]);
  return out;
}

namespace {

DiagramOptions carry(const PlanarDiagram& d) {
  DiagramOptions o;
  o.name = d.name();
  o.free_loops = d.free_loops();
  if (d.crossing_count() > 0) {
    o.basepoint = d.basepoint();
    for (auto& c : d.components()) o.hints.push_back({d.head(c[0]), true});
  }
  return o;
}

}  // namespace

PlanarDiagram PlanarDiagram::relabeled() const {
  if (pd_.empty()) return *this;
  std::map<int, int> newlab;
  int next = 1;
  std::vector<int> order(components_.size());
  std::iota(order.begin(), order.end(), 0);
  int bc = component_of(basepoint_);
  std::stable_partition(order.begin(), order.end(), [&](int c) { return c == bc; });
  for (int c : order) {
    const auto& v = components_[c];
    size_t start = 0;
    if (c == bc) start = std::find(v.begin(), v.end(), basepoint_) - v.begin();
    for (size_t k = 0; k < v.size(); ++k) newlab[v[(start + k) % v.size()]] = next++;
  }
  std::vector<Tuple> t = pd_;
  for (auto& x : t)
    for (auto& a : x) a = newlab.at(a);
  DiagramOptions o = carry(*this);
  o.basepoint = 1;
  return from_tuples(std::move(t), o);
}

PlanarDiagram PlanarDiagram::mirrored() const {
  if (pd_.empty()) return *this;
  std::vector<Tuple> t;
  for (auto& x : pd_) t.push_back({x[1], x[2], x[3], x[0]});
  DiagramOptions o = carry(*this);
  for (auto& h : o.hints) h.port.slot = (h.port.slot + 3) % 4;
  return from_tuples(std::move(t), o);
}

PlanarDiagram mirror(const PlanarDiagram& d) { return d.mirrored(); }

PlanarDiagram PlanarDiagram::with_basepoint(int arc) const {
  DiagramOptions o = carry(*this);
  o.basepoint = arc;
  return from_tuples(pd_, o);
}

PlanarDiagram PlanarDiagram::reversed_component(int arc) const {
  DiagramOptions o = carry(*this);
  int c = component_of(arc);
  // naming the old tail port as a head flips that component
  o.hints[c].port = tail(components_[c][0]);
  return from_tuples(pd_, o);
}

std::string PlanarDiagram::shape_key() const {
  const int n = crossing_count();
  std::ostringstream tail_os;
  tail_os << "|free" << free_loops_;
  if (n == 0) return tail_os.str();
  std::map<int, std::vector<Port>> occ;
  for (int c = 0; c < n; ++c)
    for (int s = 0; s < 4; ++s) occ[pd_[c][s]].push_back({c, s});
  auto other = [&](int c, int s) {
    auto& v = occ[pd_[c][s]];
    return v[0] == Port{c, s} ? v[1] : v[0];
  };
  Dsu pieces(n);
  for (auto& [a, v] : occ) pieces.unite(v[0].crossing, v[1].crossing);
  std::map<int, std::vector<int>> piece_members;
  for (int c = 0; c < n; ++c) piece_members[pieces.find(c)].push_back(c);
  std::vector<std::string> keys;
  for (auto& [root, members] : piece_members) {
    std::string best;
    for (int c0 : members)
      for (int r0 : {0, 2}) {
        std::map<int, int> idx, rot, lab;
        std::vector<int> queue{c0};
        idx[c0] = 0;
        rot[c0] = r0;
        std::ostringstream os;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
          int c = queue[qi];
          os << '[';
          for (int k = 0; k < 4; ++k) {
            int s = (rot[c] + k) % 4, a = pd_[c][s];
            if (!lab.count(a)) lab[a] = static_cast<int>(lab.size()) + 1;
            os << lab[a] << (k < 3 ? "," : "");
            Port o = other(c, s);
            if (!idx.count(o.crossing)) {
              idx[o.crossing] = static_cast<int>(queue.size());
              rot[o.crossing] = o.slot % 2 == 0 ? o.slot : o.slot - 1;
              queue.push_back(o.crossing);
            }
          }
          os << ']';
        }
        std::string k = os.str();
        if (best.empty() || k < best) best = k;
      }
    keys.push_back(best);
  }
  std::sort(keys.begin(), keys.end());
  std::string out;
  for (auto& k : keys) out += k + ";";
  return out + tail_os.str();
}

PlanarDiagram resolve_crossing(const PlanarDiagram& d, int c, int kind) {
  if (c < 0 || c >= d.crossing_count()) throw Error("crossing index out of range");
  if (kind != 0 && kind != 1) throw Error("smoothing kind must be 0 or 1");
  const auto& pd = d.pd();
  const Tuple& x = pd[c];
  std::map<int, int> parent;
  for (auto& t : pd)
    for (int a : t) parent[a] = a;
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](int a, int b) {
    a = find(a), b = find(b);
    if (a < b) std::swap(a, b);
    parent[a] = b;
  };
  if (kind == 0) {
    unite(x[0], x[1]);
    unite(x[2], x[3]);
  } else {
    unite(x[0], x[3]);
    unite(x[1], x[2]);
  }
  std::vector<Tuple> t;
  std::vector<int> old_index;
  for (int i = 0; i < d.crossing_count(); ++i) {
    if (i == c) continue;
    Tuple y = pd[i];
    for (auto& a : y) a = find(a);
    t.push_back(y);
    old_index.push_back(i);
  }
  // A class not touching any remaining crossing forms a free loop.
  std::set<int> used;
  for (auto& y : t)
    for (int a : y) used.insert(a);
  std::set<int> classes;
  for (int a : x) classes.insert(find(a));
  int extra = 0;
  for (int r : classes)
    if (!used.count(r)) ++extra;

  DiagramOptions o;
  o.name = d.name();
  o.free_loops = d.free_loops() + extra;
  // Orientation hints in order of increasing original arc label.
  std::vector<int> labels = d.arc_labels();
  for (int a : labels) {
    Port h = d.head(a);
    if (h.crossing == c) continue;
    int ni = static_cast<int>(std::find(old_index.begin(), old_index.end(), h.crossing) - old_index.begin());
    o.hints.push_back({{ni, h.slot}, true});
  }
  if (!t.empty()) {
    int b = find(d.basepoint());
    o.basepoint = used.count(b) ? b : *used.begin();
  }
  return PlanarDiagram::from_tuples(std::move(t), o);
}

CircleData smoothing_circles(const PlanarDiagram& d, const std::vector<int>& v) {
  if (static_cast<int>(v.size()) != d.crossing_count()) throw Error("smoothing vector length mismatch");
  std::vector<int> labels = d.arc_labels();
  Dsu u(static_cast<int>(labels.size()));
  auto id = [&](int a) { return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), a) - labels.begin()); };
  for (int c = 0; c < d.crossing_count(); ++c) {
    const Tuple& x = d.pd()[c];
    if (v[c] == 0) {
      u.unite(id(x[0]), id(x[1]));
      u.unite(id(x[2]), id(x[3]));
    } else {
      u.unite(id(x[0]), id(x[3]));
      u.unite(id(x[1]), id(x[2]));
    }
  }
  CircleData out;
  std::map<int, int> root_circle;
  for (size_t i = 0; i < labels.size(); ++i) {
    int r = u.find(static_cast<int>(i));
    auto it = root_circle.find(r);
    if (it == root_circle.end()) it = root_circle.emplace(r, static_cast<int>(root_circle.size())).first;
    out.arc_circle.emplace_back(labels[i], it->second);
  }
  out.count = static_cast<int>(root_circle.size()) + d.free_loops();
  return out;
}

RationalSlope::RationalSlope(long long p_, long long q_) : p(p_), q(q_) {
  if (q < 0) p = -p, q = -q;
  if (p == 0 && q == 0) throw Error("slope 0/0 is undefined");
  long long g = std::gcd(p < 0 ? -p : p, q);
  if (g > 1) p /= g, q /= g;
  if (q == 0) p = 1;
}

std::string RationalSlope::str() const {
  if (q == 0) return "inf";
  if (q == 1) return std::to_string(p);
  return std::to_string(p) + "/" + std::to_string(q);
}

RationalSlope parse_slope(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "inf" || s == "infinity" || s == "1/0") return RationalSlope::infinity();
  try {
    auto slash = s.find('/');
    size_t used = 0;
    if (slash == std::string::npos) {
      long long p = std::stoll(s, &used);
      if (used != s.size()) throw ParseError("");
      return RationalSlope(p, 1);
    }
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    long long p = std::stoll(a, &used);
    if (used != a.size()) throw ParseError("");
    long long q = std::stoll(b, &used);
    if (used != b.size()) throw ParseError("");
    return RationalSlope(p, q);
  } catch (const std::exception&) {
    throw ParseError("bad slope '" + text + "'; expected p/q, an integer, or inf");
  }
}

}  // namespace kf
