#include "kf/kappa.hpp"

#include <algorithm>
#include <optional>

#include "kf/parallel.hpp"

namespace kf {

namespace {

struct Difference {
  Bigrade at;  // in the frame of T(n-1)
  int sign = 0;
};

// T(n) shifted by the skein rule with offset s, minus T(n-1); set when the result is a single ±1.
std::optional<Difference> concentrated(const KhTable& a, const KhTable& b, int s) {
  std::map<Bigrade, int> diff = b.entries;
  for (auto& [g, v] : diff) v = -v;
  for (auto& [g, v] : a.entries) diff[{g.h, g.q - 1 + s}] += v;
  std::optional<Difference> out;
  for (auto& [g, v] : diff) {
    if (v == 0) continue;
    if ((v != 1 && v != -1) || out) return std::nullopt;
    out = Difference{g, v};
  }
  return out;
}

std::vector<int> candidate_offsets(const KhTable& a, const KhTable& b) {
  std::vector<int> out;
  if (a.entries.empty() || b.entries.empty()) return out;
  auto qrange = [](const KhTable& t) {
    int lo = INT32_MAX, hi = INT32_MIN;
    for (auto& [g, v] : t.entries) lo = std::min(lo, g.q), hi = std::max(hi, g.q);
    return std::pair{lo, hi};
  };
  auto [alo, ahi] = qrange(a);
  auto [blo, bhi] = qrange(b);
  for (int s = blo - ahi - 2; s <= bhi - alo + 4; ++s)
    if (concentrated(a, b, s)) out.push_back(s);
  return out;
}

// Offsets for every step with both ends present; ambiguous steps follow the affine fit of
// the unambiguous ones.
void resolve_offsets(FillingFamily& f) {
  std::map<int, std::vector<int>> cand;
  for (int n = f.lo + 1; n <= f.hi; ++n) {
    const KhTable& a = f.tables.at(n);
    const KhTable& b = f.tables.at(n - 1);
    int step = a.total_dim() - b.total_dim();
    if (step != 1 && step != -1)
      throw Error("dimension step " + std::to_string(b.total_dim()) + " -> " + std::to_string(a.total_dim()) +
                  " between T(" + std::to_string(n - 1) + ") and T(" + std::to_string(n) + ") is not ±1");
    cand[n] = candidate_offsets(a, b);
    if (cand[n].empty())
      throw Error("graded difference between T(" + std::to_string(n - 1) + ") and T(" + std::to_string(n) +
                  ") is not concentrated in one bigrading for any q-offset");
  }
  std::vector<std::pair<int, int>> fixed;
  for (auto& [n, c] : cand)
    if (c.size() == 1) fixed.push_back({n, c[0]});
  f.offsets.clear();
  for (auto& [n, c] : cand) {
    if (c.size() == 1) {
      f.offsets[n] = c[0];
      continue;
    }
    if (fixed.empty()) throw Error("q-offset of step " + std::to_string(n) + " is ambiguous");
    long long predicted;
    if (fixed.size() == 1) {
      predicted = fixed[0].second;
    } else {
      auto [n0, s0] = fixed.front();
      auto [n1, s1] = fixed.back();
      if ((s1 - s0) % (n1 - n0)) throw Error("unambiguous q-offsets are not affine in n");
      long long slope = (s1 - s0) / (n1 - n0);
      for (auto [m, s] : fixed)
        if (s != s0 + slope * (m - n0)) throw Error("unambiguous q-offsets are not affine in n");
      predicted = s0 + slope * (n - n0);
    }
    if (std::find(c.begin(), c.end(), predicted) == c.end())
      throw Error("q-offset of step " + std::to_string(n) + " is ambiguous and matches no affine fit");
    f.offsets[n] = static_cast<int>(predicted);
  }
}

KhTable filling_table(const TangleTemplate& t, int n, bool mirror, const KhOptions& kh) {
  PlanarDiagram d = fill(t, n);
  if (mirror) d = d.mirrored();
  KhTable k = kh_table(d, kh);
  k.link = d.name();
  return k;
}

}  // namespace

void extend_family(FillingFamily& f, int lo, int hi, const FamilyOptions& opt) {
  if (lo > hi) throw Error("empty filling range");
  if (f.hi >= f.lo) lo = std::min(lo, f.lo), hi = std::max(hi, f.hi);
  std::vector<int> todo;
  for (int n = lo; n <= hi; ++n)
    if (!f.tables.count(n)) todo.push_back(n);
  std::vector<KhTable> out(todo.size());
  KhOptions kh = opt.kh;
  if (opt.threads > 1) kh.threads = 1;
  parallel_for(static_cast<int>(todo.size()), opt.threads,
               [&](int i) { out[i] = filling_table(f.tmpl, todo[i], f.mirror, kh); });
  for (size_t i = 0; i < todo.size(); ++i) f.tables[todo[i]] = std::move(out[i]);
  f.lo = lo;
  f.hi = hi;
  resolve_offsets(f);
}

FillingFamily compute_family(const TangleTemplate& t, int lo, int hi, const FamilyOptions& opt) {
  FillingFamily f;
  f.tmpl = t;
  f.mirror = opt.mirror;
  extend_family(f, lo, hi, opt);
  return f;
}

std::vector<StepClass> classify_steps(const FillingFamily& f) {
  std::vector<StepClass> out;
  for (int n = f.lo + 1; n <= f.hi; ++n) {
    auto d = concentrated(f.tables.at(n), f.tables.at(n - 1), f.offsets.at(n));
    if (!d) throw Error("family offsets are stale");
    StepClass s;
    s.n = n;
    if (d->sign > 0) {
      s.kind = StepKind::Surjective;
      s.defect = {d->at.h, d->at.q + 1 - f.offsets.at(n)};
    } else {
      s.kind = StepKind::Injective;
      s.defect = d->at;
    }
    out.push_back(s);
  }
  return out;
}

TransitionProfile find_transition(const FillingFamily& f) {
  TransitionProfile p;
  p.evidence = classify_steps(f);
  auto first = std::find_if(p.evidence.begin(), p.evidence.end(),
                            [](const StepClass& s) { return s.kind == StepKind::Surjective; });
  if (first == p.evidence.end())
    throw RangeError("no surjective step in [" + std::to_string(f.lo) + ", " + std::to_string(f.hi) +
                     "]; widen the range upwards");
  p.N = first->n;
  for (auto& s : p.evidence)
    if (s.n >= p.N + 2 && s.kind != StepKind::Surjective)
      throw Error("injective step at n = " + std::to_string(s.n) + " after the transition at N = " +
                  std::to_string(p.N) + "; the family is not monotone");
  p.margin_below = p.N - 1 - f.lo;
  p.margin_above = std::max(0, f.hi - (p.N + 1));
  return p;
}

int KappaTable::total_dim() const {
  int t = 0;
  for (auto& [g, v] : entries) t += v;
  return t;
}

KappaTable compute_kappa(const FillingFamily& f, const TransitionProfile& p) {
  const int N = p.N;
  const int need_lo = std::min(0, N - 1), need_hi = std::max(0, N + 1);
  for (int n = need_lo; n <= need_hi; ++n)
    if (!f.tables.count(n)) throw Error("compute_kappa needs the table of T(" + std::to_string(n) + ")");
  std::map<int, StepClass> step;
  for (auto& s : classify_steps(f)) step[s.n] = s;

  // image of f_{N+1} inside T(N)
  std::map<Bigrade, int> im = f.tables.at(N).entries;
  const StepClass& upper = step.at(N + 1);
  if (upper.kind == StepKind::Injective) --im[upper.defect];
  // then through f_N into T(N-1)
  const StepClass& lower = step.at(N);
  if (lower.kind == StepKind::Surjective) {
    if (upper.kind == StepKind::Injective && upper.defect == lower.defect)
      throw Error("kernel of f_N and cokernel of f_{N+1} share a bigrading; the image is not determined by dimensions");
    --im[lower.defect];
  }
  std::map<Bigrade, int> in_prev;
  for (auto& [g, v] : im)
    if (v > 0) in_prev[{g.h, g.q - 1 + f.offsets.at(N)}] = v;
    else if (v < 0) throw Error("negative graded dimension in the image of f_N∘f_{N+1}");

  // consistency: the image survives into every earlier table of the range
  int shift = 0;
  for (int n = N - 1; n > f.lo; --n) {
    shift += f.offsets.at(n) - 1;
    for (auto& [g, v] : in_prev)
      if (f.tables.at(n - 1).dim(g.h, g.q + shift) < v)
        throw Error("κ does not embed in Kh(T(" + std::to_string(n - 1) + "))");
  }

  // q-shift from T(N-1) to T(0), along the skein maps
  auto path_to = [&](int target) {
    int s = 0;
    for (int n = N - 1; n > target; --n) s += f.offsets.at(n) - 1;
    for (int n = N; n <= target; ++n) s -= f.offsets.at(n) - 1;
    return s;
  };
  int direct = path_to(0);
  // second path: anchor at T(1), then realign T(1) with T(0) from scratch
  int via_one = path_to(1);
  auto last = candidate_offsets(f.tables.at(1), f.tables.at(0));
  if (std::find(last.begin(), last.end(), f.offsets.at(1)) == last.end())
    throw Error("T(1) and T(0) do not align under the stored offset");
  via_one += f.offsets.at(1) - 1;
  if (via_one != direct) throw Error("normalisation paths to T(0) disagree");

  KappaTable k;
  k.tmpl = f.tmpl.name;
  k.N = N;
  k.lo = f.lo;
  k.hi = f.hi;
  k.mirror = f.mirror;
  for (auto& [g, v] : in_prev) k.entries[{g.h, g.q + direct}] = v;
  return k;
}

int kappa_width(const KappaTable& k) {
  if (k.entries.empty()) throw Error("empty κ has no width");
  KhTable t;
  t.entries = k.entries;
  return width(t);
}

KappaResult run_kappa(const TangleTemplate& t, const KappaOptions& opt) {
  int lo, hi;
  if (opt.has_range) {
    lo = opt.lo, hi = opt.hi;
  } else {
    int g = t.n_guess.value_or(0);
    lo = g - 5, hi = g + 5;
  }
  if (lo > hi) throw Error("empty filling range");
  const int centre = lo + (hi - lo) / 2;
  int half = std::max(1, (hi - lo + 1) / 2);
  KappaResult r;
  r.family.tmpl = t;
  r.family.mirror = opt.family.mirror;
  for (;;) {
    extend_family(r.family, lo, hi, opt.family);
    std::string why;
    try {
      r.profile = find_transition(r.family);
      if (r.profile.margin_below >= opt.min_margin && r.profile.margin_above >= opt.min_margin) break;
      why = "transition at N = " + std::to_string(r.profile.N) + " lacks a margin of " +
            std::to_string(opt.min_margin) + " steps";
    } catch (const RangeError& e) {
      why = e.what();
    }
    if (half >= opt.max_half_width)
      throw RangeError(why + " within the widening cap [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    half = std::min(2 * half, opt.max_half_width);
    lo = std::min(lo, centre - half);
    hi = std::max(hi, centre + half);
  }
  const int N = r.profile.N;
  extend_family(r.family, std::min(r.family.lo, std::min(0, N - 1)), std::max(r.family.hi, std::max(0, N + 1)),
                opt.family);
  r.profile = find_transition(r.family);
  r.kappa = compute_kappa(r.family, r.profile);
  return r;
}

}  // namespace kf
