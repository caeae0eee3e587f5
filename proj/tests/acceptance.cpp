// Acceptance suite: prints one PASS/FAIL line per criterion and exits nonzero on any failure.
// Usage: kf_acceptance PATH_TO_KF
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "kf/catalog.hpp"

using namespace kf;
using Clock = std::chrono::steady_clock;

namespace {

std::string kf_binary;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double s) {
  std::ostringstream os;
  os.precision(1);
  os << std::fixed << s << "s";
  return os.str();
}

// Runs the CLI and returns its stdout; the exit status is stored in status.
std::string run_kf(const std::string& args, int& status) {
  std::string cmd = "\"" + kf_binary + "\" " + args;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw Error("cannot run " + cmd);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int rc = pclose(p);
  status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return out;
}

const Fixture& fixture(const CatalogEntry& e, const std::string& check) {
  for (auto& f : e.fixtures)
    if (f.check == check) return f;
  throw Error("entry " + e.name + " has no fixture " + check);
}

struct Family {
  std::string name;
  CatalogEntry entry;
  FillingFamily fam;
  double max_seconds = 0;
  int max_crossings = 0;
};

// Integer fillings 0..hi computed one by one so that each diagram is timed on its own.
Family timed_family(const std::string& name, int hi) {
  Family f{name, find_catalog_entry(name), {}, 0, 0};
  const TemplateSpec& t = *f.entry.tmpl;
  f.fam.tmpl = t.tmpl;
  f.fam.mirror = t.mirror;
  FamilyOptions opt;
  opt.mirror = t.mirror;
  for (int n = 0; n <= hi; ++n) {
    auto t0 = Clock::now();
    extend_family(f.fam, n == 0 ? 0 : f.fam.lo, n, opt);
    f.max_seconds = std::max(f.max_seconds, seconds_since(t0));
    f.max_crossings = std::max(f.max_crossings, fill(t.tmpl, n).crossing_count());
  }
  return f;
}

bool concentrated_step(const FillingFamily& f, int n) {
  const KhTable& a = f.tables.at(n);
  const KhTable& b = f.tables.at(n - 1);
  std::map<Bigrade, int> diff;
  for (auto& [g, v] : b.entries) diff[g] -= v;
  for (auto& [g, v] : a.entries) diff[{g.h, g.q - 1 + f.offsets.at(n)}] += v;
  int nonzero = 0, size = 0;
  for (auto& [g, v] : diff)
    if (v) ++nonzero, size = std::abs(v);
  return nonzero == 1 && size == 1 && std::abs(a.total_dim() - b.total_dim()) == 1;
}

int failures = 0;

void report(int k, const std::string& title, const std::function<std::string(bool&)>& body) {
  bool ok = true;
  std::string detail;
  try {
    detail = body(ok);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  if (!ok) ++failures;
  std::cout << "criterion " << k << " " << (ok ? "PASS" : "FAIL") << "  " << title << ": " << detail << std::endl;
}

std::string kappa_check(const std::string& name, int N, bool& ok) {
  const CatalogEntry& e = find_catalog_entry(name);
  int status = 0;
  auto t0 = Clock::now();
  std::string out = run_kf("kappa --catalog " + name + " --format json", status);
  double secs = seconds_since(t0);
  Json j = parse_json(out, "kappa output");
  bool n_ok = j.at("N") == N && fixture(e, "N").expected == N;
  bool table_ok = j.at("entries") == fixture(e, "kappa").expected;
  ok = status == 0 && n_ok && table_ok && j.at("format") == kFormat && secs <= 30 * 60;
  std::ostringstream os;
  os << "N = " << j.at("N") << ", kappa total dim " << j.at("total_dim") << ", table "
     << (table_ok ? "matches" : "differs") << ", runtime " << fmt(secs);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: kf_acceptance PATH_TO_KF\n";
    return 2;
  }
  kf_binary = argv[1];

  report(1, "kappa regression K1", [](bool& ok) { return kappa_check("K1", 20, ok); });
  report(2, "kappa regression K2", [](bool& ok) { return kappa_check("K2", 16, ok); });

  std::vector<Family> fams;
  try {
    fams.push_back(timed_family("T1", 25));
    fams.push_back(timed_family("T2", 21));
  } catch (const std::exception& e) {
    std::cout << "family computation failed: " << e.what() << std::endl;
  }

  report(3, "width 2 for integer and rational fillings", [&](bool& ok) {
    ok = fams.size() == 2;
    std::ostringstream os;
    for (auto& f : fams) {
      int count = 0, bad = 0;
      for (auto& [n, t] : f.fam.tables) ++count, bad += width(t) != 2;
      // slopes with q = 2 around the offset, one with q = 3
      int c = f.fam.tmpl.twist_offset;
      std::vector<RationalSlope> rational = {{2 * c - 1, 2}, {2 * c + 1, 2}, {3 * c + 1, 3}};
      int rbad = 0;
      for (auto& s : rational) {
        PlanarDiagram d = fill(f.fam.tmpl, s);
        if (f.fam.mirror) d = d.mirrored();
        rbad += width(kh_table(d)) != 2;
      }
      ok = ok && count >= 10 && bad == 0 && rbad == 0;
      os << f.name << ": " << count - bad << "/" << count << " integer, " << rational.size() - rbad << "/"
         << rational.size() << " rational; ";
    }
    return os.str();
  });

  report(4, "unit dimension steps concentrated in one bigrading", [&](bool& ok) {
    ok = fams.size() == 2;
    std::ostringstream os;
    for (auto& f : fams) {
      int steps = 0, good = 0;
      for (int n = f.fam.lo + 1; n <= f.fam.hi; ++n) ++steps, good += concentrated_step(f.fam, n);
      ok = ok && steps == good && steps >= 10;
      os << f.name << ": " << good << "/" << steps << " steps; ";
    }
    return os.str();
  });

  report(5, "filling conventions and determinants", [&](bool& ok) {
    std::ostringstream os;
    for (auto name : {"T1", "T2"}) {
      CatalogEntry entry = find_catalog_entry(name);
      const TangleTemplate& t = entry.tmpl->tmpl;
      PlanarDiagram inf = fill(t, RationalSlope::infinity());
      long long d0 = determinant(fill(t, 0)), dinf = determinant(inf);
      int khinf = kh_table(inf).total_dim();
      ok = ok && d0 == 0 && dinf == 1 && khinf == 1;
      os << name << ": det T(0)=" << d0 << " det T(inf)=" << dinf << " dim Kh T(inf)=" << khinf << "; ";
    }
    int checked = 0, bad = 0;
    if (fams.empty()) ok = false;
    for (auto& f : fams) {
      if (f.name != "T1") continue;
      for (auto& [n, t] : f.fam.tables)
        if (n >= 12) ++checked, bad += determinant(fill(f.fam.tmpl, n)) != n;
    }
    ok = ok && checked >= 10 && bad == 0;
    os << "det T1(n) = n for " << checked - bad << "/" << checked << " values n >= 12";
    return os.str();
  });

  report(6, "Jones and determinant oracles on the small corpus", [](bool& ok) {
    auto t0 = Clock::now();
    std::vector<PlanarDiagram> corpus = {PlanarDiagram(), PlanarDiagram::unlink(2), PlanarDiagram::unlink(3),
                                         PlanarDiagram::from_tuples({{1, 3, 2, 4}, {3, 1, 4, 2}})};
    for (const char* w : {"1,1,1", "-1,-1,-1", "1,-2,1,-2", "1,1,1,1,1", "1,1,1,1", "1,2,1,2,1,2,1,2",
                          "1,2,1,2,1,2", "1,1,1,1,1,1,1", "1,2,1,1,2,2,1,1,1,1,1,1", "1,-1", "1,1,2,-1,2"})
      corpus.push_back(braid_closure(parse_braid(w)));
    std::mt19937 rng(2024);
    while (corpus.size() < 40) {
      int strands = 2 + static_cast<int>(rng() % 3);
      BraidWord w{strands, {}};
      int len = 1 + static_cast<int>(rng() % 12);
      for (int i = 0; i < len; ++i) {
        int g = 1 + static_cast<int>(rng() % (strands - 1));
        w.letters.push_back(rng() % 2 ? g : -g);
      }
      corpus.push_back(braid_closure(w));
    }
    int jones = 0, knots = 0, dets = 0;
    for (auto& d : corpus) {
      jones += jones_from_kh(kh_table(d)) == kauffman_jones(d);
      if (d.component_count() == 1) ++knots, dets += determinant(d) == std::llabs(alexander(d).at_minus_one());
    }
    double secs = seconds_since(t0);
    ok = jones == static_cast<int>(corpus.size()) && dets == knots && corpus.size() >= 25 && secs <= 120;
    std::ostringstream os;
    os << jones << "/" << corpus.size() << " Jones matches, " << dets << "/" << knots << " knot determinants, "
       << fmt(secs);
    return os.str();
  });

  report(7, "small-knot regression on the full cube and the scanner", [](bool& ok) {
    std::ostringstream os;
    for (auto m : {KhMethod::Cube, KhMethod::Scan}) {
      KhOptions o;
      o.method = m;
      KhTable u = kh_table(PlanarDiagram(), o);
      KhTable t = kh_table(braid_closure(parse_braid("1,1,1")), o);
      KhTable f = kh_table(braid_closure(parse_braid("1,-2,1,-2")), o);
      ok = ok && u.total_dim() == 1 && u.dim(0, 0) == 1 && t.total_dim() == 3 && width(t) == 1 &&
           f.total_dim() == 5 && width(f) == 1;
    }
    ok = ok && determinant(braid_closure(parse_braid("1,1,1"))) == 3 &&
         determinant(braid_closure(parse_braid("1,-2,1,-2"))) == 5;
    os << "unknot (0,0), trefoil dim 3 width 1, figure-eight dim 5 width 1, det 3 and 5";
    return os.str();
  });

  report(8, "formal semigroups", [](bool& ok) {
    auto check = [](const PlanarDiagram& d, bool want) {
      AlexanderPoly a = alexander(d);
      if (!is_lspace_form(a)) return false;
      FormalSemigroup s = formal_semigroup(a);
      int bound = 2 * s.threshold + 5;
      std::vector<int> members;
      for (int k = 0; k <= bound; ++k)
        if (s.contains(k)) members.push_back(k);
      return is_actual_semigroup(s) == want && semigroup_series(a, bound) == members;
    };
    bool k1 = check(find_catalog_entry("K1").knot_diagram(), true);
    bool k2 = check(find_catalog_entry("K2").knot_diagram(), true);
    bool t23 = check(braid_closure(parse_braid("1,1,1")), true);
    bool t34 = check(braid_closure(parse_braid("1,2,1,2,1,2,1,2")), true);
    bool p = check(find_catalog_entry("P-2_3_7").knot_diagram(), false);
    ok = k1 && k2 && t23 && t34 && p;
    std::ostringstream os;
    os << "K1 " << k1 << ", K2 " << k2 << ", T(2,3) " << t23 << ", T(3,4) " << t34 << ", P(-2,3,7) not closed "
       << p;
    return os.str();
  });

  report(9, "single-diagram Kh within 60 seconds", [&](bool& ok) {
    auto t0 = Clock::now();
    PlanarDiagram torus = fill(trivial_tangle(), 15);
    KhTable t = kh_table(torus);
    double small = seconds_since(t0);
    ok = torus.crossing_count() == 15 && t.total_dim() == 15 && small <= 60 && fams.size() == 2;
    std::ostringstream os;
    os << "15-crossing T(15) of the trivial tangle " << fmt(small);
    for (auto& f : fams) {
      ok = ok && f.max_seconds <= 60;
      os << "; slowest " << f.name << " filling " << fmt(f.max_seconds) << " (up to " << f.max_crossings
         << " crossings)";
    }
    return os.str();
  });

  report(10, "selftest JSON is byte-identical across runs and thread counts", [](bool& ok) {
    int s1 = 0, s2 = 0, s3 = 0;
    std::string a = run_kf("selftest --format json --threads 1", s1);
    std::string b = run_kf("selftest --format json --threads 1", s2);
    std::string c = run_kf("selftest --format json --threads 8", s3);
    Json j = parse_json(a, "selftest output");
    ok = s1 == 0 && s2 == 0 && s3 == 0 && a == b && a == c && j.at("pass") == true;
    std::ostringstream os;
    os << j.at("passed") << "/" << j.at("total") << " fixtures pass, " << a.size() << " bytes, repeat "
       << (a == b ? "identical" : "differs") << ", threads 1 vs 8 " << (a == c ? "identical" : "differs");
    return os.str();
  });

  std::cout << (failures ? "acceptance FAILED: " : "acceptance passed: ") << 10 - failures << "/10 criteria"
            << std::endl;
  return failures ? 1 : 0;
}
