#include "kf/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace kf {

namespace {

const char* const kEndNames[4] = {"NW", "NE", "SE", "SW"};

void check_format(const Json& j, const std::string& what) {
  if (!j.is_object()) throw ParseError(what + " must be a JSON object");
  if (j.contains("format") && j.at("format") != kFormat)
    throw ParseError(what + " has format " + j.at("format").dump() + ", expected \"" + kFormat + "\"");
}

template <class T>
T get(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw ParseError(what + " lacks \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ParseError(what + " field \"" + key + "\" has the wrong type: " + e.what());
  }
}

std::vector<Tuple> tuples_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": \"pd\" must be a list of 4-tuples");
  std::vector<Tuple> out;
  for (const auto& x : j) {
    if (!x.is_array() || x.size() != 4)
      throw ParseError(what + ": crossing " + x.dump() + " must have exactly 4 arc labels");
    Tuple t;
    for (int k = 0; k < 4; ++k) {
      if (!x[k].is_number_integer()) throw ParseError(what + ": arc labels must be integers, got " + x[k].dump());
      t[k] = x[k].get<int>();
    }
    out.push_back(t);
  }
  return out;
}

Json tuples_to_json(const std::vector<Tuple>& pd) {
  Json a = Json::array();
  for (auto& x : pd) a.push_back({x[0], x[1], x[2], x[3]});
  return a;
}

std::string fmt_int(long long v) { return std::to_string(v); }

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(what + " is not valid JSON: " + e.what());
  }
}

PlanarDiagram diagram_from_json(const Json& j) {
  const std::string what = "PD code";
  check_format(j, what);
  DiagramOptions o;
  o.name = j.value("name", std::string("diagram"));
  auto tuples = tuples_from_json(j.contains("pd") ? j.at("pd") : Json(), what);
  if (j.contains("orientations")) {
    for (const auto& p : j.at("orientations")) {
      if (!p.is_array() || p.size() != 2) throw ParseError(what + ": orientations are [from, to] arc pairs");
      o.orientations.push_back({p[0].get<int>(), p[1].get<int>()});
    }
  }
  if (j.contains("basepoint")) o.basepoint = get<int>(j, "basepoint", what);
  o.free_loops = j.value("free_loops", 0);
  if (tuples.empty()) {
    if (!j.value("unknot", false) && o.free_loops == 0)
      throw ParseError(what + ": an empty PD code needs \"unknot\": true or \"free_loops\"");
    PlanarDiagram d = PlanarDiagram::unlink(std::max(1, o.free_loops));
    if (j.contains("name")) d.set_name(o.name);
    return d;
  }
  return PlanarDiagram::from_tuples(std::move(tuples), o);
}

Json diagram_to_json(const PlanarDiagram& d) {
  Json j;
  j["format"] = kFormat;
  j["name"] = d.name();
  j["pd"] = tuples_to_json(d.pd());
  if (d.crossing_count() == 0) {
    if (d.free_loops() == 1) j["unknot"] = true;
  } else {
    Json o = Json::array();
    for (auto [a, b] : d.orientation_pairs()) o.push_back({a, b});
    j["orientations"] = o;
    j["basepoint"] = d.basepoint();
  }
  if (d.free_loops() > 0 && !(d.crossing_count() == 0 && d.free_loops() == 1)) j["free_loops"] = d.free_loops();
  return j;
}

BraidWord braid_from_json(const Json& j) {
  const std::string what = "braid";
  check_format(j, what);
  if (j.contains("word") && j.at("word").is_string())
    return parse_braid(j.at("word").get<std::string>(), j.value("strands", 0));
  BraidWord b;
  b.letters = get<std::vector<int>>(j, "word", what);
  int need = 1;
  for (int L : b.letters) {
    if (L == 0) throw ParseError("braid letters must be nonzero");
    need = std::max(need, std::abs(L) + 1);
  }
  b.strands = j.value("strands", need);
  if (b.strands < need) throw ParseError("braid needs at least " + std::to_string(need) + " strands");
  return b;
}

Json braid_to_json(const BraidWord& b) {
  return {{"format", kFormat}, {"strands", b.strands}, {"word", b.letters}};
}

TemplateSpec template_from_json(const Json& j) {
  const std::string what = "template";
  check_format(j, what);
  TemplateSpec s;
  TangleTemplate& t = s.tmpl;
  t.name = j.value("name", std::string("template"));
  t.pd = tuples_from_json(j.contains("pd") ? j.at("pd") : Json::array(), what);
  const Json& ends = j.contains("ends") ? j.at("ends") : Json();
  if (!ends.is_object()) throw ParseError(what + " lacks \"ends\" {NW, NE, SE, SW}");
  for (const char* e : kEndNames) t.ends[e] = get<int>(ends, e, what + " ends");
  if (ends.size() != 4) throw ParseError(what + " ends must be exactly NW, NE, SE, SW");
  if (j.contains("twist_site")) {
    auto site = get<std::vector<std::string>>(j, "twist_site", what);
    std::set<std::string> got(site.begin(), site.end());
    if (got != std::set<std::string>{"NE", "SE"})
      throw ParseError(what + ": only the twist site [\"NE\", \"SE\"] is supported");
  }
  std::string hand = j.value("positive_twist", std::string("right-handed"));
  if (hand != "right-handed" && hand != "left-handed")
    throw ParseError(what + ": positive_twist must be right-handed or left-handed");
  t.right_handed = hand == "right-handed";
  t.orientation_rule = j.value("orientation_rule", std::string("parallel"));
  t.twist_offset = j.value("twist_offset", 0);
  if (j.contains("n_guess")) t.n_guess = get<int>(j, "n_guess", what);
  t.basepoint = j.value("basepoint", 0);
  if (j.contains("hints"))
    for (const auto& h : j.at("hints"))
      t.hints.push_back({{get<int>(h, "crossing", what + " hint"), get<int>(h, "slot", what + " hint")},
                         h.value("head", true)});
  s.mirror = j.value("mirror", false);
  check_template_shape(t);
  return s;
}

Json template_to_json(const TemplateSpec& s) {
  const TangleTemplate& t = s.tmpl;
  Json j;
  j["format"] = kFormat;
  j["name"] = t.name;
  j["pd"] = tuples_to_json(t.pd);
  Json ends;
  for (auto& [k, v] : t.ends) ends[k] = v;
  j["ends"] = ends;
  j["twist_site"] = {"NE", "SE"};
  j["positive_twist"] = t.right_handed ? "right-handed" : "left-handed";
  j["orientation_rule"] = t.orientation_rule;
  j["twist_offset"] = t.twist_offset;
  if (t.n_guess) j["n_guess"] = *t.n_guess;
  if (t.basepoint) j["basepoint"] = t.basepoint;
  if (!t.hints.empty()) {
    Json h = Json::array();
    for (auto& x : t.hints) h.push_back({{"crossing", x.port.crossing}, {"slot", x.port.slot}, {"head", x.head}});
    j["hints"] = h;
  }
  j["mirror"] = s.mirror;
  return j;
}

Json entries_to_json(const std::map<Bigrade, int>& e) {
  Json a = Json::array();
  for (auto& [g, v] : e)
    if (v) a.push_back({{"h", g.h}, {"q", g.q}, {"dim", v}});
  return a;
}

std::map<Bigrade, int> entries_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("\"entries\" must be a list");
  std::map<Bigrade, int> out;
  for (const auto& x : j) {
    Bigrade g{get<int>(x, "h", "entry"), get<int>(x, "q", "entry")};
    int v = get<int>(x, "dim", "entry");
    if (v <= 0) throw ParseError("entry dimensions must be positive");
    if (out.count(g)) throw ParseError("duplicate entry at (" + fmt_int(g.h) + ", " + fmt_int(g.q) + ")");
    out[g] = v;
  }
  return out;
}

Json kh_to_json(const KhTable& t) {
  Json j;
  j["format"] = kFormat;
  j["link"] = t.link;
  j["entries"] = entries_to_json(t.entries);
  j["total_dim"] = t.total_dim();
  if (!t.entries.empty()) j["width"] = width(t);
  return j;
}

KhTable kh_from_json(const Json& j) {
  check_format(j, "Kh table");
  KhTable t;
  t.link = j.value("link", std::string());
  t.entries = entries_from_json(j.at("entries"));
  return t;
}

Json kappa_to_json(const KappaTable& k) {
  Json j;
  j["format"] = kFormat;
  j["template"] = k.tmpl;
  j["N"] = k.N;
  j["range"] = {k.lo, k.hi};
  j["mirror"] = k.mirror;
  j["entries"] = entries_to_json(k.entries);
  j["total_dim"] = k.total_dim();
  if (!k.entries.empty()) j["width"] = kappa_width(k);
  return j;
}

KappaTable kappa_from_json(const Json& j) {
  check_format(j, "kappa table");
  KappaTable k;
  k.tmpl = j.value("template", std::string());
  k.N = get<int>(j, "N", "kappa table");
  if (j.contains("range")) {
    auto r = get<std::vector<int>>(j, "range", "kappa table");
    if (r.size() != 2) throw ParseError("kappa range must be [lo, hi]");
    k.lo = r[0], k.hi = r[1];
  }
  k.mirror = j.value("mirror", false);
  k.entries = entries_from_json(j.at("entries"));
  return k;
}

Json family_to_json(const FillingFamily& f, const TransitionProfile& p) {
  std::map<int, const StepClass*> step;
  for (auto& s : p.evidence) step[s.n] = &s;
  Json a = Json::array();
  for (auto& [n, t] : f.tables) {
    Json e{{"n", n}, {"link", t.link}, {"total_dim", t.total_dim()}};
    if (!t.entries.empty()) e["width"] = width(t);
    if (auto it = step.find(n); it != step.end()) {
      e["step"] = it->second->kind == StepKind::Surjective ? "surjective" : "injective";
      e["defect"] = {{"h", it->second->defect.h}, {"q", it->second->defect.q}};
      e["offset"] = f.offsets.at(n);
    }
    a.push_back(e);
  }
  return {{"N", p.N}, {"margin_below", p.margin_below}, {"margin_above", p.margin_above}, {"fillings", a}};
}

Json poly_to_json(const LaurentPoly& p) {
  Json j = Json::object();
  for (auto [e, c] : p.terms()) j[std::to_string(e)] = c;
  return j;
}

Json lspace_to_json(const PlanarDiagram& d) {
  AlexanderPoly a = alexander(d);
  Json j;
  j["format"] = kFormat;
  j["link"] = d.name();
  j["alexander"] = poly_to_json(a.poly);
  j["alexander_text"] = a.poly.str("t");
  j["det"] = determinant(d);
  bool form = is_lspace_form(a);
  j["lspace_form"] = form;
  if (form) {
    FormalSemigroup s = formal_semigroup(a);
    j["semigroup"] = {{"elements_below", s.elements_below()},
                      {"threshold", s.threshold},
                      {"is_semigroup", is_actual_semigroup(s)}};
  }
  return j;
}

Json validation_to_json(const ValidationReport& r) {
  Json a = Json::array();
  for (auto& c : r.checks) a.push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"format", kFormat}, {"template", r.tmpl}, {"checks", a}, {"pass", r.ok()}};
}

namespace {

struct Grid {
  int hlo = 0, hhi = -1, dlo = 0, dhi = -1;
  std::map<std::pair<int, int>, int> cell;  // (delta, h)
};

Grid make_grid(const std::map<Bigrade, int>& e) {
  Grid g;
  bool first = true;
  for (auto& [b, v] : e) {
    if (!v) continue;
    int d = b.q - 2 * b.h;
    if (first) g.hlo = g.hhi = b.h, g.dlo = g.dhi = d, first = false;
    g.hlo = std::min(g.hlo, b.h), g.hhi = std::max(g.hhi, b.h);
    g.dlo = std::min(g.dlo, d), g.dhi = std::max(g.dhi, d);
    g.cell[{d, b.h}] += v;
  }
  return g;
}

// Deltas present in the grid, highest first; parity steps of 2 keep gaps visible.
std::vector<int> grid_rows(const Grid& g) {
  std::vector<int> rows;
  for (int d = g.dhi; d >= g.dlo; d -= 2) rows.push_back(d);
  if (!rows.empty() && rows.back() != g.dlo) rows.push_back(g.dlo);
  return rows;
}

}  // namespace

std::string grid_text(const std::map<Bigrade, int>& e) {
  Grid g = make_grid(e);
  if (g.hhi < g.hlo) return "(empty)\n";
  auto rows = grid_rows(g);
  std::ostringstream os;
  const int w = 4;
  os << std::string(8, ' ');
  for (int h = g.hlo; h <= g.hhi; ++h) {
    std::string s = std::to_string(h);
    os << std::string(w - std::min<int>(w, static_cast<int>(s.size())), ' ') << s;
  }
  os << "   h\n";
  for (int d : rows) {
    std::string lab = "d=" + std::to_string(d);
    os << lab << std::string(8 - std::min<size_t>(8, lab.size()), ' ');
    for (int h = g.hlo; h <= g.hhi; ++h) {
      auto it = g.cell.find({d, h});
      std::string s = it == g.cell.end() ? "." : std::to_string(it->second);
      os << std::string(w - std::min<int>(w, static_cast<int>(s.size())), ' ') << s;
    }
    os << "\n";
  }
  return os.str();
}

std::string grid_latex(const std::map<Bigrade, int>& e) {
  Grid g = make_grid(e);
  std::ostringstream os;
  if (g.hhi < g.hlo) return "% empty table\n";
  const int cols = g.hhi - g.hlo + 1;
  os << "\\begin{tabular}{r|" << std::string(cols, 'c') << "}\n";
  os << "$\\delta \\backslash h$";
  for (int h = g.hlo; h <= g.hhi; ++h) os << " & $" << h << "$";
  os << " \\\\\n\\hline\n";
  for (int d : grid_rows(g)) {
    os << "$" << d << "$";
    for (int h = g.hlo; h <= g.hhi; ++h) {
      auto it = g.cell.find({d, h});
      os << " & ";
      if (it != g.cell.end()) os << "$" << it->second << "$";
    }
    os << " \\\\\n";
  }
  os << "\\end{tabular}\n";
  return os.str();
}

}  // namespace kf
