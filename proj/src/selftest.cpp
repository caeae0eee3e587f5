#include "kf/selftest.hpp"

namespace kf {

KhOptions RunOptions::kh() const {
  KhOptions k;
  k.threads = threads;
  k.max_generators = max_generators;
  return k;
}

FamilyOptions RunOptions::family(bool mirror) const {
  FamilyOptions f;
  f.kh = kh();
  f.threads = threads;
  f.mirror = mirror;
  return f;
}

namespace {

const TangleTemplate& need_template(const CatalogEntry& e) {
  if (!e.tmpl) throw Error("catalog entry '" + e.name + "' has no tangle template");
  return e.tmpl->tmpl;
}

}  // namespace

Json evaluate_check(CheckContext& ctx, const std::string& check) {
  const CatalogEntry& e = ctx.entry;
  if (check.rfind("det T(", 0) == 0 && check.back() == ')') {
    RationalSlope s = parse_slope(check.substr(6, check.size() - 7));
    return determinant(fill(need_template(e), s));
  }
  if (check == "validate") return validate_template(need_template(e), ctx.opt.kh()).ok();
  if (check == "N" || check == "kappa" || check == "kappa_total_dim" || check == "kappa_width") {
    if (!ctx.kappa) {
      KappaOptions ko;
      ko.family = ctx.opt.family(e.mirror);
      ctx.kappa = run_kappa(need_template(e), ko);
    }
    if (check == "N") return ctx.kappa->profile.N;
    if (check == "kappa") return entries_to_json(ctx.kappa->kappa.entries);
    if (check == "kappa_total_dim") return ctx.kappa->kappa.total_dim();
    return kappa_width(ctx.kappa->kappa);
  }

  PlanarDiagram d = e.knot_diagram();
  if (check == "crossings") return d.crossing_count();
  if (check == "components") return d.component_count();
  if (check == "det") return determinant(d);
  if (check == "kh_total" || check == "kh_entries" || check == "width") {
    KhTable t = kh_table(d, ctx.opt.kh());
    if (check == "kh_total") return t.total_dim();
    if (check == "width") return width(t);
    return entries_to_json(t.entries);
  }
  AlexanderPoly a = alexander(d);
  if (check == "alexander") return poly_to_json(a.poly);
  if (check == "lspace_form") return is_lspace_form(a);
  if (check == "semigroup_elements") return formal_semigroup(a).elements_below();
  if (check == "semigroup_threshold") return formal_semigroup(a).threshold;
  if (check == "is_semigroup") return is_actual_semigroup(formal_semigroup(a));
  throw Error("unknown check '" + check + "'");
}

Json run_selftest(const RunOptions& opt) {
  Json results = Json::array();
  bool all = true;
  int passed = 0;
  for (const CatalogEntry& e : builtin_catalog()) {
    CheckContext ctx{e, opt, std::nullopt};
    for (const Fixture& f : e.fixtures) {
      Json got;
      std::string error;
      try {
        got = evaluate_check(ctx, f.check);
      } catch (const std::exception& ex) {
        error = ex.what();
      }
      bool pass = error.empty() && got == f.expected;
      all = all && pass;
      passed += pass;
      Json r{{"entry", e.name}, {"check", f.check}, {"expected", f.expected}, {"source", f.source}, {"pass", pass}};
      if (error.empty())
        r["got"] = got;
      else
        r["error"] = error;
      results.push_back(r);
    }
  }
  return {{"format", kFormat},
          {"selftest", results},
          {"passed", passed},
          {"total", static_cast<int>(results.size())},
          {"pass", all}};
}

}  // namespace kf
