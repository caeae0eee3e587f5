#pragma once

#include <map>
#include <string>

#include "json.hpp"
#include "kf/kappa.hpp"
#include "kf/lspace.hpp"
#include "kf/validate.hpp"

namespace kf {

using Json = nlohmann::json;

inline constexpr const char* kFormat = "kf-1";

std::string read_text_file(const std::string& path);
Json parse_json(const std::string& text, const std::string& what = "input");

// PD: {"name", "pd": [[a,b,c,d],...], "orientations": [[from,to],...], "basepoint", "unknot": true, "free_loops"}
PlanarDiagram diagram_from_json(const Json& j);
Json diagram_to_json(const PlanarDiagram& d);

// Braid: {"strands", "word": [...]}
BraidWord braid_from_json(const Json& j);
Json braid_to_json(const BraidWord& b);

// Template: {"name", "pd", "ends", "twist_site": ["NE","SE"], "positive_twist", "orientation_rule",
// "twist_offset", "n_guess", "basepoint", "hints", "mirror"}
struct TemplateSpec {
  TangleTemplate tmpl;
  bool mirror = false;  // convention toggle applied to every filling
};
TemplateSpec template_from_json(const Json& j);
Json template_to_json(const TemplateSpec& t);

Json entries_to_json(const std::map<Bigrade, int>& e);
std::map<Bigrade, int> entries_from_json(const Json& j);

Json kh_to_json(const KhTable& t);
KhTable kh_from_json(const Json& j);

Json kappa_to_json(const KappaTable& k);
KappaTable kappa_from_json(const Json& j);

// Steps, widths and offsets of a family together with the transition.
Json family_to_json(const FillingFamily& f, const TransitionProfile& p);

Json poly_to_json(const LaurentPoly& p);
Json lspace_to_json(const PlanarDiagram& d);
Json validation_to_json(const ValidationReport& r);

// Grids with h across and delta = q - 2h down, highest delta first.
std::string grid_text(const std::map<Bigrade, int>& e);
std::string grid_latex(const std::map<Bigrade, int>& e);

}  // namespace kf
