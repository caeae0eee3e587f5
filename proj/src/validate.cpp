#include "kf/validate.hpp"

#include <optional>

#include "kf/lspace.hpp"

namespace kf {

bool ValidationReport::ok() const {
  for (auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

ValidationReport validate_template(const TangleTemplate& t, const KhOptions& kh) {
  ValidationReport r;
  r.tmpl = t.name;
  auto add = [&](std::string name, bool pass, std::string detail) {
    r.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  try {
    check_template_shape(t);
    add("shape", true, "four ends, every arc used twice");
  } catch (const Error& e) {
    add("shape", false, e.what());
    return r;
  }

  auto filled = [&](const RationalSlope& s, const std::string& label) -> std::optional<PlanarDiagram> {
    try {
      return fill(t, s);
    } catch (const Error& e) {
      add("fill " + label, false, e.what());
      return std::nullopt;
    }
  };
  auto measure = [&](const std::string& name, long long want, auto&& compute) {
    try {
      long long got = compute();
      add(name, got == want, std::to_string(got) + (got == want ? " as required" : ", expected " + std::to_string(want)));
    } catch (const Error& e) {
      add(name, false, e.what());
    }
  };

  if (auto inf = filled(RationalSlope::infinity(), "inf")) {
    measure("det T(inf) = 1", 1, [&] { return determinant(*inf); });
    measure("T(inf) has 1 component", 1, [&] { return static_cast<long long>(inf->component_count()); });
    measure("dim Kh T(inf) = 1", 1, [&] { return static_cast<long long>(kh_table(*inf, kh).total_dim()); });
  }
  if (auto zero = filled(RationalSlope(0, 1), "0")) {
    measure("det T(0) = 0", 0, [&] { return determinant(*zero); });
    measure("T(0) has 2 components", 2, [&] { return static_cast<long long>(zero->component_count()); });
  }
  return r;
}

}  // namespace kf
