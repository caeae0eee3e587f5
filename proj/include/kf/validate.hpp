#pragma once

#include <string>
#include <vector>

#include "kf/khovanov.hpp"
#include "kf/tangle.hpp"

namespace kf {

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::string tmpl;
  std::vector<ValidationCheck> checks;
  bool ok() const;
};

// Filling conventions: T(inf) is a knot with det 1 and Kh of dimension 1, T(0) a
// 2-component link with det 0. Failures are reported, never thrown.
ValidationReport validate_template(const TangleTemplate& t, const KhOptions& kh = {});

}  // namespace kf
