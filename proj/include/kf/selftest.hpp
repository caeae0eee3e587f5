#pragma once

#include "kf/catalog.hpp"

namespace kf {

struct RunOptions {
  int threads = 1;
  long long max_generators = KhOptions{}.max_generators;
  KhOptions kh() const;
  FamilyOptions family(bool mirror) const;
};

// Value of a named check on an entry, e.g. "det", "kh_total", "det T(19)", "kappa".
// The cache keeps the kappa run shared between the kappa checks of one entry.
struct CheckContext {
  const CatalogEntry& entry;
  RunOptions opt;
  std::optional<KappaResult> kappa;
};
Json evaluate_check(CheckContext& ctx, const std::string& check);

// Every fixture of every built-in entry; deterministic output without timings.
Json run_selftest(const RunOptions& opt = {});

}  // namespace kf
