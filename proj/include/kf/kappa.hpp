#pragma once

#include <map>
#include <string>
#include <vector>

#include "kf/khovanov.hpp"
#include "kf/tangle.hpp"

namespace kf {

// No transition inside the computed range; widening the range may help.
class RangeError : public Error {
 public:
  using Error::Error;
};

struct FamilyOptions {
  KhOptions kh;
  int threads = 1;      // fillings computed concurrently
  bool mirror = false;  // mirror every filled diagram
};

// Tables of T(n) for n in [lo, hi]. offsets[n] aligns T(n) with T(n-1): the skein map
// f_n sends (h, q) to (h, q - 1 + offsets[n]).
struct FillingFamily {
  TangleTemplate tmpl;
  bool mirror = false;
  int lo = 0, hi = -1;
  std::map<int, KhTable> tables;
  std::map<int, int> offsets;
};

FillingFamily compute_family(const TangleTemplate& t, int lo, int hi, const FamilyOptions& opt = {});
// Grows the family to cover [lo, hi], computing only the missing fillings.
void extend_family(FillingFamily& f, int lo, int hi, const FamilyOptions& opt = {});

enum class StepKind { Injective, Surjective };

struct StepClass {
  int n = 0;
  StepKind kind = StepKind::Injective;
  // Kernel position in T(n) for a surjective step, cokernel position in T(n-1) otherwise.
  Bigrade defect;
};

std::vector<StepClass> classify_steps(const FillingFamily& f);

struct TransitionProfile {
  int N = 0;
  std::vector<StepClass> evidence;
  int margin_below = 0;  // injective steps verified below N
  int margin_above = 0;  // surjective steps verified above N + 1
};

// N is the first surjective step; every later step except possibly N + 1 must be surjective.
TransitionProfile find_transition(const FillingFamily& f);

struct KappaTable {
  std::map<Bigrade, int> entries;  // q in the frame of T(0)
  std::string tmpl;
  int N = 0;
  int lo = 0, hi = 0;
  bool mirror = false;
  int total_dim() const;
};

// Needs tables from min(0, N-1) to max(0, N+1).
KappaTable compute_kappa(const FillingFamily& f, const TransitionProfile& p);

int kappa_width(const KappaTable& k);

struct KappaOptions {
  FamilyOptions family;
  bool has_range = false;
  int lo = 0, hi = 0;
  int min_margin = 4;
  int max_half_width = 40;  // auto-widening cap around the initial guess
};

struct KappaResult {
  FillingFamily family;
  TransitionProfile profile;
  KappaTable kappa;
};

// compute_family, find_transition (widening as needed), then compute_kappa.
KappaResult run_kappa(const TangleTemplate& t, const KappaOptions& opt = {});

}  // namespace kf
