#pragma once

#include <map>
#include <string>

#include "kf/diagram.hpp"
#include "kf/f2.hpp"
#include "kf/laurent.hpp"

namespace kf {

struct KhTable {
  std::map<Bigrade, int> entries;
  std::string link;
  int total_dim() const;
  int dim(int h, int q) const;
  bool operator==(const KhTable& o) const { return entries == o.entries; }
};

enum class KhMethod { Auto, Cube, Scan };

struct KhOptions {
  KhMethod method = KhMethod::Auto;
  int cube_max_crossings = 12;  // Auto switches to scanning above this
  long long max_generators = 40'000'000;
  int threads = 1;
  bool cancel = true;
  int scan_start = -1;  // first crossing for scanning; -1 uses the basepoint arc's tail
};

// Cube-of-resolutions complex restricted to the basepoint-labelled-x subcomplex.
GradedComplexF2 build_reduced_complex(const PlanarDiagram& d, const KhOptions& opt = {});

KhTable kh_table(const PlanarDiagram& d, const KhOptions& opt = {});

// Scanning algorithm: crossings are added one at a time to a complex over
// crossingless tangles, with delooping and Gaussian elimination after each step.
KhTable kh_table_scan(const PlanarDiagram& d, const KhOptions& opt = {});

int width(const KhTable& t);
int delta_min(const KhTable& t);
int delta_max(const KhTable& t);

// Σ (-1)^h dim q^q
LaurentPoly jones_from_kh(const KhTable& t);

// Kauffman bracket state sum, writhe-normalised, rewritten in the exponent-q convention.
LaurentPoly kauffman_jones(const PlanarDiagram& d, int max_crossings = 20);

// (h,q) -> (-h,-q)
KhTable mirror_table(const KhTable& t);

}  // namespace kf
