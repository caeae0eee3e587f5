#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace kf {

class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool get(int r, int c) const { return (row(r)[c >> 6] >> (c & 63)) & 1u; }
  void set(int r, int c, bool v = true);
  void flip(int r, int c) { row_mut(r)[c >> 6] ^= uint64_t{1} << (c & 63); }
  const uint64_t* row(int r) const { return data_.data() + static_cast<size_t>(r) * words_; }
  uint64_t* row_mut(int r) { return data_.data() + static_cast<size_t>(r) * words_; }
  int words() const { return words_; }

  F2Matrix transpose() const;
  F2Matrix operator*(const F2Matrix& o) const;
  bool is_zero() const;
  bool operator==(const F2Matrix& o) const = default;

  static F2Matrix identity(int n);

 private:
  int rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<uint64_t> data_;
};

int rank(const F2Matrix& m);

struct Bigrade {
  int h = 0, q = 0;
  auto operator<=>(const Bigrade&) const = default;
};

// Sparse block: row i lists the targets of source generator i (sorted, distinct).
struct SparseBlock {
  int sources = 0, targets = 0;
  std::vector<std::vector<uint32_t>> rows;
  F2Matrix dense() const;
};

// Bigraded complex with differential of bidegree (+1, 0).
struct GradedComplexF2 {
  std::map<Bigrade, int> gens;
  std::map<Bigrade, SparseBlock> d;  // keyed by source bigrading
  int total_generators() const;
  void check() const;  // shapes and d∘d = 0
};

struct HomologyOptions {
  bool cancel = true;
  int threads = 1;
};

std::map<Bigrade, int> homology_dims(const GradedComplexF2& c, const HomologyOptions& opt = {});

// Pair off generators joined by a differential entry until none remain in any block;
// returns an equivalent complex with the same homology.
GradedComplexF2 cancel_units(const GradedComplexF2& c);

std::string complex_to_json(const GradedComplexF2& c);

}  // namespace kf
