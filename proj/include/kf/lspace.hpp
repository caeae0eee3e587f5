#pragma once

#include <map>
#include <vector>

#include "kf/diagram.hpp"
#include "kf/laurent.hpp"

namespace kf {

// Symmetric Alexander polynomial with Δ(1) = 1.
struct AlexanderPoly {
  LaurentPoly poly;
  int degree() const { return poly.is_zero() ? 0 : poly.max_exp(); }
  long long at_minus_one() const { return poly.eval(-1); }
};

AlexanderPoly alexander(const PlanarDiagram& d);

// |det| of a Goeritz matrix; 0 for split diagrams.
long long determinant(const PlanarDiagram& d);

// Coefficients ±1, alternating in sign, +1 at both ends.
bool is_lspace_form(const AlexanderPoly& p);

// S = [a0, a1-1] ∪ [a2, a3-1] ∪ ... ∪ [a_2k, ∞) with threshold g2 = a_2k.
struct FormalSemigroup {
  std::vector<std::pair<int, int>> intervals;  // closed, below the threshold
  int threshold = 0;
  bool contains(long long s) const;
  std::vector<int> elements_below() const;
};

FormalSemigroup formal_semigroup(const AlexanderPoly& p);
bool is_actual_semigroup(const FormalSemigroup& s);

// Exponents with coefficient 1 in the expansion of Δ(t)/(1-t), shifted to start at 0,
// up to and including `degree`. Independent of the interval extraction.
std::vector<int> semigroup_series(const AlexanderPoly& p, int degree);

}  // namespace kf
