#pragma once

#include <map>
#include <string>

namespace kf {

// Integer Laurent polynomial in one variable; zero coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly monomial(int exp, long long coeff = 1);

  const std::map<int, long long>& terms() const { return c_; }
  long long coeff(int e) const;
  void add(int e, long long v);
  bool is_zero() const { return c_.empty(); }
  int min_exp() const;
  int max_exp() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly shifted(int k) const;
  LaurentPoly negated() const;
  bool operator==(const LaurentPoly& o) const = default;

  long long eval(long long x) const;  // requires x = ±1 when negative exponents occur
  std::string str(const std::string& var = "q") const;

 private:
  std::map<int, long long> c_;
};

}  // namespace kf
