#include "kf/laurent.hpp"

#include <sstream>

#include "kf/diagram.hpp"

namespace kf {

LaurentPoly LaurentPoly::monomial(int exp, long long coeff) {
  LaurentPoly p;
  p.add(exp, coeff);
  return p;
}

long long LaurentPoly::coeff(int e) const {
  auto it = c_.find(e);
  return it == c_.end() ? 0 : it->second;
}

void LaurentPoly::add(int e, long long v) {
  if (v == 0) return;
  long long& x = c_[e];
  x += v;
  if (x == 0) c_.erase(e);
}

int LaurentPoly::min_exp() const {
  if (c_.empty()) throw Error("zero polynomial has no degree");
  return c_.begin()->first;
}

int LaurentPoly::max_exp() const {
  if (c_.empty()) throw Error("zero polynomial has no degree");
  return c_.rbegin()->first;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (auto [e, v] : o.c_) r.add(e, v);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + o.negated(); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (auto [e1, v1] : c_)
    for (auto [e2, v2] : o.c_) r.add(e1 + e2, v1 * v2);
  return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r;
  for (auto [e, v] : c_) r.c_[e + k] = v;
  return r;
}

LaurentPoly LaurentPoly::negated() const {
  LaurentPoly r;
  for (auto [e, v] : c_) r.c_[e] = -v;
  return r;
}

long long LaurentPoly::eval(long long x) const {
  long long s = 0;
  for (auto [e, v] : c_) {
    if (e < 0 && x != 1 && x != -1) throw Error("cannot evaluate negative powers at this point");
    long long p = 1;
    int k = e < 0 ? -e : e;
    for (int i = 0; i < k; ++i) p *= x;
    s += v * p;
  }
  return s;
}

std::string LaurentPoly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    auto [e, v] = *it;
    long long a = v < 0 ? -v : v;
    if (first)
      os << (v < 0 ? "-" : "");
    else
      os << (v < 0 ? " - " : " + ");
    first = false;
    if (e == 0) {
      os << a;
      continue;
    }
    if (a != 1) os << a << "*";
    os << var;
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

}  // namespace kf
