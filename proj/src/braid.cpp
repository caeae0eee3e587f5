#include <cctype>
#include <cstdlib>

#include "kf/diagram.hpp"

namespace kf {

namespace {

// list := item (',' item)* ; item := ('(' list ')' | int) ('^' int)?
class BraidParser {
 public:
  explicit BraidParser(const std::string& s) : s_(s) {}

  std::vector<int> parse() {
    std::vector<int> out = list();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return out;
  }

 private:
  const std::string& s_;
  size_t i_ = 0;

  [[noreturn]] void fail(const std::string& why) {
    throw ParseError("braid word '" + s_ + "': " + why + " at position " + std::to_string(i_));
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  int integer() {
    skip();
    size_t j = i_;
    if (j < s_.size() && (s_[j] == '-' || s_[j] == '+')) ++j;
    size_t k = j;
    while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) ++k;
    if (k == j) fail("expected an integer");
    int v = std::atoi(s_.substr(i_, k - i_).c_str());
    i_ = k;
    return v;
  }
  std::vector<int> list() {
    std::vector<int> out;
    skip();
    if (i_ == s_.size() || s_[i_] == ')' || s_[i_] == ']') return out;
    do {
      std::vector<int> it = item();
      out.insert(out.end(), it.begin(), it.end());
    } while (eat(','));
    return out;
  }
  std::vector<int> item() {
    std::vector<int> body;
    if (eat('(')) {
      body = list();
      if (!eat(')')) fail("missing ')'");
    } else if (eat('[')) {
      body = list();
      if (!eat(']')) fail("missing ']'");
    } else {
      int v = integer();
      if (v == 0) fail("letter 0 is not a braid generator");
      body.push_back(v);
    }
    if (eat('^')) {
      int k = integer();
      if (k < 0) fail("negative repeat count");
      std::vector<int> rep;
      for (int r = 0; r < k; ++r) rep.insert(rep.end(), body.begin(), body.end());
      return rep;
    }
    return body;
  }
};

}  // namespace

BraidWord parse_braid(const std::string& text, int strands) {
  BraidWord b;
  b.letters = BraidParser(text).parse();
  int need = 1;
  for (int L : b.letters) need = std::max(need, std::abs(L) + 1);
  if (strands > 0 && strands < need) throw ParseError("braid needs at least " + std::to_string(need) + " strands");
  b.strands = strands > 0 ? strands : need;
  return b;
}

std::string format_braid(const BraidWord& b) {
  std::string s;
  for (size_t i = 0; i < b.letters.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(b.letters[i]);
  }
  return s;
}

}  // namespace kf
