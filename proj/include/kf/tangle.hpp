#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kf/diagram.hpp"

namespace kf {

// A diagram piece with named open ends. Tuples are counterclockwise with the
// under-strand in slots 0/2. An end label appears once in the tuples, or is
// shared by two ends joined by a crossingless arc.
struct TangleFragment {
  std::vector<Tuple> tuples;
  std::map<std::string, int> ends;
  std::vector<OrientHint> hints;
  int basepoint = 0;
  int free_loops = 0;
  int max_label() const;
};

// Bottom-to-top construction from cups, caps, crossings and open ends.
// Positions are 0-based from the left.
class MorseBuilder {
 public:
  void cup(int i);
  void cap(int i);
  // Crossing of positions i, i+1; sign +1 puts the strand from the lower left on top.
  void cross(int i, int sign);
  void end(int i, const std::string& name);
  void start(int i, const std::string& name);
  void orient_up(int i);
  void mark_basepoint(int i);
  int width() const { return static_cast<int>(pos_.size()); }

  TangleFragment fragment() const;
  PlanarDiagram diagram(const std::string& name) const;

 private:
  struct NP {
    int node, port;
    bool operator<(const NP& o) const { return node != o.node ? node < o.node : port < o.port; }
    bool operator==(const NP& o) const { return node == o.node && port == o.port; }
  };
  struct Node {
    char kind;  // 'j' joint, 'x' crossing, 'e' open end
    int sign = 0;
    std::string name;
  };
  std::vector<Node> nodes_;
  std::vector<NP> pos_;
  std::vector<std::pair<NP, NP>> edges_;
  std::vector<NP> up_, base_;
  int add(char kind, int sign = 0, std::string name = {});
  void link(NP a, NP b) { edges_.emplace_back(a, b); }
  NP at(int i) const;
};

struct TangleTemplate {
  std::string name;
  std::vector<Tuple> pd;
  std::map<std::string, int> ends;  // NW, NE, SE, SW
  std::vector<OrientHint> hints;
  int basepoint = 0;
  // T(n) receives n - twist_offset half-twists at the NE/SE site.
  int twist_offset = 0;
  bool right_handed = true;
  // "parallel": both strands cross the twist site west to east; "lowest-arc": default rule.
  std::string orientation_rule = "parallel";
  std::optional<int> n_guess;
};

// Rational tangle of slope r in a box with ends NW, NE, SE, SW. Integer n is n
// horizontal half-twists (right-handed for n > 0); 0 joins NW-NE and SW-SE.
TangleFragment rational_tangle(const RationalSlope& r, bool right_handed = true);

PlanarDiagram fill(const TangleTemplate& t, const RationalSlope& r);
PlanarDiagram fill(const TangleTemplate& t, long long n);

// Crossings of fill(t, r) with index >= base_crossing_count(t) come from the rational tangle.
int base_crossing_count(const TangleTemplate& t);

TangleTemplate trivial_tangle();

// Quotient tangle of a strongly invertible braid closure P*Q where P = [1,3] and
// Q = w . c . reverse(w) for the 3-strand palindrome core w on strands 1..4.
TangleTemplate symmetric_quotient_template(const std::string& name, const std::vector<int>& w, int centre,
                                           int twist_offset);

void check_template_shape(const TangleTemplate& t);

}  // namespace kf
