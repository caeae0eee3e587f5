#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

using Tuple = std::array<int, 4>;

// A crossing-side of an arc: crossing index and slot 0..3.
struct Port {
  int crossing = -1;
  int slot = -1;
  bool operator==(const Port&) const = default;
};

struct OrientHint {
  Port port;
  bool head = true;
};

struct DiagramOptions {
  std::string name;
  // Each pair (a, b): traversal passes from arc a straight into arc b.
  std::vector<std::pair<int, int>> orientations;
  // Ports where an arc arrives (head) or departs; the first hint per component wins.
  std::vector<OrientHint> hints;
  std::optional<int> basepoint;
  int free_loops = 0;
  // Relabel arcs 1..2n consecutively along components, basepoint arc first.
  bool canonical_labels = false;
};

// Oriented link diagram stored as a PD code. Tuples run counterclockwise and
// always start at the incoming under-strand once constructed.
class PlanarDiagram {
 public:
  PlanarDiagram() = default;  // 0-crossing unknot

  // tuples: counterclockwise, under-strand in slots 0 and 2 (either direction).
  static PlanarDiagram from_tuples(std::vector<Tuple> tuples, const DiagramOptions& opt = {});
  static PlanarDiagram unlink(int components);

  const std::vector<Tuple>& pd() const { return pd_; }
  int crossing_count() const { return static_cast<int>(pd_.size()); }
  int sign(int c) const { return signs_.at(c); }
  const std::vector<int>& signs() const { return signs_; }
  int n_plus() const;
  int n_minus() const;
  int writhe() const { return n_plus() - n_minus(); }

  int free_loops() const { return free_loops_; }
  // Components with crossings first, then free loops.
  int component_count() const { return static_cast<int>(components_.size()) + free_loops_; }
  // Arc labels of each component in traversal order.
  const std::vector<std::vector<int>>& components() const { return components_; }
  // 0 when the diagram has no crossings.
  int basepoint() const { return basepoint_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  std::vector<int> arc_labels() const;
  // Port where the arc starts / ends along the orientation.
  Port tail(int arc) const;
  Port head(int arc) const;
  // Component index of an arc.
  int component_of(int arc) const;
  bool is_unknot_special() const { return pd_.empty() && free_loops_ == 1; }

  // Orientation pairs (arc, next arc) suitable for re-serialization.
  std::vector<std::pair<int, int>> orientation_pairs() const;

  PlanarDiagram relabeled() const;
  PlanarDiagram mirrored() const;
  PlanarDiagram with_basepoint(int arc) const;
  // Reverse the orientation of the component containing arc.
  PlanarDiagram reversed_component(int arc) const;

  // Relabeling-invariant fingerprint of the unoriented PD (ignores basepoint and orientation).
  std::string shape_key() const;

  bool operator==(const PlanarDiagram& o) const {
    return pd_ == o.pd_ && free_loops_ == o.free_loops_ && basepoint_ == o.basepoint_ &&
           components_ == o.components_;
  }

 private:
  std::vector<Tuple> pd_;
  std::vector<int> signs_;
  std::vector<std::vector<int>> components_;
  int free_loops_ = 1;
  int basepoint_ = 0;
  std::string name_ = "unknot";
  // dense arc data
  std::vector<int> labels_;          // dense -> label
  std::vector<Port> head_, tail_;    // dense
  std::vector<int> comp_;            // dense -> component
  int dense(int label) const;
};

PlanarDiagram mirror(const PlanarDiagram& d);

struct BraidWord {
  int strands = 1;
  std::vector<int> letters;
};

// Accepts "1,1,1" and "(2,1,3,2)^3,1,2,3,3,2"; strands default to max|letter|+1.
BraidWord parse_braid(const std::string& text, int strands = 0);
std::string format_braid(const BraidWord& b);
PlanarDiagram braid_closure(const BraidWord& b);

// Replace crossing c by its 0-smoothing (slots 0-1, 2-3) or 1-smoothing (0-3, 1-2).
PlanarDiagram resolve_crossing(const PlanarDiagram& d, int c, int kind);

struct CircleData {
  int count = 0;
  std::vector<std::pair<int, int>> arc_circle;  // (arc label, circle)
};

// v[i] in {0,1} per crossing; circles numbered by smallest contained arc label.
CircleData smoothing_circles(const PlanarDiagram& d, const std::vector<int>& v);

struct RationalSlope {
  long long p = 0;
  long long q = 1;
  RationalSlope() = default;
  RationalSlope(long long p_, long long q_);
  static RationalSlope infinity() { return RationalSlope(1, 0); }
  bool is_infinity() const { return q == 0; }
  bool is_integer() const { return q == 1; }
  std::string str() const;
};

RationalSlope parse_slope(const std::string& text);

}  // namespace kf
