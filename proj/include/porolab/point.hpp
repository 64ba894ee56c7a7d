#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace porolab {

/// Point on a branch of the binary tree space. The word addresses the
/// branch, the offset is the position along it (in (0, branch length]
/// for interior points). Boundary points carry the depth-truncated word
/// and the boundary flag; two boundary points sharing a full-depth
/// prefix collide, which is below net resolution by construction.
struct TreePoint {
  std::vector<uint8_t> word;  // entries in {0,1}
  double offset = 0.0;
  bool boundary = false;
};

/// Point on the comb ({0} U {2^-j}) x [0,1], planar coordinates.
struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Point on a ray of the spiral space: ray index + arc-length position.
struct RayPoint {
  int ray = 0;
  double arc = 0.0;
};

/// Point of the segment stack [0,1] x {1..K}.
struct RowPoint {
  double x = 0.0;
  int row = 1;
};

/// A point of some carrier. Real-line carriers (interval, Cantor) use the
/// bare double alternative.
using Point = std::variant<double, PlanarPoint, TreePoint, RayPoint, RowPoint>;

inline bool is_real(const Point& p) { return std::holds_alternative<double>(p); }
inline double as_real(const Point& p) { return std::get<double>(p); }

inline std::string describe(const Point& p) {
  struct V {
    std::string operator()(double x) const { return std::to_string(x); }
    std::string operator()(const PlanarPoint& q) const {
      return "(" + std::to_string(q.x) + "," + std::to_string(q.y) + ")";
    }
    std::string operator()(const TreePoint& q) const {
      std::string w;
      for (auto c : q.word) w += char('1' + c);
      return "[" + w + (q.boundary ? "|inf" : "@" + std::to_string(q.offset)) + "]";
    }
    std::string operator()(const RayPoint& q) const {
      return "ray" + std::to_string(q.ray) + "@" + std::to_string(q.arc);
    }
    std::string operator()(const RowPoint& q) const {
      return "(" + std::to_string(q.x) + ";" + std::to_string(q.row) + ")";
    }
  };
  return std::visit(V{}, p);
}

}  // namespace porolab
