#pragma once

#include <stdexcept>
#include <vector>

#include "porolab/space.hpp"

namespace porolab {

namespace detail {

inline bool ascending_reals(const std::vector<Point>& pts) {
  for (size_t i = 0; i < pts.size(); ++i) {
    if (!is_real(pts[i])) return false;
    if (i > 0 && as_real(pts[i]) < as_real(pts[i - 1])) return false;
  }
  return true;
}

}  // namespace detail

/// Maximal collection of points pairwise more than 2r apart, first-fit in
/// index order. Every input point is within 2r of some returned center.
inline std::vector<Point> greedy_packing(const FiniteApprox& pts, double r) {
  if (r <= 0.0) throw std::invalid_argument("greedy_packing: r must be > 0");
  std::vector<Point> centers;
  if (pts.empty()) return centers;
  const Space& sp = *pts.parent;
  const double sep = 2.0 * r;
  if (sp.is_coordinate_metric() && detail::ascending_reals(pts.points)) {
    // sorted 1-D input: only the last kept center can be near, and the
    // metric threshold translates into a coordinate-gap threshold
    const double gap = sp.coord_gap_for(sep);
    double last = 0.0;
    for (const auto& p : pts.points) {
      double v = as_real(p);
      if (centers.empty() || v - last > gap) {
        centers.push_back(p);
        last = v;
      }
    }
    return centers;
  }
  for (const auto& p : pts.points) {
    bool ok = true;
    for (auto it = centers.rbegin(); it != centers.rend(); ++it) {
      if (sp.distance(p, *it) <= sep) {
        ok = false;
        break;
      }
    }
    if (ok) centers.push_back(p);
  }
  return centers;
}

/// Internal eps-net of carrier ∩ B(center,radius): every carrier point of
/// the ball is within eps of a net point, net points pairwise > eps/2 apart.
inline FiniteApprox build_net(const SpaceHandle& space, const Point& center,
                              double radius, double eps,
                              std::string target = "carrier") {
  if (eps <= 0.0) throw std::invalid_argument("build_net: eps must be > 0");
  if (radius <= 0.0) throw std::invalid_argument("build_net: radius must be > 0");
  FiniteApprox cand;
  cand.parent = space;
  cand.points = space->cover_candidates(center, radius, eps / 2.0);
  FiniteApprox out;
  out.parent = space;
  out.resolution = eps;
  out.target = std::move(target);
  out.points = greedy_packing(cand, eps / 4.0);
  out.finalize();
  return out;
}

/// Two-sided bracket for the covering number N(A, r) of the set behind the
/// net: lower = |packing at r| (disjoint r-balls each need a cover element),
/// upper = |packing at r/2| (its r-balls cover). Vacuous when r is not above
/// the net resolution; the flag records that.
struct CoveringBracket {
  long long lower = 0;
  long long upper = 0;
  bool below_resolution = false;
};

inline CoveringBracket covering_bracket(const FiniteApprox& pts, double r) {
  CoveringBracket b;
  b.below_resolution = (r <= pts.resolution);
  b.lower = static_cast<long long>(greedy_packing(pts, r).size());
  b.upper = static_cast<long long>(greedy_packing(pts, r / 2.0).size());
  return b;
}

}  // namespace porolab
