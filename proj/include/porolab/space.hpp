#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "porolab/constants.hpp"
#include "porolab/point.hpp"

namespace porolab {

class Space;
using SpaceHandle = std::shared_ptr<const Space>;

/// Finite internal eps-net of a set, with per-point weights. The substrate
/// for every estimator: points lie in the represented set, every carrier
/// point of the represented region is within `resolution` of some net point.
struct FiniteApprox {
  std::vector<Point> points;
  std::vector<double> weights;  // empty when weights are not in use
  double resolution = 0.0;
  SpaceHandle parent;
  std::string target;  // label of the represented set

  size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  /// Sorted coordinates, available when all points are real-line points.
  /// Built eagerly at construction; FiniteApprox is immutable afterwards.
  std::vector<double> sorted_coords;

  void finalize() {
    sorted_coords.clear();
    if (std::all_of(points.begin(), points.end(),
                    [](const Point& p) { return is_real(p); })) {
      sorted_coords.reserve(points.size());
      for (const auto& p : points) sorted_coords.push_back(as_real(p));
      std::sort(sorted_coords.begin(), sorted_coords.end());
    }
  }
};

/// Abstract immutable metric measure space. All operations are pure and
/// handles are safe to share across threads.
class Space {
 public:
  Space(std::string id, StructureConstants constants)
      : id_(std::move(id)), constants_(constants) {
    constants_.validate();
  }
  virtual ~Space() = default;

  const std::string& id() const { return id_; }
  const StructureConstants& constants() const { return constants_; }

  virtual double distance(const Point& a, const Point& b) const = 0;

  /// Measure of the closed ball B(x,r). Exact for every shipped space.
  virtual double ball_measure(const Point& x, double r) const = 0;

  /// Carrier points inside B(center,radius) covering the carrier part of
  /// that ball within `spacing`. All returned points lie in the ball.
  virtual std::vector<Point> cover_candidates(const Point& center, double radius,
                                              double spacing) const = 0;

  /// Total mass of the (truncated) carrier, if finite and known.
  virtual std::optional<double> total_mass() const { return std::nullopt; }

  /// Exact distance from x to the carrier set, when the space supports it.
  virtual std::optional<double> dist_to_carrier(const Point& x) const {
    return std::nullopt;
  }

  /// True when the metric on real-line points is f(|x-y|) for an increasing
  /// f; enables sorted-coordinate fast paths in packing and distance-to-set
  /// queries. f is exposed through dist_from_gap / coord_gap_for.
  virtual bool is_coordinate_metric() const { return false; }

  /// f(gap): metric distance of two carrier points at coordinate gap `gap`.
  virtual double dist_from_gap(double gap) const { return gap; }

  /// f^{-1}(dist): coordinate gap at which the metric distance reaches
  /// `dist`.
  virtual double coord_gap_for(double dist) const { return dist; }

  /// True when the metric restricted to real-line points is exactly |x-y|.
  bool is_line_metric() const {
    return is_coordinate_metric() && dist_from_gap(1.0) == 1.0 &&
           dist_from_gap(0.5) == 0.5;
  }

  /// Largest rho such that B(y,rho) ∩ carrier ⊂ B(x,r), when the space has
  /// a closed form for it (infinity means the whole carrier ball B(x,r)
  /// imposes no constraint). nullopt: callers fall back to net-based
  /// conservative bounds.
  virtual std::optional<double> max_hole_radius(const Point& x, double r,
                                                const Point& y) const {
    (void)x;
    (void)r;
    (void)y;
    return std::nullopt;
  }

  /// mu([u,v]) for 1-D carriers; nullopt elsewhere.
  virtual std::optional<double> segment_mass(double u, double v) const {
    (void)u;
    (void)v;
    return std::nullopt;
  }

 protected:
  std::string id_;
  StructureConstants constants_;
};

/// A set A to be probed for holes: an internal net plus (optionally) an
/// exact distance oracle. Without the oracle, distances to A are known
/// only up to the net resolution and all estimators use the one-sided
/// lower bound.
struct TargetSet {
  FiniteApprox net;
  std::function<double(const Point&)> exact_dist;  // dist(y, A), optional

  double dist_slack() const { return exact_dist ? 0.0 : net.resolution; }

  /// Lower bound for dist(y, A), exact when the oracle is present.
  double dist_lower(const Point& y) const {
    if (exact_dist) return std::max(0.0, exact_dist(y));
    if (net.empty()) return std::numeric_limits<double>::infinity();
    double d = dist_to_net(y);
    return std::max(0.0, d - net.resolution);
  }

  /// Distance from y to the net points (not to the underlying set).
  double dist_to_net(const Point& y) const {
    if (net.empty()) return std::numeric_limits<double>::infinity();
    const Space& sp = *net.parent;
    if (!net.sorted_coords.empty() && is_real(y) && sp.is_coordinate_metric()) {
      const auto& xs = net.sorted_coords;
      double v = as_real(y);
      auto it = std::lower_bound(xs.begin(), xs.end(), v);
      double gap = std::numeric_limits<double>::infinity();
      if (it != xs.end()) gap = std::min(gap, *it - v);
      if (it != xs.begin()) gap = std::min(gap, v - *(it - 1));
      return sp.dist_from_gap(gap);
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : net.points) best = std::min(best, sp.distance(y, p));
    return best;
  }
};

}  // namespace porolab
