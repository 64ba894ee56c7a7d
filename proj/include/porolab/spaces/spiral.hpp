#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "porolab/space.hpp"

namespace porolab {

/// Union of segments ("rays") of length q glued at the origin, one per
/// rational q in (0,1) with denominator up to a bound, carrying the path
/// metric: |u1-u2| along a ray, u1+u2 across rays. Arc-length measure.
/// The origin is any point with arc 0; all such representations are at
/// distance 0 from each other.
class SpiralSpace final : public Space {
 public:
  explicit SpiralSpace(int max_denominator)
      : Space("spiral(den" + std::to_string(max_denominator) + ")",
              StructureConstants{1.0, 0.5, 2.0, 0.25, 4.0,
                                 MeasureKind::DoublingOnly}),
        max_den_(max_denominator) {
    if (max_denominator < 2)
      throw std::invalid_argument("SpiralSpace: max_denominator >= 2");
    for (int den = 2; den <= max_denominator; ++den)
      for (int num = 1; num < den; ++num)
        if (std::gcd(num, den) == 1) lengths_.push_back(double(num) / den);
    std::sort(lengths_.begin(), lengths_.end());
    constants_.c_mu = 2.0 * lengths_.size();
    constants_.b_mu = double(lengths_.size());
  }

  int max_denominator() const { return max_den_; }
  const std::vector<double>& ray_lengths() const { return lengths_; }
  static Point origin() { return RayPoint{0, 0.0}; }

  double distance(const Point& a, const Point& b) const override {
    const auto& p = std::get<RayPoint>(a);
    const auto& q = std::get<RayPoint>(b);
    if (p.ray == q.ray) return std::abs(p.arc - q.arc);
    return p.arc + q.arc;  // path through the origin
  }

  double ball_measure(const Point& x, double r) const override {
    const auto& p = std::get<RayPoint>(x);
    double total = 0.0;
    for (size_t i = 0; i < lengths_.size(); ++i) {
      double q = lengths_[i];
      if ((int)i == p.ray)
        total += std::min(q, p.arc + r) - std::max(0.0, p.arc - r);
      else if (r > p.arc)
        total += std::min(q, r - p.arc);
    }
    return total;
  }

  std::vector<Point> cover_candidates(const Point& center, double radius,
                                      double spacing) const override {
    const auto& p = std::get<RayPoint>(center);
    std::vector<Point> out;
    for (size_t i = 0; i < lengths_.size(); ++i) {
      double q = lengths_[i];
      double lo, hi;
      if ((int)i == p.ray) {
        lo = std::max(0.0, p.arc - radius);
        hi = std::min(q, p.arc + radius);
      } else {
        if (radius <= p.arc) continue;
        lo = 0.0;
        hi = std::min(q, radius - p.arc);
      }
      if (lo > hi) continue;
      long long n =
          std::max(1LL, (long long)std::ceil((hi - lo) / (2.0 * spacing)));
      for (long long j = 0; j <= n; ++j)
        out.push_back(RayPoint{(int)i, lo + (hi - lo) * j / n});
    }
    return out;
  }

  std::optional<double> total_mass() const override {
    double m = 0.0;
    for (double q : lengths_) m += q;
    return m;
  }

  std::optional<double> max_hole_radius(const Point& x, double r,
                                        const Point& y) const override {
    const auto& px = std::get<RayPoint>(x);
    if (px.arc != 0.0) return std::nullopt;  // closed form kept to origin balls
    const auto& py = std::get<RayPoint>(y);
    double q = lengths_[py.ray];
    double inf = std::numeric_limits<double>::infinity();
    // B(y,rho) reaches arc y.arc+rho along y's ray (truncated at q) and
    // spills through the origin onto other rays once rho > y.arc
    double same = (q <= r) ? inf : r - py.arc;
    double spill = r + py.arc;
    return std::max(0.0, std::min(same, spill));
  }

 private:
  int max_den_;
  std::vector<double> lengths_;
};

}  // namespace porolab
