#pragma once

#include <cmath>

#include "porolab/space.hpp"

namespace porolab {

/// [lo,hi] with the Euclidean metric and Lebesgue measure. 1-regular with
/// a_mu = 1 (boundary truncation), b_mu = 2, below r_mu = (hi-lo)/2.
class IntervalSpace final : public Space {
 public:
  IntervalSpace(double lo = 0.0, double hi = 1.0)
      : Space("interval[" + std::to_string(lo) + "," + std::to_string(hi) + "]",
              StructureConstants{1.0, 1.0, 2.0, (hi - lo) / 2.0, 2.0,
                                 MeasureKind::Regular}),
        lo_(lo),
        hi_(hi) {
    if (!(lo < hi)) throw std::invalid_argument("IntervalSpace: need lo < hi");
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }

  double distance(const Point& a, const Point& b) const override {
    return std::abs(as_real(a) - as_real(b));
  }

  double ball_measure(const Point& x, double r) const override {
    double v = as_real(x);
    return std::max(0.0, std::min(hi_, v + r) - std::max(lo_, v - r));
  }

  std::vector<Point> cover_candidates(const Point& center, double radius,
                                      double spacing) const override {
    double a = std::max(lo_, as_real(center) - radius);
    double b = std::min(hi_, as_real(center) + radius);
    std::vector<Point> out;
    if (a > b) return out;
    long long n = std::max(1LL, (long long)std::ceil((b - a) / spacing));
    out.reserve(n + 1);
    for (long long i = 0; i <= n; ++i) out.push_back(a + (b - a) * i / n);
    return out;
  }

  std::optional<double> total_mass() const override { return hi_ - lo_; }

  std::optional<double> dist_to_carrier(const Point& x) const override {
    double v = as_real(x);
    if (v < lo_) return lo_ - v;
    if (v > hi_) return v - hi_;
    return 0.0;
  }

  bool is_coordinate_metric() const override { return true; }

  std::optional<double> max_hole_radius(const Point& x, double r,
                                        const Point& y) const override {
    double xv = as_real(x), yv = as_real(y);
    double inf = std::numeric_limits<double>::infinity();
    // carrier part of B(y,rho) is [max(lo,y-rho), min(hi,y+rho)]; it stays
    // inside [x-r, x+r] as long as rho is below both one-sided slacks
    double left = (xv - r <= lo_) ? inf : yv - (xv - r);
    double right = (xv + r >= hi_) ? inf : (xv + r) - yv;
    return std::max(0.0, std::min(left, right));
  }

  std::optional<double> segment_mass(double u, double v) const override {
    return std::max(0.0, std::min(hi_, v) - std::max(lo_, u));
  }

 private:
  double lo_, hi_;
};

}  // namespace porolab
