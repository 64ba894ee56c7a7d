#pragma once

#include <cmath>
#include <string>

#include "porolab/space.hpp"

namespace porolab {

/// Planar comb: vertical unit segments at x = 0 and x = 2^{-j}, j = 0..J,
/// with the Euclidean metric and 1-dimensional length measure. The teeth
/// accumulate at the spine {0} x [0,1], which is uniformly porous inside
/// the comb.
class CombSpace final : public Space {
 public:
  explicit CombSpace(int levels)
      : Space("comb(J" + std::to_string(levels) + ")",
              StructureConstants{1.0, 0.5, double(levels) + 3.0, 0.25,
                                 double(levels) + 3.0, MeasureKind::DoublingOnly}),
        J_(levels) {
    if (levels < 1) throw std::invalid_argument("CombSpace: levels >= 1");
    cols_.push_back(0.0);
    for (int j = levels; j >= 0; --j) cols_.push_back(std::ldexp(1.0, -j));
  }

  int levels() const { return J_; }
  const std::vector<double>& columns() const { return cols_; }

  double distance(const Point& a, const Point& b) const override {
    const auto& p = std::get<PlanarPoint>(a);
    const auto& q = std::get<PlanarPoint>(b);
    return std::hypot(p.x - q.x, p.y - q.y);
  }

  double ball_measure(const Point& x, double r) const override {
    const auto& p = std::get<PlanarPoint>(x);
    double total = 0.0;
    for (double c : cols_) {
      double dx = c - p.x;
      if (std::abs(dx) > r) continue;
      double h = std::sqrt(std::max(0.0, r * r - dx * dx));
      total += std::max(0.0, std::min(1.0, p.y + h) - std::max(0.0, p.y - h));
    }
    return total;
  }

  std::vector<Point> cover_candidates(const Point& center, double radius,
                                      double spacing) const override {
    const auto& p = std::get<PlanarPoint>(center);
    std::vector<Point> out;
    for (double c : cols_) {
      double dx = c - p.x;
      if (std::abs(dx) > radius) continue;
      double h = std::sqrt(std::max(0.0, radius * radius - dx * dx));
      double lo = std::max(0.0, p.y - h), hi = std::min(1.0, p.y + h);
      if (lo > hi) continue;
      long long n =
          std::max(1LL, (long long)std::ceil((hi - lo) / (2.0 * spacing)));
      for (long long i = 0; i <= n; ++i)
        out.push_back(PlanarPoint{c, lo + (hi - lo) * i / n});
    }
    return out;
  }

  std::optional<double> total_mass() const override { return double(J_ + 2); }

  std::optional<double> dist_to_carrier(const Point& x) const override {
    const auto& p = std::get<PlanarPoint>(x);
    double best = std::numeric_limits<double>::infinity();
    for (double c : cols_) {
      double dy = (p.y < 0.0) ? -p.y : (p.y > 1.0 ? p.y - 1.0 : 0.0);
      best = std::min(best, std::hypot(c - p.x, dy));
    }
    return best;
  }

 private:
  int J_;
  std::vector<double> cols_;
};

}  // namespace porolab
