#pragma once

#include <cmath>
#include <string>

#include "porolab/space.hpp"

namespace porolab {

/// Rows [0,1] x {1..K} with d = |x1-x2| on a row and 1 across rows, and
/// per-row Lebesgue measure. For r < 1 balls are single-row intervals and
/// the measure is 1-regular; at r >= 1 a ball swallows every row, which is
/// what makes the untruncated (K = infinity) version non-doubling.
class SegmentStackSpace final : public Space {
 public:
  explicit SegmentStackSpace(int rows)
      : Space("segment_stack(K" + std::to_string(rows) + ")",
              StructureConstants{1.0, 1.0, 2.0, 1.0, 2.0, MeasureKind::Regular}),
        K_(rows) {
    if (rows < 1) throw std::invalid_argument("SegmentStackSpace: rows >= 1");
  }

  int rows() const { return K_; }

  double distance(const Point& a, const Point& b) const override {
    const auto& p = std::get<RowPoint>(a);
    const auto& q = std::get<RowPoint>(b);
    if (p.row == q.row) return std::abs(p.x - q.x);
    return 1.0;
  }

  double ball_measure(const Point& x, double r) const override {
    const auto& p = std::get<RowPoint>(x);
    double own = std::max(0.0, std::min(1.0, p.x + r) - std::max(0.0, p.x - r));
    return (r >= 1.0) ? own + double(K_ - 1) : own;
  }

  std::vector<Point> cover_candidates(const Point& center, double radius,
                                      double spacing) const override {
    const auto& p = std::get<RowPoint>(center);
    std::vector<Point> out;
    for (int row = 1; row <= K_; ++row) {
      double lo, hi;
      if (row == p.row) {
        lo = std::max(0.0, p.x - radius);
        hi = std::min(1.0, p.x + radius);
      } else {
        if (radius < 1.0) continue;
        lo = 0.0;
        hi = 1.0;
      }
      if (lo > hi) continue;
      long long n =
          std::max(1LL, (long long)std::ceil((hi - lo) / (2.0 * spacing)));
      for (long long i = 0; i <= n; ++i)
        out.push_back(RowPoint{lo + (hi - lo) * i / n, row});
    }
    return out;
  }

  std::optional<double> total_mass() const override { return double(K_); }

 private:
  int K_;
};

}  // namespace porolab
