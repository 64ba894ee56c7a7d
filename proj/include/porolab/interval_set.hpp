#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace porolab {

/// Union of closed intervals on the line, kept sorted and disjoint.
class IntervalUnion {
 public:
  struct Seg {
    double lo, hi;
  };

  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Seg> segs) : segs_(std::move(segs)) {
    normalize();
  }

  void add(double lo, double hi) {
    if (hi < lo) return;
    segs_.push_back({lo, hi});
    dirty_ = true;
  }

  const std::vector<Seg>& segments() const {
    const_cast<IntervalUnion*>(this)->normalize();
    return segs_;
  }

  size_t size() const { return segments().size(); }
  bool empty() const { return segments().empty(); }

  double length() const {
    double s = 0.0;
    for (const auto& g : segments()) s += g.hi - g.lo;
    return s;
  }

  /// Minkowski expansion by r (closed r-neighbourhood).
  IntervalUnion expanded(double r) const {
    IntervalUnion out;
    for (const auto& g : segments()) out.add(g.lo - r, g.hi + r);
    return out;
  }

  IntervalUnion clipped(double lo, double hi) const {
    IntervalUnion out;
    for (const auto& g : segments()) {
      double a = std::max(g.lo, lo), b = std::min(g.hi, hi);
      if (a <= b) out.add(a, b);
    }
    return out;
  }

  /// Distance from x to the union (0 if inside).
  double dist(double x) const {
    const auto& s = segments();
    if (s.empty()) return std::numeric_limits<double>::infinity();
    auto it = std::lower_bound(
        s.begin(), s.end(), x,
        [](const Seg& g, double v) { return g.hi < v; });
    double best = std::numeric_limits<double>::infinity();
    if (it != s.end()) best = std::min(best, std::max(0.0, it->lo - x));
    if (it != s.begin()) best = std::min(best, std::max(0.0, x - (it - 1)->hi));
    return best;
  }

  bool contains(double x) const { return dist(x) == 0.0; }

 private:
  void normalize() {
    if (!dirty_) return;
    dirty_ = false;
    if (segs_.empty()) return;
    std::sort(segs_.begin(), segs_.end(),
              [](const Seg& a, const Seg& b) { return a.lo < b.lo; });
    std::vector<Seg> out;
    out.push_back(segs_.front());
    for (size_t i = 1; i < segs_.size(); ++i) {
      if (segs_[i].lo <= out.back().hi) {
        out.back().hi = std::max(out.back().hi, segs_[i].hi);
      } else {
        out.push_back(segs_[i]);
      }
    }
    segs_ = std::move(out);
  }

  std::vector<Seg> segs_;
  bool dirty_ = false;
};

}  // namespace porolab
