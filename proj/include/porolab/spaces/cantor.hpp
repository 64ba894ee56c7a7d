#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "porolab/interval_set.hpp"
#include "porolab/space.hpp"

namespace porolab {

/// Parameters of an evenly-distributed linear Cantor construction on [0,1]:
/// each interval is replaced by `branches` children of relative length
/// `ratio`, the first flush left, the last flush right, equally spaced.
struct CantorSpec {
  int branches = 2;
  int64_t ratio_num = 1;
  int64_t ratio_den = 3;
  int depth = 6;

  double ratio() const {
    return static_cast<double>(ratio_num) / static_cast<double>(ratio_den);
  }
};

/// Depth-truncated evenly-distributed Cantor carrier with its natural
/// self-similar measure (mass N^{-k} per depth-k interval, uniform density
/// inside depth-level intervals). Distance is Euclidean; all carrier
/// queries run over the implicit interval recursion, nothing is
/// materialized.
class CantorSpace final : public Space {
 public:
  explicit CantorSpace(CantorSpec spec)
      : Space("cantor(" + std::to_string(spec.branches) + "," +
                  std::to_string(spec.ratio_num) + "/" +
                  std::to_string(spec.ratio_den) + ",d" +
                  std::to_string(spec.depth) + ")",
              StructureConstants{}),
        spec_(spec),
        N_(spec.branches),
        lam_(spec.ratio()),
        depth_(spec.depth) {
    if (N_ < 2) throw std::invalid_argument("CantorSpace: need >= 2 branches");
    if (spec.ratio_num <= 0 || spec.ratio_den <= 0 ||
        static_cast<double>(N_) * lam_ > 1.0 + 1e-15)
      throw std::invalid_argument("CantorSpace: need 0 < N*ratio <= 1");
    if (depth_ < 1) throw std::invalid_argument("CantorSpace: depth >= 1");
    t_ = (N_ * lam_ >= 1.0) ? 1.0 : std::log(double(N_)) / std::log(1.0 / lam_);
    constants_ = scan_constants();
    constants_.validate();
  }

  const CantorSpec& spec() const { return spec_; }
  double dimension_exponent() const { return t_; }

  double distance(const Point& a, const Point& b) const override {
    return std::abs(as_real(a) - as_real(b));
  }

  double ball_measure(const Point& x, double r) const override {
    double v = as_real(x);
    return node_mass(0.0, 1.0, 0, v - r, v + r);
  }

  std::optional<double> segment_mass(double u, double v) const override {
    return node_mass(0.0, 1.0, 0, u, v);
  }

  std::vector<Point> cover_candidates(const Point& center, double radius,
                                      double spacing) const override {
    std::vector<Point> out;
    double c = as_real(center);
    collect(0.0, 1.0, 0, c - radius, c + radius, spacing, out);
    return out;
  }

  std::optional<double> total_mass() const override { return 1.0; }

  std::optional<double> dist_to_carrier(const Point& x) const override {
    return carrier_dist(as_real(x));
  }

  bool is_coordinate_metric() const override { return true; }

  std::optional<double> max_hole_radius(const Point& x, double r,
                                        const Point& y) const override {
    // conservative: bound the carrier by [0,1] only (ignoring the gap
    // structure can only shrink the cap, which keeps estimates one-sided)
    double xv = as_real(x), yv = as_real(y);
    double inf = std::numeric_limits<double>::infinity();
    double left = (xv - r <= 0.0) ? inf : yv - (xv - r);
    double right = (xv + r >= 1.0) ? inf : (xv + r) - yv;
    return std::max(0.0, std::min(left, right));
  }

  /// Exact distance to the depth-truncated carrier.
  double carrier_dist(double x) const {
    double a = 0.0, L = 1.0;
    for (int k = 0; k < depth_; ++k) {
      if (x <= a) return a - x;
      if (x >= a + L) return x - (a + L);
      double step = L * (1.0 - lam_) / (N_ - 1);
      double childL = lam_ * L;
      int i = static_cast<int>(std::floor((x - a) / step));
      if (i > N_ - 1) i = N_ - 1;
      double lo = a + i * step;
      if (x <= lo + childL) {
        a = lo;
        L = childL;
        continue;
      }
      // in the gap after child i; both gap endpoints persist to all depths
      return std::min(x - (lo + childL), (lo + step) - x);
    }
    return 0.0;
  }

  /// Depth-level intervals intersecting [u,v], as an IntervalUnion (used
  /// by callers that need the exact carrier shape; exponential in depth,
  /// so keep the window small or the depth moderate).
  IntervalUnion carrier_shape(double u = 0.0, double v = 1.0) const {
    IntervalUnion shape;
    gather_shape(0.0, 1.0, 0, u, v, shape);
    return shape;
  }

 private:
  double node_mass(double a, double L, int k, double u, double v) const {
    if (v <= a || u >= a + L) return 0.0;
    if (u <= a && v >= a + L) return std::pow(double(N_), -k);
    if (k == depth_)
      return std::pow(double(N_), -depth_) *
             (std::min(v, a + L) - std::max(u, a)) / L;
    double step = L * (1.0 - lam_) / (N_ - 1);
    double childL = lam_ * L;
    double total = 0.0;
    for (int i = 0; i < N_; ++i) {
      double lo = a + i * step;
      if (lo > v) break;
      if (lo + childL < u) continue;
      total += node_mass(lo, childL, k + 1, u, v);
    }
    return total;
  }

  void collect(double a, double L, int k, double blo, double bhi,
               double spacing, std::vector<Point>& out) const {
    if (a > bhi || a + L < blo) return;
    bool inside = (a >= blo && a + L <= bhi);
    if (k == depth_) {
      if (inside && L <= 2.0 * spacing) {
        out.push_back(a + L / 2.0);  // depth interval is solid carrier
        return;
      }
      double s = std::max(a, blo), e = std::min(a + L, bhi);
      if (s > e) return;
      long long n = std::max(1LL, (long long)std::ceil((e - s) / (2.0 * spacing)));
      for (long long i = 0; i <= n; ++i) out.push_back(s + (e - s) * i / n);
      return;
    }
    if (inside && L <= 2.0 * spacing) {
      // both endpoints of a branch interval survive to every depth
      out.push_back(a);
      out.push_back(a + L);
      return;
    }
    double step = L * (1.0 - lam_) / (N_ - 1);
    double childL = lam_ * L;
    for (int i = 0; i < N_; ++i)
      collect(a + i * step, childL, k + 1, blo, bhi, spacing, out);
  }

  void gather_shape(double a, double L, int k, double u, double v,
                    IntervalUnion& shape) const {
    if (a > v || a + L < u) return;
    if (k == depth_) {
      shape.add(a, a + L);
      return;
    }
    double step = L * (1.0 - lam_) / (N_ - 1);
    double childL = lam_ * L;
    for (int i = 0; i < N_; ++i)
      gather_shape(a + i * step, childL, k + 1, u, v, shape);
  }

  StructureConstants scan_constants() {
    StructureConstants c;
    c.s = t_;
    c.r_mu = 0.5;
    c.kind = MeasureKind::Regular;
    // extremal-ball scan for the regularity constants over the working
    // scale window; small margin absorbs scan granularity
    int scan_depth = std::min(depth_, 8);
    double r_min = std::pow(lam_, scan_depth);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    const int samples = 96;
    for (int i = 0; i < samples; ++i) {
      // carrier point from the base-N digits of a stride through leaves
      double a = 0.0, L = 1.0;
      uint64_t m = (uint64_t)i * 2654435761u;
      for (int k = 0; k < scan_depth; ++k) {
        int digit = int(m % N_);
        m /= N_;
        a += digit * L * (1.0 - lam_) / (N_ - 1);
        L *= lam_;
      }
      for (double r = c.r_mu; r >= r_min; r *= 0.66) {
        double ratio = node_mass(0.0, 1.0, 0, a - r, a + r) / std::pow(r, t_);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
    }
    c.a_mu = lo * 0.97;
    c.b_mu = hi * 1.03;
    c.c_mu = (c.b_mu / c.a_mu) * std::pow(2.0, t_);
    return c;
  }

  CantorSpec spec_;
  int N_;
  double lam_;
  int depth_;
  double t_;
};

}  // namespace porolab
