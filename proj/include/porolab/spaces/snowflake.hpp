#pragma once

#include <cmath>
#include <string>

#include "porolab/space.hpp"

namespace porolab {

/// Metric transform d -> d^eps (0 < eps < 1) over an arbitrary base space.
/// Measure and carrier are inherited; radii are translated through r^{1/eps}
/// so every base oracle keeps working. Regularity exponent becomes s/eps.
class SnowflakeSpace final : public Space {
 public:
  SnowflakeSpace(SpaceHandle base, double eps)
      : Space("snowflake(" + std::to_string(eps) + ")|" + base->id(),
              rescale(base->constants(), eps)),
        base_(std::move(base)),
        eps_(eps) {
    if (!(eps > 0.0 && eps < 1.0))
      throw std::invalid_argument("SnowflakeSpace: need 0 < eps < 1");
  }

  const SpaceHandle& base() const { return base_; }
  double exponent() const { return eps_; }

  double to_base_radius(double r) const { return std::pow(r, 1.0 / eps_); }
  double from_base_dist(double d) const { return std::pow(d, eps_); }

  double distance(const Point& a, const Point& b) const override {
    return from_base_dist(base_->distance(a, b));
  }

  double ball_measure(const Point& x, double r) const override {
    return base_->ball_measure(x, to_base_radius(r));
  }

  std::vector<Point> cover_candidates(const Point& center, double radius,
                                      double spacing) const override {
    return base_->cover_candidates(center, to_base_radius(radius),
                                   to_base_radius(spacing));
  }

  std::optional<double> total_mass() const override {
    return base_->total_mass();
  }

  std::optional<double> dist_to_carrier(const Point& x) const override {
    auto d = base_->dist_to_carrier(x);
    if (!d) return std::nullopt;
    return from_base_dist(*d);
  }

  bool is_coordinate_metric() const override {
    return base_->is_coordinate_metric();
  }

  double dist_from_gap(double gap) const override {
    return from_base_dist(base_->dist_from_gap(gap));
  }

  double coord_gap_for(double dist) const override {
    return base_->coord_gap_for(to_base_radius(dist));
  }

  std::optional<double> max_hole_radius(const Point& x, double r,
                                        const Point& y) const override {
    auto cap = base_->max_hole_radius(x, to_base_radius(r), y);
    if (!cap) return std::nullopt;
    return from_base_dist(*cap);
  }

  std::optional<double> segment_mass(double u, double v) const override {
    return base_->segment_mass(u, v);
  }

 private:
  static StructureConstants rescale(StructureConstants c, double eps) {
    // mu(B'(x,r)) = mu(B(x, r^{1/eps})) ∈ [a r^{s/eps}, b r^{s/eps}]
    c.s = c.s / eps;
    c.r_mu = std::pow(c.r_mu, eps);
    c.c_mu = std::pow(c.c_mu, 1.0 / eps + 1.0);
    return c;
  }

  SpaceHandle base_;
  double eps_;
};

}  // namespace porolab
