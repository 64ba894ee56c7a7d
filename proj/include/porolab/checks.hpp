#pragma once

#include <cmath>
#include <vector>

#include "porolab/space.hpp"

namespace porolab {

/// Per-sample outcome of the doubling/regularity ratio checks at one
/// (x, r, alpha): ht1 is the iterated-doubling bound
/// mu(B(x,ar)) <= c^{log a/log 2 + 1} mu(B(x,r)); ht2 is the regular-case
/// bound (b/a) a^s mu(B(x,r)).
struct DoublingSample {
  Point x;
  double r = 0.0;
  double ratio = 0.0;  // mu(B(x, alpha r)) / mu(B(x, r))
  bool ht1_ok = true;
  bool ht2_ok = true;
  bool skipped = false;  // r or alpha*r at/above the validity radius
};

struct DoublingReport {
  double alpha = 2.0;
  std::vector<DoublingSample> samples;
  int violations = 0;
  int skipped = 0;

  bool pass() const { return violations == 0; }
};

inline DoublingReport check_doubling(const SpaceHandle& space,
                                     const std::vector<std::pair<Point, double>>& sample,
                                     double alpha) {
  if (alpha <= 1.0) throw std::invalid_argument("check_doubling: alpha > 1");
  const auto& c = space->constants();
  DoublingReport rep;
  rep.alpha = alpha;
  double ht1_bound = std::pow(c.c_mu, std::log(alpha) / std::log(2.0) + 1.0);
  double ht2_factor = (c.b_mu / c.a_mu) * std::pow(alpha, c.s);
  for (const auto& [x, r] : sample) {
    DoublingSample s;
    s.x = x;
    s.r = r;
    if (r >= c.r_mu || alpha * r >= c.r_mu) {
      s.skipped = true;
      ++rep.skipped;
      rep.samples.push_back(std::move(s));
      continue;
    }
    double m1 = space->ball_measure(x, r);
    double m2 = space->ball_measure(x, alpha * r);
    s.ratio = (m1 > 0.0) ? m2 / m1 : std::numeric_limits<double>::infinity();
    const double slack = 1.0 + 1e-12;
    s.ht1_ok = s.ratio <= ht1_bound * slack;
    s.ht2_ok = (c.kind != MeasureKind::Regular) || s.ratio <= ht2_factor * slack;
    if (!s.ht1_ok || !s.ht2_ok) ++rep.violations;
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

}  // namespace porolab
