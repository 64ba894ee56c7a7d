#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "porolab/interval_set.hpp"
#include "porolab/net.hpp"
#include "porolab/space.hpp"

namespace porolab {

/// A set whose neighborhoods can be measured exactly: either an explicit
/// 1-D shape (union of intervals on a line carrier) or a closed-form
/// neighborhood-mass oracle, on top of the plain TargetSet net.
struct MeasurableSet {
  TargetSet target;
  std::optional<IntervalUnion> shape;              // 1-D exact shape
  std::function<double(double)> nbhd_mass;         // r -> mu(A(r)), exact
};

/// mu(A(r)) for the open r-neighborhood A(r). Exact through the oracle or
/// the 1-D shape; falls back to the net weight sum (declared approximate)
/// when weights are present.
inline double neighborhood_measure(const SpaceHandle& space,
                                   const MeasurableSet& A, double r) {
  if (r <= 0.0) throw std::invalid_argument("neighborhood_measure: r > 0");
  if (A.nbhd_mass) return A.nbhd_mass(r);
  if (A.shape) {
    double total = 0.0;
    IntervalUnion grown = A.shape->expanded(r);
    for (const auto& seg : grown.segments()) {
      auto m = space->segment_mass(seg.lo, seg.hi);
      if (!m)
        throw std::invalid_argument(
            "neighborhood_measure: carrier has no 1-D segment measure");
      total += *m;
    }
    return total;
  }
  if (!A.target.net.weights.empty()) {
    double total = 0.0;
    for (double w : A.target.net.weights) total += w;
    return total;
  }
  throw std::invalid_argument(
      "neighborhood_measure: no exact shape, oracle, or weights");
}

/// M_mu^lambda(A,r) = mu(A(r)) / r^{s-lambda}.
inline double content_mu(const SpaceHandle& space, const MeasurableSet& A,
                         double r, double lambda) {
  const auto& c = space->constants();
  if (c.kind != MeasureKind::Regular)
    throw std::invalid_argument("content_mu: requires a regular space");
  return neighborhood_measure(space, A, r) / std::pow(r, c.s - lambda);
}

/// One row of the sandwich between the covering content and the measure
/// content: 2^{-s} b^{-1} M_mu <= M <= 2^s a^{-1} M_mu, tested through the
/// computable covering bracket [pack_lower r^l, cover_upper r^l] that
/// contains the true M.
struct ContentSandwichRow {
  double r = 0.0;
  double lambda = 0.0;
  double m_mu = 0.0;
  long long pack_lower = 0;
  long long cover_upper = 0;
  bool lower_ok = false;  // cover_upper r^l >= 2^{-s} b^{-1} M_mu
  bool upper_ok = false;  // pack_lower r^l <= 2^{s} a^{-1} M_mu
  bool pass() const { return lower_ok && upper_ok; }
};

inline ContentSandwichRow content_sandwich_check(const SpaceHandle& space,
                                                 const MeasurableSet& A,
                                                 double r, double lambda) {
  const auto& c = space->constants();
  ContentSandwichRow row;
  row.r = r;
  row.lambda = lambda;
  row.m_mu = content_mu(space, A, r, lambda);
  CoveringBracket b = covering_bracket(A.target.net, r);
  row.pack_lower = b.lower;
  row.cover_upper = b.upper;
  double rl = std::pow(r, lambda);
  const double slack = 1.0 + 1e-9;
  row.lower_ok =
      double(row.cover_upper) * rl * slack >=
      std::pow(2.0, -c.s) / c.b_mu * row.m_mu;
  row.upper_ok = double(row.pack_lower) * rl <=
                 std::pow(2.0, c.s) / c.a_mu * row.m_mu * slack;
  return row;
}

struct CoverCurveRow {
  double r = 0.0;
  long long pack_lower = 0;
  long long cover_upper = 0;
  bool below_resolution = false;
};

/// Packing/covering counts across scales with the log-log regression
/// slopes from both columns. The slope interval upper-bounds the packing
/// dimension of the set behind the net.
struct CoverCurve {
  std::vector<CoverCurveRow> rows;  // sorted by decreasing r
  double slope_pack = 0.0;
  double slope_cover = 0.0;
  double ci = 0.0;  // half-width, from the worse of the two fit stderrs
  double slope_lo = 0.0;
  double slope_hi = 0.0;
  double fit_r_min = 0.0;
  double fit_r_max = 0.0;
};

namespace detail {

struct LineFit {
  double slope = 0.0;
  double stderr_ = 0.0;
};

inline LineFit ols(const std::vector<double>& xs, const std::vector<double>& ys) {
  size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  if (n > 2) {
    double sse = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double e = ys[i] - my - f.slope * (xs[i] - mx);
      sse += e * e;
    }
    f.stderr_ = std::sqrt(sse / double(n - 2) / sxx);
  }
  return f;
}

}  // namespace detail

/// Box-counting curve and dimension bracket for the set behind `pts`.
/// The largest and smallest scale are excluded from the fit (boundary and
/// truncation contamination).
inline CoverCurve minkowski_dim_estimate(const SpaceHandle& space,
                                         const FiniteApprox& pts,
                                         std::vector<double> scales) {
  (void)space;
  if (scales.size() < 5)
    throw std::invalid_argument("minkowski_dim_estimate: >= 5 scales");
  std::sort(scales.begin(), scales.end(), std::greater<double>());
  CoverCurve curve;
  for (double r : scales) {
    CoveringBracket b = covering_bracket(pts, r);
    curve.rows.push_back({r, b.lower, b.upper, b.below_resolution});
  }
  std::vector<double> xs, yp, yc;
  for (size_t i = 1; i + 1 < curve.rows.size(); ++i) {
    const auto& row = curve.rows[i];
    xs.push_back(std::log(1.0 / row.r));
    yp.push_back(std::log(double(std::max(1LL, row.pack_lower))));
    yc.push_back(std::log(double(std::max(1LL, row.cover_upper))));
  }
  auto fp = detail::ols(xs, yp);
  auto fc = detail::ols(xs, yc);
  curve.slope_pack = fp.slope;
  curve.slope_cover = fc.slope;
  curve.ci = 2.0 * std::max(fp.stderr_, fc.stderr_);
  curve.slope_lo = std::min(fp.slope, fc.slope) - curve.ci;
  curve.slope_hi = std::max(fp.slope, fc.slope) + curve.ci;
  curve.fit_r_max = curve.rows[1].r;
  curve.fit_r_min = curve.rows[curve.rows.size() - 2].r;
  return curve;
}

enum class DecayForm { Lemma, DoublingCase, RegularCase };

/// Decay exponent delta for mu(A(r)) <= C (r/r0)^delta mu(B(x0,r0)),
/// with the constant chain's C_B exposed as a parameter; results computed
/// with the default C_B = 1 stay flagged symbolic.
struct DecayBound {
  double delta = 0.0;
  std::optional<double> C;  // unset: constant chain not evaluated
  double r0 = 1.0;
  DecayForm form = DecayForm::Lemma;
  bool symbolic_CB = true;
};

/// delta = (log 2 / (18 C_B 75^t)) (log D)^{t-1} D^{-3t} p rho^t.
inline DecayBound delta_calculator(double rho, double p, double D, double t,
                                   std::optional<double> CB = std::nullopt) {
  if (!(rho > 0.0 && p > 0.0 && D > 1.0 && t > 0.0))
    throw std::invalid_argument("delta_calculator: positive args, D > 1");
  double cb = CB.value_or(1.0);
  DecayBound b;
  b.delta = std::log(2.0) / (18.0 * cb * std::pow(75.0, t)) *
            std::pow(std::log(D), t - 1.0) * std::pow(D, -3.0 * t) * p *
            std::pow(rho, t);
  b.symbolic_CB = !CB.has_value();
  return b;
}

struct DecayCheckRow {
  double r = 0.0;
  double mass = 0.0;   // mu((A ∩ B(x0,r0))(r))
  double ratio = 0.0;  // mass / (mu(B(x0,r0)) (r/r0)^delta)
};

struct DecayCheckReport {
  std::vector<DecayCheckRow> rows;
  double fitted_exponent = 0.0;
  double delta = 0.0;
  bool pass = false;
};

/// Verifies the decay bound empirically: the per-scale ratios must stay
/// bounded (no growth beyond `ratio_margin` of the coarsest-scale ratio)
/// and the fitted decay exponent must reach 0.9 delta.
inline DecayCheckReport decay_bound_check(const SpaceHandle& space,
                                          const MeasurableSet& A,
                                          const Point& x0, double r0,
                                          const DecayBound& bound,
                                          std::vector<double> scales,
                                          double ratio_margin = 1.5) {
  std::sort(scales.begin(), scales.end(), std::greater<double>());
  if (scales.size() < 3)
    throw std::invalid_argument("decay_bound_check: >= 3 scales");
  if (scales.front() >= r0)
    throw std::invalid_argument("decay_bound_check: scales < r0");
  DecayCheckReport rep;
  rep.delta = bound.delta;
  double ball = space->ball_measure(x0, r0);
  for (double r : scales) {
    DecayCheckRow row;
    row.r = r;
    row.mass = neighborhood_measure(space, A, r);
    row.ratio = row.mass / (ball * std::pow(r / r0, bound.delta));
    rep.rows.push_back(row);
  }
  std::vector<double> xs, ys;
  for (size_t i = 1; i + 1 < rep.rows.size(); ++i) {
    xs.push_back(std::log(rep.rows[i].r));
    ys.push_back(std::log(rep.rows[i].mass));
  }
  rep.fitted_exponent = detail::ols(xs, ys).slope;
  bool bounded = true;
  double ref = rep.rows.front().ratio;
  for (const auto& row : rep.rows)
    if (row.ratio > ref * ratio_margin) bounded = false;
  if (bound.C) {
    for (const auto& row : rep.rows)
      if (row.ratio > *bound.C) bounded = false;
  }
  rep.pass = bounded && rep.fitted_exponent >= 0.9 * bound.delta;
  return rep;
}

struct DimensionDropReport {
  double slope_lo = 0.0;
  double slope_hi = 0.0;
  double ci = 0.0;
  double s = 0.0;
  double delta = 0.0;
  bool delta_symbolic = true;
  bool ambient_doubling_only = false;
  std::string verdict;  // "consistent" / "inconsistent" / "inapplicable"

  bool consistent() const { return verdict == "consistent"; }
};

/// Consistency report for the porosity dimension drop: the measured slope
/// interval must sit below s (and below s - delta once C_B is pinned).
/// Never claims to verify the theorem's constant.
inline DimensionDropReport dimension_drop_report(
    const SpaceHandle& space, const CoverCurve& curve, double rho,
    bool certified, std::optional<double> CB = std::nullopt) {
  if (!certified)
    throw std::invalid_argument(
        "dimension_drop_report: requires a porosity certificate");
  const auto& c = space->constants();
  DimensionDropReport rep;
  rep.slope_lo = curve.slope_lo;
  rep.slope_hi = curve.slope_hi;
  rep.ci = curve.ci;
  rep.s = c.s;
  rep.ambient_doubling_only = (c.kind != MeasureKind::Regular);
  // regular route: Remark-style conversion to mean porosity, then the
  // closed-form delta with t = s
  double l = 0.5 * std::pow(c.a_mu / c.b_mu, 1.0 / c.s);
  double D = 2.0 / ((1.0 - l) * l * l);
  double mean_rho = l * l * rho / 3.0;
  DecayBound b = delta_calculator(mean_rho, 1.0, D, c.s, CB);
  rep.delta = b.delta;
  rep.delta_symbolic = b.symbolic_CB;
  if (rep.ambient_doubling_only) {
    rep.verdict = "inapplicable";  // doubling-only ambient: drop can vanish
  } else if (rep.delta_symbolic) {
    rep.verdict = (curve.slope_hi < c.s) ? "consistent" : "inconsistent";
  } else {
    rep.verdict = (curve.slope_hi <= c.s - rep.delta) ? "consistent"
                                                      : "inconsistent";
  }
  return rep;
}

}  // namespace porolab
