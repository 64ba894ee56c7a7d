#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "porolab/net.hpp"
#include "porolab/space.hpp"

namespace porolab {

enum class PorosityVariant { Por, PorStar };

/// Bracket for a porosity value at one scale. lo is a certified lower
/// bound (every reported hole is real); hi adds the probe and target
/// resolutions, so the true value lies in [lo, hi].
struct PorosityInterval {
  double lo = 0.0;
  double hi = 1.0;
  double r = 0.0;
  double resolution = 0.0;
  PorosityVariant variant = PorosityVariant::Por;
  bool degenerate = false;  // empty probe net
};

namespace detail {

inline FiniteApprox probe_net(const SpaceHandle& space, const Point& x,
                              double radius, double res) {
  FiniteApprox probe;
  probe.parent = space;
  probe.resolution = res;
  probe.target = "probe";
  probe.points = space->cover_candidates(x, radius, res);
  probe.finalize();
  return probe;
}

}  // namespace detail

/// Largest relative hole at scale r around x that misses A and fits in
/// B(x,r) together with its offset: rho maximizing
/// min(dist(y,A), r - d(x,y))/r over hole centers y.
inline PorosityInterval porosity_at_scale(const SpaceHandle& space,
                                          const TargetSet& A, const Point& x,
                                          double r, double probe_res) {
  if (r <= 0.0) throw std::invalid_argument("porosity_at_scale: r > 0");
  if (probe_res >= r)
    throw std::invalid_argument("porosity_at_scale: probe_res < r");
  PorosityInterval out;
  out.r = r;
  out.variant = PorosityVariant::Por;
  out.resolution = probe_res + A.dist_slack();
  FiniteApprox probe = detail::probe_net(space, x, r, probe_res);
  if (probe.empty()) {
    out.degenerate = true;
    return out;
  }
  double best = 0.0;
  for (const auto& y : probe.points) {
    double d = space->distance(x, y);
    if (d > r) continue;
    double rho = std::min(A.dist_lower(y), r - d);
    best = std::max(best, rho);
  }
  out.lo = std::clamp(best / r, 0.0, 1.0);
  out.hi = std::min(1.0, out.lo + out.resolution / r);
  return out;
}

/// Star variant: the hole only needs to be contained in B(x,r) \ A, so it
/// may press against the far side of the ball; values range up to 1.
/// Containment is enforced through the space's exact hole-radius cap when
/// available, else conservatively through probe-net points just outside
/// the ball.
inline PorosityInterval star_porosity_at_scale(const SpaceHandle& space,
                                               const TargetSet& A,
                                               const Point& x, double r,
                                               double probe_res) {
  if (r <= 0.0) throw std::invalid_argument("star_porosity_at_scale: r > 0");
  if (probe_res >= r)
    throw std::invalid_argument("star_porosity_at_scale: probe_res < r");
  PorosityInterval out;
  out.r = r;
  out.variant = PorosityVariant::PorStar;
  out.resolution = probe_res + A.dist_slack();
  bool exact_cap = space->max_hole_radius(x, r, x).has_value();
  // without a closed-form cap the boundary of B(x,r) is probed through
  // net points slightly beyond it, so the net must extend past radius r
  FiniteApprox probe =
      detail::probe_net(space, x, exact_cap ? r : 2.0 * r, probe_res);
  if (probe.empty()) {
    out.degenerate = true;
    return out;
  }
  double best = 0.0;
  for (const auto& y : probe.points) {
    double d = space->distance(x, y);
    if (d > r) continue;
    double cap;
    if (exact_cap) {
      cap = *space->max_hole_radius(x, r, y);
    } else {
      cap = std::numeric_limits<double>::infinity();
      for (const auto& z : probe.points) {
        if (space->distance(x, z) <= r - probe_res) continue;
        cap = std::min(cap, space->distance(y, z) - probe_res);
      }
      cap = std::max(cap, 0.0);
    }
    double rho = std::min(A.dist_lower(y), cap);
    best = std::max(best, rho);
  }
  out.lo = std::clamp(best / r, 0.0, 1.0);
  out.hi = std::min(1.0, out.lo + out.resolution / r);
  return out;
}

struct PorosityProfile {
  std::vector<PorosityInterval> entries;  // same order as the input scales
  double liminf_lo = 0.0;   // min of lo over the smallest third of scales
  double window_lo = 0.0;   // scale window that fed the liminf estimate
  double window_hi = 0.0;
  bool lower_bound_only = true;  // a finite sweep cannot certify the liminf
};

/// Per-scale porosity with a liminf estimate from the fine end of the
/// sweep. Scales must be decreasing.
inline PorosityProfile porosity_profile(const SpaceHandle& space,
                                        const TargetSet& A, const Point& x,
                                        const std::vector<double>& scales,
                                        double probe_res_factor = 0.02) {
  if (scales.empty())
    throw std::invalid_argument("porosity_profile: need scales");
  for (size_t i = 1; i < scales.size(); ++i)
    if (scales[i] >= scales[i - 1])
      throw std::invalid_argument("porosity_profile: scales must decrease");
  PorosityProfile prof;
  for (double r : scales)
    prof.entries.push_back(
        porosity_at_scale(space, A, x, r, probe_res_factor * r));
  size_t third = std::max<size_t>(1, scales.size() / 3);
  size_t start = scales.size() - third;
  double m = 1.0;
  for (size_t i = start; i < scales.size(); ++i)
    m = std::min(m, prof.entries[i].lo);
  prof.liminf_lo = m;
  prof.window_hi = scales[start];
  prof.window_lo = scales.back();
  return prof;
}

struct PorosityWitness {
  Point x;
  double r = 0.0;
  PorosityInterval interval;
};

struct PorosityCertificate {
  double rho = 0.0;
  double r_p = 0.0;
  bool pass = false;
  std::vector<PorosityWitness> failures;
  size_t checked = 0;
};

/// Samples (x, r) pairs and certifies por(A,x,r) >= rho for all of them.
/// Scales at or above r_p are ignored.
inline PorosityCertificate uniform_porosity_certificate(
    const SpaceHandle& space, const TargetSet& A, double rho, double r_p,
    const std::vector<Point>& sample, const std::vector<double>& scales,
    double probe_res_factor = 0.02) {
  PorosityCertificate cert;
  cert.rho = rho;
  cert.r_p = r_p;
  for (const auto& x : sample) {
    for (double r : scales) {
      if (r >= r_p) continue;
      auto iv = porosity_at_scale(space, A, x, r, probe_res_factor * r);
      ++cert.checked;
      if (iv.lo < rho) cert.failures.push_back({x, r, iv});
    }
  }
  cert.pass = cert.failures.empty() && cert.checked > 0;
  return cert;
}

/// The tuple of the mean-porosity definition: a p-fraction of the annuli
/// between successive D^{-k} scales must contain a point y with
/// dist(y,A) >= rho d(y,x).
struct MeanPorosityParams {
  double rho = 0.0;
  double D = 2.0;
  double p = 1.0;
  int n0 = 1;
  int k0 = 0;

  void validate() const {
    if (!(rho > 0.0 && rho <= 1.0))
      throw std::invalid_argument("MeanPorosityParams: rho in (0,1]");
    if (D <= 1.0) throw std::invalid_argument("MeanPorosityParams: D > 1");
    if (!(p > 0.0 && p <= 1.0))
      throw std::invalid_argument("MeanPorosityParams: p in (0,1]");
    if (n0 < 1) throw std::invalid_argument("MeanPorosityParams: n0 >= 1");
    if (k0 < 0) throw std::invalid_argument("MeanPorosityParams: k0 >= 0");
  }
};

struct MeanPorosityReport {
  MeanPorosityParams params;
  std::vector<int> psi;          // psi_{k0+1} .. psi_{k0+n_max}
  std::vector<int> S;            // running sums S_{k0,n}
  std::vector<bool> annulus_empty;
  bool verdict = false;
};

/// Evaluates the psi indicators by probe-net search over each annulus
/// D^{-k} < d(x,y) <= D^{-k+1}; empty annuli conservatively score 0.
inline MeanPorosityReport mean_porosity_check(const SpaceHandle& space,
                                              const TargetSet& A,
                                              const Point& x,
                                              const MeanPorosityParams& params,
                                              int n_max,
                                              double probe_res_factor = 0.01) {
  params.validate();
  if (n_max < params.n0)
    throw std::invalid_argument("mean_porosity_check: n_max >= n0");
  MeanPorosityReport rep;
  rep.params = params;
  for (int k = params.k0 + 1; k <= params.k0 + n_max; ++k) {
    double r_in = std::pow(params.D, -k);
    double r_out = std::pow(params.D, -k + 1);
    double res = probe_res_factor * r_in;
    FiniteApprox probe = detail::probe_net(space, x, r_out, res);
    int psi = 0;
    bool any_in_annulus = false;
    for (const auto& y : probe.points) {
      double d = space->distance(x, y);
      if (d <= r_in || d > r_out) continue;
      any_in_annulus = true;
      if (A.dist_lower(y) >= params.rho * d) {
        psi = 1;
        break;
      }
    }
    rep.psi.push_back(psi);
    rep.annulus_empty.push_back(!any_in_annulus);
    rep.S.push_back((rep.S.empty() ? 0 : rep.S.back()) + psi);
  }
  rep.verdict = true;
  for (int n = params.n0; n <= n_max; ++n)
    if (rep.S[n - 1] < params.p * n) rep.verdict = false;
  return rep;
}

/// Conversions from a uniform porosity bound to mean-porosity parameters.
/// The doubling case keeps the caller's annulus ratio D; the regular case
/// derives everything from the structure constants.
inline MeanPorosityParams uniform_to_mean(double rho, double D,
                                          const StructureConstants& c,
                                          MeasureKind mode, int k0 = 0) {
  if (!(rho > 0.0 && rho < 1.0))
    throw std::invalid_argument("uniform_to_mean: rho in (0,1)");
  MeanPorosityParams out;
  out.k0 = k0;
  if (mode == MeasureKind::DoublingOnly) {
    if (D <= 1.0) throw std::invalid_argument("uniform_to_mean: D > 1");
    long long flr = (long long)std::floor(std::log(rho) / std::log(D));
    out.rho = rho;
    out.D = D;
    out.p = -1.0 / (2.0 * double(flr));
    out.n0 = int(-flr);
  } else {
    double l = 0.5 * std::pow(c.a_mu / c.b_mu, 1.0 / c.s);
    out.D = 2.0 / ((1.0 - l) * l * l);
    out.rho = l * l * rho / 3.0;
    out.p = 1.0;
    out.n0 = 1;
  }
  out.validate();
  return out;
}

}  // namespace porolab
