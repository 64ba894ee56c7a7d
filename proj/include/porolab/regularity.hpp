#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "porolab/dimension.hpp"
#include "porolab/net.hpp"
#include "porolab/porosity.hpp"
#include "porolab/space.hpp"

namespace porolab {

/// Parameters of the nested-ball t-regular measure construction. In paper
/// mode (compact = false) they come from the closed-form recipe in
/// builder_params; compact mode uses caller-chosen small branching with a
/// packing rule that keeps subtree supports disjoint, for use as mass
/// atoms inside envelope holes.
struct BuilderParams {
  double c1 = 0.0;
  double d = 0.0;   // seed ratio, a power of 1/2 in paper mode
  long long M = 0;  // branching count
  double d1 = 0.0;  // scale ratio, d1 = M^{-1/t}
  double t = 0.5;
  double s = 1.0;
  bool compact = false;

  double pack_radius(double R, int k) const {
    // child centers of a level-(k-1) node are a maximal packing at this
    // radius inside the candidate ball around the parent
    return compact ? std::pow(d1, k) * R
                   : std::pow(2.0, 1.0 / t) * d * std::pow(d1, k - 1) * R;
  }

  double candidate_radius(double R, int k) const {
    // compact mode confines children to the inner third of the parent
    // ball so sibling subtrees stay pairwise disjoint
    double parent_r = std::pow(d1, k - 1) * R;
    return compact ? parent_r / 3.0 : parent_r;
  }
};

/// Closed-form recipe: c1 = a^2 / (2^{2s+s/t} b^2); d the largest power of
/// 1/2 with d < (1/10) 2^{-1/t}, d^{s-t} <= c1/2 and d^t <= 1/2; M the
/// integer nearest d^{-t}; d1 = M^{-1/t}.
inline BuilderParams builder_params(double s, double t, double a_mu,
                                    double b_mu) {
  if (!(0.0 < t && t < s))
    throw std::invalid_argument("builder_params: need 0 < t < s");
  if (!(0.0 < a_mu && a_mu <= b_mu))
    throw std::invalid_argument("builder_params: need 0 < a_mu <= b_mu");
  BuilderParams p;
  p.t = t;
  p.s = s;
  p.c1 = a_mu * a_mu / (std::pow(2.0, 2.0 * s + s / t) * b_mu * b_mu);
  double d = 0.5;
  while (!(d < 0.1 * std::pow(2.0, -1.0 / t) &&
           std::pow(d, s - t) <= p.c1 / 2.0 && std::pow(d, t) <= 0.5))
    d *= 0.5;
  p.d = d;
  p.M = std::llround(std::pow(d, -t));
  p.d1 = std::pow(double(p.M), -1.0 / t);
  return p;
}

/// Atomic realization of the nested-ball measure: M^k centers at level k,
/// each node carrying mass R^t M^{-k}; the measure lives on the deepest
/// level. Mass bookkeeping is exact (dyadic weights in paper mode).
class RegularMeasureTree {
 public:
  Point z;
  double R = 0.0;
  double t = 0.5;
  BuilderParams params;
  int k_max = 0;
  std::vector<std::vector<Point>> levels;  // levels[k], k = 0..k_max

  double total_mass() const { return std::pow(R, t); }
  double node_mass(int k) const {
    return total_mass() / std::pow(double(params.M), k);
  }
  double leaf_mass() const { return node_mass(k_max); }
  const std::vector<Point>& leaves() const { return levels.back(); }

  double level_mass(int k) const {
    return double(levels[k].size()) * node_mass(k);
  }

  /// nu(B(x,r)) as the leaf-atom sum.
  double ball_mass(const Point& x, double r, const Space& sp) const {
    if (!sorted_leaf_coords_.empty() && is_real(x)) {
      double v = as_real(x);
      auto lo = std::lower_bound(sorted_leaf_coords_.begin(),
                                 sorted_leaf_coords_.end(), v - r);
      auto hi = std::upper_bound(sorted_leaf_coords_.begin(),
                                 sorted_leaf_coords_.end(), v + r);
      return double(hi - lo) * leaf_mass();
    }
    long long n = 0;
    for (const auto& p : leaves())
      if (sp.distance(x, p) <= r) ++n;
    return double(n) * leaf_mass();
  }

  /// Proof-predicted regularity constants on the valid scale window.
  double predicted_a() const {
    return std::pow(params.d1, 2.0 * t) / std::pow(1.0 - 2.0 * params.d1, t);
  }
  double predicted_b() const {
    return std::pow(params.d1, -t) / std::pow(1.0 - 2.0 * params.d1, t);
  }
  double window_lo() const { return 10.0 * std::pow(params.d1, k_max) * R; }
  double window_hi() const { return (1.0 - 2.0 * params.d1) * R; }

  void finalize() {
    sorted_leaf_coords_.clear();
    const auto& lv = leaves();
    if (std::all_of(lv.begin(), lv.end(),
                    [](const Point& p) { return is_real(p); })) {
      sorted_leaf_coords_.reserve(lv.size());
      for (const auto& p : lv) sorted_leaf_coords_.push_back(as_real(p));
      std::sort(sorted_leaf_coords_.begin(), sorted_leaf_coords_.end());
    }
  }

  const std::vector<double>& sorted_leaf_coords() const {
    return sorted_leaf_coords_;
  }

  nlohmann::json to_json() const;

 private:
  std::vector<double> sorted_leaf_coords_;
};

namespace detail {

// exact binary-rational encoding of an IEEE double: v = num * 2^{-shift}
inline nlohmann::json exact_rational(double v) {
  int exp = 0;
  double m = std::frexp(v, &exp);
  int64_t num = 0;
  int shift = 0;
  if (m != 0.0) {
    num = (int64_t)std::ldexp(m, 53);
    shift = 53 - exp;
  }
  return {{"num", num}, {"shift", shift}};
}

inline double from_exact_rational(const nlohmann::json& j) {
  return std::ldexp(double(j.at("num").get<int64_t>()),
                    -j.at("shift").get<int>());
}

}  // namespace detail

inline nlohmann::json RegularMeasureTree::to_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["R"] = detail::exact_rational(R);
  j["t"] = t;
  j["M"] = params.M;
  j["d1"] = detail::exact_rational(params.d1);
  j["k_max"] = k_max;
  nlohmann::json lv = nlohmann::json::array();
  for (const auto& level : levels) {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& p : level) cs.push_back(detail::exact_rational(as_real(p)));
    lv.push_back(std::move(cs));
  }
  j["levels"] = std::move(lv);
  return j;
}

/// Iterated maximal-packing construction of the t-regular measure inside
/// B(z, 2R). Every node gets exactly M children, the first being the node
/// itself; throws when a node's ball cannot host M separated candidates.
inline RegularMeasureTree build_regular_measure(const SpaceHandle& space,
                                                const Point& z, double R,
                                                double t,
                                                const BuilderParams& params,
                                                int k_max) {
  if (R <= 0.0 || k_max < 1)
    throw std::invalid_argument("build_regular_measure: R > 0, k_max >= 1");
  if (space->constants().kind != MeasureKind::Regular)
    throw std::invalid_argument("build_regular_measure: regular ambient only");
  RegularMeasureTree tree;
  tree.z = z;
  tree.R = R;
  tree.t = t;
  tree.params = params;
  tree.k_max = k_max;
  tree.levels.push_back({z});
  for (int k = 1; k <= k_max; ++k) {
    double cand_r = params.candidate_radius(R, k);
    double pack_r = params.pack_radius(R, k);
    std::vector<Point> next;
    next.reserve(tree.levels.back().size() * params.M);
    for (const auto& parent : tree.levels.back()) {
      auto grid = space->cover_candidates(parent, cand_r, pack_r / 4.0);
      std::vector<Point> kept;
      if (space->is_coordinate_metric() && is_real(parent) &&
          std::all_of(grid.begin(), grid.end(),
                      [](const Point& p) { return is_real(p); })) {
        // the first child is the parent itself ("x_{i...1} = x_i"), so
        // sweep outward from it on sorted coordinates instead of the
        // generic quadratic packing
        std::vector<double> xs;
        xs.reserve(grid.size());
        for (const auto& p : grid) xs.push_back(as_real(p));
        std::sort(xs.begin(), xs.end());
        double pv = as_real(parent);
        double gap = space->coord_gap_for(2.0 * pack_r);
        kept.push_back(parent);
        double last = pv;
        for (auto it = std::upper_bound(xs.begin(), xs.end(), pv);
             it != xs.end(); ++it)
          if (*it - last > gap) {
            kept.push_back(Point{*it});
            last = *it;
          }
        last = pv;
        for (auto it = std::make_reverse_iterator(
                 std::lower_bound(xs.begin(), xs.end(), pv));
             it != xs.rend(); ++it)
          if (last - *it > gap) {
            kept.push_back(Point{*it});
            last = *it;
          }
      } else {
        FiniteApprox cand;
        cand.parent = space;
        cand.points.push_back(parent);  // "x_{i...1} = x_i"
        cand.points.insert(cand.points.end(), grid.begin(), grid.end());
        kept = greedy_packing(cand, pack_r);
      }
      if ((long long)kept.size() < params.M)
        throw std::runtime_error(
            "build_regular_measure: only " + std::to_string(kept.size()) +
            " candidates at level " + std::to_string(k) + " node " +
            describe(parent) + " (need " + std::to_string(params.M) + ")");
      kept.resize(params.M);
      next.insert(next.end(), kept.begin(), kept.end());
    }
    tree.levels.push_back(std::move(next));
  }
  tree.finalize();
  // construction sanity: sibling separation on sorted coordinates
  if (!tree.sorted_leaf_coords().empty()) {
    const auto& xs = tree.sorted_leaf_coords();
    double min_sep = params.pack_radius(R, k_max);  // conservative floor
    for (size_t i = 1; i < xs.size(); ++i)
      if (xs[i] - xs[i - 1] <= min_sep * 1e-9)
        throw std::runtime_error("build_regular_measure: leaf collision");
  }
  return tree;
}

struct RegularityReport {
  double a_emp = 0.0;
  double b_emp = 0.0;
  bool pass = false;
  size_t skipped = 0;  // samples off the support
  size_t checked = 0;
};

/// Empirical regularity scan: a_emp/b_emp = extremal nu(B(x,r))/r^t over
/// the sample; optional predicted bounds turn it into a containment check
/// with the given tolerance.
inline RegularityReport verify_regularity(
    const std::function<double(const Point&, double)>& ball_mass,
    const std::vector<Point>& sample, double t,
    const std::vector<double>& scales,
    std::optional<std::pair<double, double>> predicted = std::nullopt,
    double tol = 0.10) {
  RegularityReport rep;
  rep.a_emp = std::numeric_limits<double>::infinity();
  for (const auto& x : sample) {
    bool on_support = ball_mass(x, scales.back() * 1e-6) > 0.0 ||
                      ball_mass(x, 0.0) > 0.0;
    if (!on_support) {
      ++rep.skipped;
      continue;
    }
    for (double r : scales) {
      double ratio = ball_mass(x, r) / std::pow(r, t);
      rep.a_emp = std::min(rep.a_emp, ratio);
      rep.b_emp = std::max(rep.b_emp, ratio);
      ++rep.checked;
    }
  }
  rep.pass = rep.checked > 0 && rep.a_emp > 0.0 &&
             std::isfinite(rep.b_emp);
  if (predicted && rep.pass) {
    rep.pass = rep.a_emp >= predicted->first * (1.0 - tol) &&
               rep.b_emp <= predicted->second * (1.0 + tol);
  }
  return rep;
}

struct ForwardPorosity {
  double K = 0.0;
  double rho_bound = 0.0;  // por*(A,x,2r) >= rho_bound on the window
  double r_window = 0.0;
};

/// K(mu,nu) = log(b_mu b_nu 2^{3t} / (a_mu a_nu)) / ((s-t) log 2);
/// rho_bound = 2^{-(floor(K)+1)-3}.
inline ForwardPorosity porosity_from_regularity(const StructureConstants& mu,
                                                double t, double a_nu,
                                                double b_nu, double r_nu) {
  if (t >= mu.s)
    throw std::invalid_argument("porosity_from_regularity: t < s required");
  ForwardPorosity f;
  f.K = std::log(mu.b_mu * b_nu / (mu.a_mu * a_nu) * std::pow(2.0, 3.0 * t)) /
        ((mu.s - t) * std::log(2.0));
  double k = std::floor(f.K) + 1.0;
  f.rho_bound = std::pow(2.0, -k - 3.0);
  f.r_window = 0.5 * std::min(mu.r_mu, r_nu);
  return f;
}

struct EnvelopeHole {
  Point packing_center;  // x_{ji} in A
  Point z;               // hole center
  double hole_radius = 0.0;
  RegularMeasureTree tree;
};

struct EnvelopeLevel {
  double sigma = 0.0;  // packing scale gamma^{n0+j}
  std::vector<EnvelopeHole> holes;
};

/// The t-regular superset built by planting measure trees in porosity
/// holes of A at every envelope scale. F = A ∪ (all tree supports);
/// atoms() serves nu(B(x,r)) queries over the union of the tree measures.
struct EnvelopeSet {
  double gamma = 0.0;
  int n0 = 0;
  int j_max = 0;
  std::vector<EnvelopeLevel> levels;

  double window_lo() const {
    return std::pow(gamma, n0 + j_max);
  }
  double window_hi() const { return std::pow(gamma, n0 + 1); }

  void finalize() {
    atoms_.clear();
    for (const auto& lvl : levels)
      for (const auto& h : lvl.holes) {
        double lm = h.tree.leaf_mass();
        for (const auto& p : h.tree.leaves())
          atoms_.push_back({as_real(p), lm});
      }
    std::sort(atoms_.begin(), atoms_.end());
    prefix_.resize(atoms_.size() + 1);
    prefix_[0] = 0.0;
    for (size_t i = 0; i < atoms_.size(); ++i)
      prefix_[i + 1] = prefix_[i] + atoms_[i].second;
  }

  double ball_mass(const Point& x, double r) const {
    double v = as_real(x);
    auto lo = std::lower_bound(
        atoms_.begin(), atoms_.end(), std::make_pair(v - r, -1.0));
    auto hi = std::upper_bound(
        atoms_.begin(), atoms_.end(),
        std::make_pair(v + r, std::numeric_limits<double>::infinity()));
    return prefix_[hi - atoms_.begin()] - prefix_[lo - atoms_.begin()];
  }

  double total_mass() const { return prefix_.empty() ? 0.0 : prefix_.back(); }

 private:
  std::vector<std::pair<double, double>> atoms_;  // (coordinate, mass)
  std::vector<double> prefix_;
};

/// Reverse construction: for each level j <= j_max take a maximal
/// gamma^{n0+j}-packing of A, find a hole of radius rho' gamma^{n0+j}
/// inside each packing ball, and plant a t-regular tree of mass
/// gamma^{(n0+j+1)t} on the inner fifth of the hole. Fails loudly when a
/// hole cannot be found (the porosity certificate was overstated).
inline EnvelopeSet regular_envelope(const SpaceHandle& space,
                                    const TargetSet& A, double rho_prime,
                                    double r_p, double t, int j_max,
                                    const BuilderParams& tree_params,
                                    int tree_depth,
                                    bool allow_symbolic_delta = false,
                                    double probe_res_factor = 0.01) {
  const auto& c = space->constants();
  if (c.kind != MeasureKind::Regular)
    throw std::invalid_argument("regular_envelope: regular ambient only");
  if (!(t < c.s))
    throw std::invalid_argument("regular_envelope: t < s required");
  // precondition s - delta < t < s is only checkable once C_B is pinned;
  // with the symbolic default the caller must opt in explicitly
  if (!allow_symbolic_delta) {
    double l = 0.5 * std::pow(c.a_mu / c.b_mu, 1.0 / c.s);
    double D = 2.0 / ((1.0 - l) * l * l);
    DecayBound b = delta_calculator(l * l * rho_prime / 3.0, 1.0, D, c.s, 1.0);
    if (t <= c.s - b.delta)
      throw std::invalid_argument(
          "regular_envelope: t outside (s-delta, s); pass "
          "allow_symbolic_delta to proceed with the unevaluated constant");
  }
  EnvelopeSet env;
  env.gamma = rho_prime / 5.0;
  env.j_max = j_max;
  double l = 0.5 * std::pow(c.a_mu / c.b_mu, 1.0 / c.s);
  double D = 2.0 / ((1.0 - l) * l * l);
  double D1 = 0.5 / (D * D);
  double limit = D1 * std::min(r_p, c.r_mu);
  env.n0 = 1;
  while (std::pow(env.gamma, env.n0) >= limit) ++env.n0;
  for (int j = 1; j <= j_max; ++j) {
    EnvelopeLevel lvl;
    lvl.sigma = std::pow(env.gamma, env.n0 + j);
    double hole_need = rho_prime * lvl.sigma;  // = 5 gamma^{n0+j+1}
    double inner_R = std::pow(env.gamma, env.n0 + j + 1);
    auto centers = greedy_packing(A.net, lvl.sigma);
    for (const auto& x : centers) {
      double res = probe_res_factor * lvl.sigma;
      auto probe = detail::probe_net(space, x, lvl.sigma, res);
      double best = -1.0;
      const Point* bz = nullptr;
      for (const auto& y : probe.points) {
        auto cap = space->max_hole_radius(x, lvl.sigma, y);
        double v = std::min(A.dist_lower(y),
                            cap ? *cap : lvl.sigma - space->distance(x, y));
        if (v > best) {
          best = v;
          bz = &y;
        }
      }
      if (!bz || best < hole_need)
        throw std::runtime_error(
            "regular_envelope: no rho' hole in the packing ball at " +
            describe(x) + " scale " + std::to_string(lvl.sigma));
      EnvelopeHole hole;
      hole.packing_center = x;
      hole.z = *bz;
      hole.hole_radius = hole_need;
      hole.tree = build_regular_measure(space, *bz, inner_R, t, tree_params,
                                        tree_depth);
      lvl.holes.push_back(std::move(hole));
    }
    // hole balls live inside disjoint packing balls, but assert anyway
    std::vector<double> zc;
    for (const auto& h : lvl.holes) zc.push_back(as_real(h.z));
    std::sort(zc.begin(), zc.end());
    for (size_t i = 1; i < zc.size(); ++i)
      if (zc[i] - zc[i - 1] <= 2.0 * hole_need)
        throw std::runtime_error("regular_envelope: overlapping holes");
    env.levels.push_back(std::move(lvl));
  }
  env.finalize();
  return env;
}

}  // namespace porolab
