#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "porolab/space.hpp"

namespace porolab {

/// Rooted binary tree realized as a geodesic space: level-n branches are
/// segments of length lambda^n (n = 1..depth), glued so that the two
/// children of a branch hang from its far end. The height function l maps
/// a point to its path distance from the root; the boundary (all infinite
/// words) sits at l = lambda/(1-lambda) and is represented by depth-
/// truncated marker points. The measure is edge length (boundary markers
/// are mass-free). d(x,y) = (l(x)-l(m)) + (l(y)-l(m)) with m the deepest
/// common point of the two root paths.
class TreeSpace final : public Space {
 public:
  TreeSpace(double lambda, int depth)
      : Space("tree(" + std::to_string(lambda) + ",d" + std::to_string(depth) +
                  ")",
              StructureConstants{}),
        lam_(lambda),
        depth_(depth) {
    if (!(lambda > 0.0 && lambda <= 0.5))
      throw std::invalid_argument("TreeSpace: need 0 < lambda <= 1/2");
    if (depth < 1) throw std::invalid_argument("TreeSpace: depth >= 1");
    pw_.resize(depth_ + 1);
    L_.resize(depth_ + 1);
    pw_[0] = 1.0;
    L_[0] = 0.0;
    for (int n = 1; n <= depth_; ++n) {
      pw_[n] = pw_[n - 1] * lam_;
      L_[n] = L_[n - 1] + pw_[n];
    }
    Linf_ = lam_ / (1.0 - lam_);
    constants_ = scan_constants();
    constants_.validate();
  }

  double lambda() const { return lam_; }
  int depth() const { return depth_; }
  double boundary_height() const { return Linf_; }  // l-value of the boundary

  double height(const Point& p) const {
    const auto& q = std::get<TreePoint>(p);
    if (q.boundary) return Linf_;
    if (q.word.empty()) return 0.0;
    return L_[q.word.size() - 1] + q.offset;
  }

  /// Exact distance from any point to the boundary set.
  double boundary_dist(const Point& p) const { return Linf_ - height(p); }

  static Point root() { return TreePoint{{}, 0.0, false}; }

  Point marker(std::vector<uint8_t> word) const {
    if ((int)word.size() != depth_)
      throw std::invalid_argument("TreeSpace: marker word must have full depth");
    return TreePoint{std::move(word), 0.0, true};
  }

  double distance(const Point& a, const Point& b) const override {
    const auto& x = std::get<TreePoint>(a);
    const auto& y = std::get<TreePoint>(b);
    size_t delta = 0;
    size_t nmax = std::min(x.word.size(), y.word.size());
    while (delta < nmax && x.word[delta] == y.word[delta]) ++delta;
    if (x.boundary && y.boundary && delta == x.word.size() &&
        delta == y.word.size())
      return 0.0;  // markers collide below net resolution
    double lm;
    if (delta == 0) {
      lm = 0.0;
    } else {
      double ox = (x.word.size() == delta && !x.boundary) ? x.offset : pw_[delta];
      double oy = (y.word.size() == delta && !y.boundary) ? y.offset : pw_[delta];
      lm = L_[delta - 1] + std::min(ox, oy);
    }
    return (height(a) - lm) + (height(b) - lm);
  }

  double ball_measure(const Point& x, double r) const override {
    double total = 0.0;
    visit_covered(x, r, [&](const std::vector<uint8_t>&, int, double ulo,
                            double uhi) { total += uhi - ulo; },
                  [](const std::vector<uint8_t>&, double) {});
    return total;
  }

  std::vector<Point> cover_candidates(const Point& center, double radius,
                                      double spacing) const override {
    std::vector<Point> out;
    if (height(center) <= radius) out.push_back(root());
    std::vector<uint8_t> w;
    visit_covered(
        center, radius,
        [&](const std::vector<uint8_t>& word, int n, double ulo, double uhi) {
          double A = L_[n - 1];
          double len = uhi - ulo;
          long long ng =
              std::max(1LL, (long long)std::ceil(len / (2.0 * spacing)));
          if (len == 0.0) ng = 0;
          for (long long i = 0; i <= ng; ++i) {
            double u = (ng == 0) ? ulo : ulo + len * i / ng;
            if (u > A) {
              out.push_back(TreePoint{word, u - A, false});
            } else if (n > 1) {
              // the branch start coincides with the parent's far end
              std::vector<uint8_t> parent(word.begin(), word.end() - 1);
              out.push_back(TreePoint{std::move(parent), pw_[n - 1], false});
            }
            // u == 0 on a level-1 branch is the root, emitted above
          }
        },
        [&](const std::vector<uint8_t>& word, double d) {
          if (d <= radius) out.push_back(TreePoint{word, 0.0, true});
        });
    return out;
  }

  std::optional<double> total_mass() const override {
    double m = 0.0;
    for (int n = 1; n <= depth_; ++n) m += std::ldexp(pw_[n], n);  // 2^n λ^n
    return m;
  }

  /// Edge mass of the open r-neighborhood of the boundary set (exact
  /// closed form: level-n branches contribute where l > Linf - r).
  double boundary_neighborhood_mass(double r) const {
    double total = 0.0;
    double cut = Linf_ - r;
    for (int n = 1; n <= depth_; ++n) {
      double lo = std::max(L_[n - 1], cut);
      if (L_[n] > lo) total += std::ldexp(L_[n] - lo, n);
    }
    return total;
  }

 private:
  enum class Rel { OnPath, AtX, Below, Diverged };

  // Calls branch_fn(word, level, ulo, uhi) for every branch whose covered
  // l-range [ulo, uhi] inside B(x,r) is nonempty, and marker_fn(word, d)
  // for every full-depth subtree not pruned away. Subtrees entirely
  // outside the ball are pruned.
  template <class BranchFn, class MarkerFn>
  void visit_covered(const Point& xp, double r, BranchFn&& branch_fn,
                     MarkerFn&& marker_fn) const {
    const auto& x = std::get<TreePoint>(xp);
    double lx = height(xp);
    std::vector<uint8_t> w;
    w.reserve(depth_);
    for (uint8_t c = 0; c < 2; ++c) {
      Rel rel;
      if (x.word.empty() && !x.boundary) {
        rel = Rel::Below;
      } else if (c == x.word[0]) {
        rel = (x.word.size() == 1 && !x.boundary) ? Rel::AtX : Rel::OnPath;
      } else {
        rel = Rel::Diverged;
      }
      w.push_back(c);
      walk(x, lx, r, w, 1, rel, 0.0, branch_fn, marker_fn);
      w.pop_back();
    }
  }

  template <class BranchFn, class MarkerFn>
  void walk(const TreePoint& x, double lx, double r, std::vector<uint8_t>& w,
            int n, Rel rel, double Ldelta, BranchFn&& branch_fn,
            MarkerFn&& marker_fn) const {
    double A = L_[n - 1], B = L_[n];
    double ulo = A, uhi = B;
    switch (rel) {
      case Rel::OnPath:
        ulo = std::max(A, lx - r);
        break;
      case Rel::AtX:
        ulo = std::max(A, lx - r);
        uhi = std::min(B, lx + r);
        break;
      case Rel::Below:
        uhi = std::min(B, lx + r);
        break;
      case Rel::Diverged:
        uhi = std::min(B, 2.0 * Ldelta + r - lx);
        break;
    }
    if (uhi >= ulo) branch_fn(w, n, ulo, uhi);
    if (n == depth_) {
      if ((int)w.size() == depth_) {
        Point m = TreePoint{w, 0.0, true};
        marker_fn(w, distance(Point(TreePoint(x)), m));
      }
      return;
    }
    // prune subtrees whose every point is strictly beyond the ball
    if (rel == Rel::Below || rel == Rel::AtX) {
      if (B - lx >= r) return;
    } else if (rel == Rel::Diverged) {
      if ((lx - Ldelta) + (B - Ldelta) >= r) return;
    }
    for (uint8_t c = 0; c < 2; ++c) {
      Rel crel;
      double cLd = Ldelta;
      switch (rel) {
        case Rel::OnPath:
          if (c == x.word[n]) {
            crel = (x.word.size() == size_t(n + 1) && !x.boundary) ? Rel::AtX
                                                                   : Rel::OnPath;
          } else {
            crel = Rel::Diverged;
            cLd = B;
          }
          break;
        case Rel::AtX:
        case Rel::Below:
          crel = Rel::Below;
          break;
        case Rel::Diverged:
          crel = Rel::Diverged;
          break;
      }
      w.push_back(c);
      walk(x, lx, r, w, n + 1, crel, cLd, branch_fn, marker_fn);
      w.pop_back();
    }
  }

  StructureConstants scan_constants() {
    StructureConstants c;
    c.s = 1.0;
    c.r_mu = Linf_ / 2.0;
    c.kind = MeasureKind::Regular;
    c.c_mu = 3.0;  // exact for lambda = 1/2; refined below otherwise
    // extremal-ball scan for 1-regularity constants of the truncated tree
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    std::vector<Point> pts;
    for (int n = 1; n <= depth_; ++n) {
      for (int i = 0; i < 5; ++i) {
        std::vector<uint8_t> word(n);
        uint64_t m = 0x9e3779b97f4a7c15ull * (uint64_t)(n * 5 + i + 1);
        for (int k = 0; k < n; ++k) {
          word[k] = uint8_t(m & 1);
          m >>= 1;
        }
        pts.push_back(TreePoint{word, pw_[n] / 2.0, false});
        if (n == depth_) pts.push_back(TreePoint{word, 0.0, true});
      }
    }
    double r_min = pw_[depth_];
    for (const auto& p : pts) {
      for (double r = c.r_mu; r >= r_min; r *= 0.7) {
        double ratio = ball_measure(p, r) / r;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
    }
    c.a_mu = lo * 0.97;
    c.b_mu = hi * 1.03;
    if (lam_ < 0.5) c.c_mu = std::max(3.0, 2.0 * c.b_mu / c.a_mu);
    return c;
  }

  double lam_;
  int depth_;
  double Linf_;
  std::vector<double> pw_;  // lambda^n
  std::vector<double> L_;   // cumulative branch lengths
};

/// All 2^depth boundary markers as a finite net of the boundary set.
/// Resolution: a true boundary point and its depth-truncated marker differ
/// by at most 2 lambda^{depth+1}/(1-lambda).
inline FiniteApprox make_boundary_net(const std::shared_ptr<const TreeSpace>& sp) {
  FiniteApprox out;
  out.parent = sp;
  out.target = "boundary";
  int d = sp->depth();
  double lam = sp->lambda();
  out.resolution = 2.0 * std::pow(lam, d + 1) / (1.0 - lam);
  out.points.reserve(size_t(1) << d);
  for (uint64_t m = 0; m < (uint64_t(1) << d); ++m) {
    std::vector<uint8_t> word(d);
    for (int k = 0; k < d; ++k) word[k] = uint8_t((m >> (d - 1 - k)) & 1);
    out.points.push_back(TreePoint{std::move(word), 0.0, true});
  }
  out.finalize();
  return out;
}

/// TargetSet for the boundary with its exact distance oracle.
inline TargetSet make_boundary_target(const std::shared_ptr<const TreeSpace>& sp) {
  TargetSet t;
  t.net = make_boundary_net(sp);
  t.exact_dist = [sp](const Point& y) { return sp->boundary_dist(y); };
  return t;
}

}  // namespace porolab
