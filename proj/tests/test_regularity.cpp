#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "porolab/porosity.hpp"
#include "porolab/regularity.hpp"
#include "porolab/spaces/interval.hpp"
#include "oracles.hpp"

using namespace porolab;

TEST_CASE("builder parameters for the two reference substitutions") {
  // s = 1, t = 1/2, a = 1, b = 2
  auto p = builder_params(1.0, 0.5, 1.0, 2.0);
  REQUIRE(p.d == std::ldexp(1.0, -14));
  REQUIRE(p.M == 128);
  REQUIRE(p.d1 == std::ldexp(1.0, -14));
  // s = 1, t = 1/2, a = b = 1
  auto q = builder_params(1.0, 0.5, 1.0, 1.0);
  REQUIRE(q.d == std::ldexp(1.0, -10));
  REQUIRE(q.M == 32);
  // the derived radii shrink geometrically
  REQUIRE(p.pack_radius(1.0, 2) < p.pack_radius(1.0, 1));
  REQUIRE(p.candidate_radius(1.0, 2) < p.candidate_radius(1.0, 1));
}

TEST_CASE("measure construction conserves mass exactly and separates "
          "leaves") {
  auto sp = std::make_shared<IntervalSpace>(0.0, 1.0);
  BuilderParams params;
  params.M = 4;
  params.d1 = std::pow(4.0, -2.0);  // M^{-1/t} for t = 1/2
  params.d = params.d1 / 4.0;
  params.t = 0.5;
  params.s = 1.0;
  auto tree = build_regular_measure(sp, Point{0.5}, 0.2, 0.5, params, 3);
  REQUIRE(tree.leaves().size() == 64);
  REQUIRE(tree.total_mass() == std::pow(0.2, 0.5));
  for (int k = 0; k <= 3; ++k)
    REQUIRE(tree.level_mass(k) == tree.total_mass());
  // leaves pairwise separated by the deepest packing radius
  auto coords = tree.sorted_leaf_coords();
  double min_sep = std::numeric_limits<double>::infinity();
  for (size_t i = 1; i < coords.size(); ++i)
    min_sep = std::min(min_sep, coords[i] - coords[i - 1]);
  REQUIRE(min_sep > params.pack_radius(0.2, 3));
  // and all leaves stay inside the doubled seed ball (drift sums to
  // R (1 + d1 + d1^2) here)
  for (const auto& p : tree.leaves()) {
    REQUIRE(as_real(p) >= 0.5 - 2.0 * 0.2);
    REQUIRE(as_real(p) <= 0.5 + 2.0 * 0.2);
  }
}

TEST_CASE("tree ball mass equals the naive atom sum") {
  auto sp = std::make_shared<IntervalSpace>(0.0, 1.0);
  BuilderParams params;
  params.M = 4;
  params.d1 = 1.0 / 16.0;
  params.d = params.d1 / 4.0;
  params.t = 0.5;
  params.s = 1.0;
  auto tree = build_regular_measure(sp, Point{0.5}, 0.2, 0.5, params, 2);
  std::vector<std::pair<Point, double>> atoms;
  for (const auto& p : tree.leaves()) atoms.push_back({p, tree.leaf_mass()});
  std::mt19937_64 eng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    Point x{0.3 + 0.4 * U(eng)};
    double r = 0.001 + 0.3 * U(eng);
    REQUIRE(tree.ball_mass(x, r, *sp) ==
            Catch::Approx(oracles::atom_ball_mass(*sp, atoms, x, r))
                .margin(1e-15));
  }
}

TEST_CASE("construction fails loudly when the space cannot host it") {
  auto sp = std::make_shared<IntervalSpace>(0.0, 1.0);
  BuilderParams params;
  params.M = 100;   // no ball of the candidate radius holds 100 separated
  params.d1 = 0.1;  // children at spacing 0.2 R
  params.d = params.d1;
  params.t = 0.5;
  params.s = 1.0;
  REQUIRE_THROWS_AS(build_regular_measure(sp, Point{0.5}, 0.2, 0.5, params, 1),
                    std::runtime_error);
}

TEST_CASE("exact rational json round-trips dyadics bit for bit") {
  for (double v :
       {0.5, 1.0 / 3.0, std::ldexp(1.0, -40), 6.103515625e-05, 0.7}) {
    auto j = detail::exact_rational(v);
    REQUIRE(detail::from_exact_rational(j) == v);
  }
  auto sp = std::make_shared<IntervalSpace>(0.0, 1.0);
  BuilderParams params;
  params.M = 4;
  params.d1 = 1.0 / 16.0;
  params.d = params.d1 / 4.0;
  params.t = 0.5;
  params.s = 1.0;
  auto tree = build_regular_measure(sp, Point{0.5}, 0.25, 0.5, params, 2);
  auto j = tree.to_json();
  REQUIRE(detail::from_exact_rational(j.at("R")) == 0.25);
  REQUIRE(j.at("levels").size() == 3);
}

TEST_CASE("regularity verification skips off-support samples and checks "
          "predictions") {
  // synthetic exactly 1-regular measure: mass(B(x,r)) = 2r around support
  auto ball = [](const Point& x, double r) {
    return (std::abs(as_real(x)) <= 1.0) ? 2.0 * r : 0.0;
  };
  std::vector<Point> sample = {Point{0.0}, Point{0.5}, Point{5.0}};
  std::vector<double> scales = {0.1, 0.05, 0.025};
  auto rep = verify_regularity(ball, sample, 1.0, scales);
  REQUIRE(rep.skipped == 1);
  REQUIRE(rep.checked == 6);
  REQUIRE(rep.a_emp == Catch::Approx(2.0));
  REQUIRE(rep.b_emp == Catch::Approx(2.0));
  REQUIRE(rep.pass);
  // a prediction window that excludes the measured ratio must fail
  auto bad = verify_regularity(ball, sample, 1.0, scales,
                               std::make_pair(3.0, 4.0), 0.1);
  REQUIRE_FALSE(bad.pass);
}

TEST_CASE("forward porosity constant matches the reference substitution") {
  StructureConstants mu;  // s = 1, a = 1, b = 2
  mu.b_mu = 2.0;
  auto f = porosity_from_regularity(mu, 0.5, 0.25, 4.0, 0.25);
  // K = log(b_mu b_nu 2^{3t} / (a_mu a_nu)) / ((s-t) log 2)
  double K = std::log(2.0 * 4.0 * std::pow(2.0, 1.5) / 0.25) / (0.5 * M_LN2);
  REQUIRE(f.K == Catch::Approx(K));
  REQUIRE(K == Catch::Approx(13.0).margin(0.2));
  REQUIRE(f.rho_bound == std::ldexp(1.0, -int(std::floor(K)) - 4));
  REQUIRE(f.r_window == Catch::Approx(0.125));
  // degenerate exponent gap is rejected
  REQUIRE_THROWS_AS(porosity_from_regularity(mu, 1.0, 1.0, 1.0, 0.25),
                    std::invalid_argument);
}

TEST_CASE("envelope construction guards its exponent window") {
  auto sp = std::make_shared<IntervalSpace>(0.0, 1.0);
  // three isolated atoms: every packing ball is almost entirely hole
  TargetSet A;
  A.net.parent = sp;
  A.net.points = {Point{0.0}, Point{0.5}, Point{1.0}};
  A.net.resolution = 0.0;
  A.net.finalize();
  A.exact_dist = [](const Point& y) {
    double v = as_real(y);
    return std::min({std::abs(v), std::abs(v - 0.5), std::abs(v - 1.0)});
  };
  BuilderParams tp;
  tp.M = 2;
  tp.d1 = 0.125;
  tp.t = 0.8;
  tp.s = 1.0;
  tp.compact = true;
  // t = 0.8 sits outside the symbolically-derivable (s - delta, s) window,
  // so the construction demands the explicit override
  REQUIRE_THROWS_AS(
      regular_envelope(sp, A, 0.1, 0.1, 0.8, 1, tp, 2, false),
      std::invalid_argument);
  auto env = regular_envelope(sp, A, 0.1, 0.1, 0.8, 1, tp, 2, true);
  REQUIRE(env.levels.size() == 1);
  REQUIRE_FALSE(env.levels[0].holes.empty());
  REQUIRE(env.total_mass() > 0.0);
  // every hole must be genuinely empty of A
  for (const auto& h : env.levels[0].holes)
    REQUIRE(A.dist_lower(h.z) >= h.hole_radius);
  // and the planted mass must answer ball queries
  const auto& h0 = env.levels[0].holes.front();
  REQUIRE(env.ball_mass(h0.z, env.window_hi()) > 0.0);
}

TEST_CASE("forward and backward directions agree end to end") {
  // build a regular measure, read its constants back empirically, derive a
  // porosity level from them, and certify the support at that level
  auto sp = std::make_shared<IntervalSpace>(0.0, 1.0);
  BuilderParams params;
  params.M = 8;
  params.d1 = std::pow(8.0, -2.0);
  params.d = params.d1;
  params.t = 0.5;
  params.s = 1.0;
  auto tree = build_regular_measure(sp, Point{0.5}, 0.25, 0.5, params, 2);
  std::vector<double> scales;
  for (int i = 0; i < 6; ++i)
    scales.push_back(tree.window_hi() *
                     std::pow(tree.window_lo() / tree.window_hi(),
                              (i + 0.5) / 6.0));
  auto rep = verify_regularity(
      [&](const Point& x, double r) { return tree.ball_mass(x, r, *sp); },
      {tree.leaves()[0], tree.leaves()[20], tree.leaves()[63]}, 0.5, scales);
  REQUIRE(rep.pass);
  auto f = porosity_from_regularity(sp->constants(), 0.5, rep.a_emp,
                                    rep.b_emp, tree.window_hi());
  TargetSet A;
  A.net.parent = sp;
  A.net.points = tree.leaves();
  std::sort(A.net.points.begin(), A.net.points.end(),
            [](const Point& a, const Point& b) {
              return as_real(a) < as_real(b);
            });
  A.net.resolution = 0.0;
  A.net.finalize();
  std::vector<double> pscales;
  for (int j = 1; j <= 4; ++j) pscales.push_back(f.r_window / (1 << j));
  auto cert = uniform_porosity_certificate(
      sp, A, f.rho_bound, f.r_window,
      {tree.leaves()[5], tree.leaves()[40]}, pscales, 0.01);
  REQUIRE(cert.pass);
}
