#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "porolab/interval_set.hpp"
#include "porolab/net.hpp"
#include "porolab/report.hpp"
#include "porolab/spaces/interval.hpp"
#include "oracles.hpp"

using namespace porolab;

TEST_CASE("interval union merges overlapping segments") {
  IntervalUnion u;
  u.add(0.0, 0.2);
  u.add(0.5, 0.7);
  u.add(0.1, 0.55);
  REQUIRE(u.size() == 1);
  REQUIRE(u.segments()[0].lo == 0.0);
  REQUIRE(u.segments()[0].hi == 0.7);
  u.add(0.9, 0.8);  // inverted: ignored
  REQUIRE(u.size() == 1);
}

TEST_CASE("interval union length matches a grid count on random input") {
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  IntervalUnion u;
  std::vector<std::pair<double, double>> raw;
  for (int i = 0; i < 40; ++i) {
    double a = U(eng), w = 0.05 * U(eng);
    u.add(a, a + w);
    raw.push_back({a, a + w});
  }
  double ref = oracles::grid_union_length(raw, -0.1, 1.2, 400000);
  REQUIRE(u.length() == Catch::Approx(ref).margin(2e-4));
}

TEST_CASE("interval union expand, clip, dist") {
  IntervalUnion u;
  u.add(0.2, 0.3);
  u.add(0.6, 0.8);
  auto e = u.expanded(0.05);
  REQUIRE(e.length() == Catch::Approx(0.3 + 0.2));
  auto c = u.clipped(0.25, 0.7);
  REQUIRE(c.length() == Catch::Approx(0.05 + 0.1));
  REQUIRE(u.dist(0.45) == Catch::Approx(0.15));
  REQUIRE(u.dist(0.25) == 0.0);
  REQUIRE(u.contains(0.8));
  REQUIRE_FALSE(u.contains(0.81));
}

TEST_CASE("expanding then merging keeps segments disjoint") {
  IntervalUnion u;
  u.add(0.0, 0.1);
  u.add(0.15, 0.25);
  auto e = u.expanded(0.04);  // gap 0.05 < 2*0.04: must merge
  REQUIRE(e.size() == 1);
  REQUIRE(e.length() == Catch::Approx(0.33));
}

namespace {

FiniteApprox random_net(uint64_t seed, int n, bool sorted) {
  auto sp = std::make_shared<IntervalSpace>(0.0, 1.0);
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  FiniteApprox f;
  f.parent = sp;
  f.resolution = 1e-3;
  for (int i = 0; i < n; ++i) f.points.push_back(U(eng));
  if (sorted)
    std::sort(f.points.begin(), f.points.end(),
              [](const Point& a, const Point& b) {
                return as_real(a) < as_real(b);
              });
  f.finalize();
  return f;
}

}  // namespace

TEST_CASE("greedy packing output is separated and maximal") {
  auto f = random_net(3, 200, false);
  double r = 0.03;
  auto kept = greedy_packing(f, r);
  const Space& sp = *f.parent;
  for (size_t i = 0; i < kept.size(); ++i)
    for (size_t j = i + 1; j < kept.size(); ++j)
      REQUIRE(sp.distance(kept[i], kept[j]) > 2 * r);
  for (const auto& p : f.points) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& k : kept) d = std::min(d, sp.distance(p, k));
    REQUIRE(d <= 2 * r);
  }
}

TEST_CASE("sorted fast path agrees with the generic packing") {
  for (uint64_t seed : {11u, 12u, 13u}) {
    auto f = random_net(seed, 150, true);
    auto fast = greedy_packing(f, 0.02);
    FiniteApprox generic = f;
    generic.sorted_coords.clear();  // force the pairwise path
    auto slow = greedy_packing(generic, 0.02);
    REQUIRE(fast.size() == slow.size());
    for (size_t i = 0; i < fast.size(); ++i)
      REQUIRE(as_real(fast[i]) == as_real(slow[i]));
  }
}

TEST_CASE("covering bracket contains the exact covering number") {
  auto sp = std::make_shared<IntervalSpace>(0.0, 1.0);
  std::mt19937_64 eng(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    FiniteApprox f;
    f.parent = sp;
    f.resolution = 1e-6;
    for (int i = 0; i < 14; ++i) f.points.push_back(U(eng));
    std::sort(f.points.begin(), f.points.end(),
              [](const Point& a, const Point& b) {
                return as_real(a) < as_real(b);
              });
    f.finalize();
    double r = 0.02 + 0.05 * U(eng);
    auto b = covering_bracket(f, r);
    int exact = oracles::brute_min_cover(*sp, f.points, r);
    REQUIRE(b.lower <= exact);
    REQUIRE(b.upper >= exact);
  }
}

TEST_CASE("covering bracket flags scales at or below the resolution") {
  auto f = random_net(9, 50, true);
  auto b = covering_bracket(f, 5e-4);
  REQUIRE(b.below_resolution);
}

TEST_CASE("build_net covers the requested ball") {
  auto sp = std::make_shared<IntervalSpace>(0.0, 1.0);
  auto net = build_net(sp, Point{0.5}, 0.3, 0.01);
  REQUIRE_FALSE(net.empty());
  REQUIRE(net.resolution <= 0.01);
  // every carrier point of the ball is close to the net
  for (double x = 0.2; x <= 0.8; x += 1e-3) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& p : net.points) d = std::min(d, std::abs(as_real(p) - x));
    REQUIRE(d <= net.resolution + 1e-12);
  }
}

TEST_CASE("target set distance uses the oracle when present") {
  auto sp = std::make_shared<IntervalSpace>(0.0, 1.0);
  TargetSet A;
  A.net.parent = sp;
  A.net.resolution = 0.1;
  A.net.points = {0.5};
  A.net.finalize();
  REQUIRE(A.dist_slack() == 0.1);
  REQUIRE(A.dist_lower(Point{0.7}) == Catch::Approx(0.1));  // 0.2 - slack
  A.exact_dist = [](const Point& y) { return std::abs(as_real(y) - 0.5); };
  REQUIRE(A.dist_slack() == 0.0);
  REQUIRE(A.dist_lower(Point{0.7}) == Catch::Approx(0.2));
}

TEST_CASE("target net distance fast path matches brute force") {
  auto f = random_net(21, 80, true);
  TargetSet A;
  A.net = f;
  std::mt19937_64 eng(22);
  std::uniform_real_distribution<double> U(-0.2, 1.2);
  for (int i = 0; i < 200; ++i) {
    double y = U(eng);
    double brute = std::numeric_limits<double>::infinity();
    for (const auto& p : f.points)
      brute = std::min(brute, std::abs(as_real(p) - y));
    REQUIRE(A.dist_to_net(Point{y}) == Catch::Approx(brute).margin(1e-15));
  }
}

TEST_CASE("structure constants validation") {
  StructureConstants c;
  REQUIRE_NOTHROW(c.validate());
  c.a_mu = 2.0;  // a > b
  REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.c_mu = 0.5;
  REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("double formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.103515625e-05, -2.5}) {
    REQUIRE(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("csv table enforces the declared width and renders stably") {
  CsvTable t;
  t.columns = {"a", "b"};
  t.add_row({1.5, (long long)2});
  REQUIRE_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
  REQUIRE(t.render() == "a,b\n1.5,2\n");
  REQUIRE(t.render() == t.render());
}
