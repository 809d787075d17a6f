#include "tesspath/errors.hpp"
#include "tesspath/point_process.hpp"
#include "tesspath/stats.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace tesspath;

namespace {

EdgeSet fixed_edges() {
  EdgeSet e;
  e.window = Window(0, 10, 0, 10);
  e.segments = {Segment({0, 1}, {10, 1}), Segment({2, 0}, {2, 10}), Segment({0, 0}, {10, 10}),
                Segment({6, 3}, {9, 4})};
  return e;
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments moments(const std::vector<double>& v) {
  const EmpiricalSample s(v);
  return {s.mean(), s.variance()};
}

// Brute-force k-th nearest with the documented tie order.
Neighbor scan_kth(Point2 q, const std::vector<Point2>& pts, int k) {
  std::vector<Neighbor> all;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) all.push_back({i, pts[i], distance(q, pts[i])});
  std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return lex_less(a.point, b.point);
  });
  return all[k - 1];
}

}  // namespace

TEST_CASE("cox points: counts, anchors, uniform offsets") {
  const EdgeSet e = fixed_edges();
  const double lambda_l = 0.8;
  const double length = total_length(e.segments);
  Stream rng(41);
  std::vector<double> counts, offsets;
  for (int i = 0; i < 600; ++i) {
    const auto pat = sample_cox_on_edges(e, lambda_l, rng);
    REQUIRE(pat.anchored());
    CHECK(pat.linear_intensity == lambda_l);
    counts.push_back(static_cast<double>(pat.size()));
    for (std::size_t m = 0; m < pat.size(); ++m) {
      const auto& a = pat.anchors[m];
      const Segment& s = e.segments[a.segment_index];
      CHECK(distance(pat.points[m], s.at(a.offset / s.length())) < 1e-12);
      offsets.push_back(a.offset / s.length());
    }
  }
  const auto mo = moments(counts);
  const double expected = lambda_l * length;
  CHECK(std::abs(mo.mean - expected) < 4 * std::sqrt(expected / counts.size()));
  CHECK(mo.variance / mo.mean == doctest::Approx(1.0).epsilon(0.2));
  const EmpiricalSample off(offsets);
  CHECK(ks_distance(off, [](double x) { return std::clamp(x, 0.0, 1.0); }) < 1.95 / std::sqrt(off.size()));
}

TEST_CASE("cox points on disjoint pieces are uncorrelated given the edges") {
  const EdgeSet e = fixed_edges();
  Stream rng(42);
  std::vector<double> left, right;
  const int draws = 2000;
  for (int i = 0; i < draws; ++i) {
    const auto pat = sample_cox_on_edges(e, 0.5, rng);
    double l = 0, r = 0;
    for (auto p : pat.points) (p.x < 5 ? l : r) += 1;
    left.push_back(l);
    right.push_back(r);
  }
  const auto ml = moments(left), mr = moments(right);
  double cov = 0.0;
  for (int i = 0; i < draws; ++i) cov += (left[i] - ml.mean) * (right[i] - mr.mean);
  cov /= draws - 1;
  const double corr = cov / std::sqrt(ml.variance * mr.variance);
  CHECK(std::abs(corr) < 4 / std::sqrt(static_cast<double>(draws)));
}

TEST_CASE("cox counts are overdispersed over random tessellations") {
  Stream rng(43);
  std::vector<double> counts;
  for (int i = 0; i < 400; ++i) {
    auto t = rng.split(2 * i), c = rng.split(2 * i + 1);
    const auto e = sample_edge_set(TessellationModel::pvt(1.0), Window::square(6), t);
    counts.push_back(static_cast<double>(sample_cox_on_edges(e, 2.0, c).size()));
  }
  const auto mo = moments(counts);
  CHECK(mo.variance / mo.mean > 1.3);
}

TEST_CASE("thinning keeps a binomial share") {
  PointPattern pat;
  pat.window = Window(0, 1, 0, 1);
  for (int i = 0; i < 1000; ++i) pat.points.push_back({i / 1000.0, 0.5});
  const double c = 0.3;
  Stream rng(44);
  std::vector<double> kept;
  for (int i = 0; i < 500; ++i) kept.push_back(static_cast<double>(thin_and_rescale(pat, c, rng).size()));
  const auto mo = moments(kept);
  const double n = 1000;
  CHECK(std::abs(mo.mean - n * c) < 4 * std::sqrt(n * c * (1 - c) / kept.size()));
  CHECK(mo.variance == doctest::Approx(n * c * (1 - c)).epsilon(0.2));
}

TEST_CASE("thinning and rescaling preserve planar intensity") {
  Stream rng(45);
  const double lambda = 3.0, c = 0.25;
  const Window w = Window::square(10);
  std::vector<double> before, after;
  for (int i = 0; i < 300; ++i) {
    const auto pat = sample_poisson_window(lambda, w, rng);
    const auto thin = thin_and_rescale(pat, c, rng);
    CHECK(thin.window == w.scaled(0.5));
    for (auto p : thin.points) CHECK(thin.window.contains(p));
    before.push_back(pat.size() / w.area());
    after.push_back(thin.size() / thin.window.area());
  }
  const auto mb = moments(before), ma = moments(after);
  CHECK(std::abs(mb.mean - lambda) < 4 * std::sqrt(mb.variance / before.size()));
  CHECK(std::abs(ma.mean - lambda) < 4 * std::sqrt(ma.variance / after.size()));

  PointPattern cox;
  cox.linear_intensity = 2.0;
  cox.points = {{1, 1}};
  CHECK(*thin_and_rescale(cox, c, rng).linear_intensity == doctest::Approx(1.0));
  CHECK_THROWS_AS(thin_and_rescale(cox, 1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(thin_and_rescale(cox, 0.0, rng), std::invalid_argument);
}

TEST_CASE("poisson window points") {
  Stream rng(46);
  const Window w(-1, 3, 2, 4);
  const auto pat = sample_poisson_window(50, w, rng);
  CHECK_FALSE(pat.anchored());
  for (auto p : pat.points) CHECK(w.contains(p));
  CHECK_THROWS_AS(sample_poisson_window(0, w, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_cox_on_edges(fixed_edges(), -1, rng), std::invalid_argument);
}

TEST_CASE("k-th nearest matches a linear scan") {
  Stream rng(47);
  SUBCASE("random points") {
    PointPattern pat;
    for (int i = 0; i < 400; ++i) pat.points.push_back({rng.uniform(0, 20), rng.uniform(0, 5)});
    for (int t = 0; t < 300; ++t) {
      const Point2 q{rng.uniform(-5, 25), rng.uniform(-5, 10)};
      const int k = 1 + static_cast<int>(rng() % 6);
      const auto got = kth_nearest(q, pat, k);
      const auto want = scan_kth(q, pat.points, k);
      CHECK(got.index == want.index);
      CHECK(got.distance == want.distance);
    }
  }
  SUBCASE("lattice with ties") {
    PointPattern pat;
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) pat.points.push_back({static_cast<double>(i), static_cast<double>(j)});
    for (int t = 0; t < 200; ++t) {
      const Point2 q{0.5 * static_cast<double>(rng() % 17), 0.5 * static_cast<double>(rng() % 17)};
      for (int k = 1; k <= 8; ++k) {
        const auto got = kth_nearest(q, pat, k);
        const auto want = scan_kth(q, pat.points, k);
        CHECK(got.point == want.point);
        CHECK(got.distance == want.distance);
      }
    }
  }
}

TEST_CASE("not enough points") {
  PointPattern pat;
  pat.points = {{0, 0}, {1, 1}};
  CHECK_NOTHROW(kth_nearest({0, 0}, pat, 2));
  CHECK_THROWS_AS(kth_nearest({0, 0}, pat, 3), NotEnoughPoints);
  CHECK_THROWS_AS(kth_nearest({0, 0}, pat, 0), NotEnoughPoints);
  CHECK_THROWS_AS(kth_nearest({0, 0}, PointPattern{}, 1), NotEnoughPoints);
}
