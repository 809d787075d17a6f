#include "tesspath/errors.hpp"
#include "tesspath/geometry.hpp"
#include "tesspath/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace tesspath;

namespace {

bool same_segment(const Segment& s, Point2 a, Point2 b, double tol = 1e-12) {
  return distance(s.a(), a) <= tol && distance(s.b(), b) <= tol;
}

}  // namespace

TEST_CASE("segment construction") {
  CHECK_THROWS_AS(Segment({1, 1}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Segment({0, 0}, {NAN, 1}), std::invalid_argument);
  CHECK(Segment({0, 0}, {3, 4}).length() == 5.0);
}

TEST_CASE("window validation and helpers") {
  CHECK_THROWS_AS(Window(1, 0, 0, 1), std::invalid_argument);
  const Window w = Window::square(10);
  CHECK(w.area() == 100.0);
  CHECK(w.distance_to_boundary({4, 0}) == doctest::Approx(1.0));
  CHECK(w.snap_eps() == doctest::Approx(1e-9 * std::sqrt(200.0)));
  CHECK(w.scaled(0.5) == Window::square(5));
}

TEST_CASE("segment intersection examples") {
  auto p = segment_intersection(Segment({0, 0}, {2, 0}), Segment({1, -1}, {1, 1}), 1e-9);
  REQUIRE(p);
  CHECK(p->x == doctest::Approx(1));
  CHECK(p->y == doctest::Approx(0));
  CHECK_FALSE(segment_intersection(Segment({0, 0}, {1, 0}), Segment({0, 1}, {1, 1}), 1e-9));
  auto q = segment_intersection(Segment({0, 0}, {1, 1}), Segment({0, 1}, {1, 0}), 1e-9);
  REQUIRE(q);
  CHECK(q->x == doctest::Approx(0.5));
  CHECK(q->y == doctest::Approx(0.5));
}

TEST_CASE("segment intersection degenerate cases") {
  // endpoint touching
  CHECK_FALSE(segment_intersection(Segment({0, 0}, {1, 0}), Segment({1, 0}, {1, 1}), 1e-9));
  CHECK_FALSE(segment_intersection(Segment({0, 0}, {2, 0}), Segment({1, 0}, {1, 1}), 1e-9));
  // disjoint but crossing lines
  CHECK_FALSE(segment_intersection(Segment({0, 0}, {1, 0}), Segment({2, -1}, {2, 1}), 1e-9));
  // collinear disjoint, and collinear touching at a point
  CHECK_FALSE(segment_intersection(Segment({0, 0}, {1, 0}), Segment({2, 0}, {3, 0}), 1e-9));
  CHECK_FALSE(segment_intersection(Segment({0, 0}, {1, 0}), Segment({1, 0}, {3, 0}), 1e-9));
  CHECK_THROWS_AS(segment_intersection(Segment({0, 0}, {2, 0}), Segment({1, 0}, {3, 0}), 1e-9), CollinearOverlap);
}

TEST_CASE("segment intersection is symmetric") {
  Stream rng(1);
  for (int i = 0; i < 2000; ++i) {
    const Segment s({rng.uniform(), rng.uniform()}, {rng.uniform(), rng.uniform()});
    const Segment t({rng.uniform(), rng.uniform()}, {rng.uniform(), rng.uniform()});
    const auto p = segment_intersection(s, t, 1e-12);
    const auto q = segment_intersection(t, s, 1e-12);
    REQUIRE(p.has_value() == q.has_value());
    if (p) {
      CHECK(p->x == q->x);
      CHECK(p->y == q->y);
    }
    const Segment sr(s.b(), s.a());
    const auto r = segment_intersection(sr, t, 1e-12);
    REQUIRE(p.has_value() == r.has_value());
    if (p) CHECK(distance(*p, *r) < 1e-12);
  }
}

TEST_CASE("clip segment to polygon examples") {
  const auto unit = ConvexPolygon::from_window(Window(0, 1, 0, 1));
  auto a = clip_segment_to_polygon(Segment({-1, 0.5}, {2, 0.5}), unit);
  REQUIRE(a);
  CHECK(same_segment(*a, {0, 0.5}, {1, 0.5}));
  CHECK_FALSE(clip_segment_to_polygon(Segment({2, 2}, {3, 3}), unit));
  auto c = clip_segment_to_polygon(Segment({0.25, 0.25}, {0.75, 0.75}), unit);
  REQUIRE(c);
  CHECK(*c == Segment({0.25, 0.25}, {0.75, 0.75}));
  // touching a corner only
  CHECK_FALSE(clip_segment_to_polygon(Segment({1, 1}, {2, 0}), unit));
}

TEST_CASE("clip is idempotent") {
  Stream rng(2);
  const ConvexPolygon hex({{1, 0}, {0.5, 0.8}, {-0.5, 0.8}, {-1, 0}, {-0.5, -0.8}, {0.5, -0.8}});
  for (int i = 0; i < 2000; ++i) {
    const Segment s({rng.uniform(-2, 2), rng.uniform(-2, 2)}, {rng.uniform(-2, 2), rng.uniform(-2, 2)});
    const auto once = clip_segment_to_polygon(s, hex);
    if (!once) continue;
    const auto twice = clip_segment_to_polygon(*once, hex);
    REQUIRE(twice);
    CHECK(*twice == *once);
    CHECK(hex.contains(once->a(), 1e-12));
    CHECK(hex.contains(once->b(), 1e-12));
  }
}

TEST_CASE("convex polygon normalisation") {
  const ConvexPolygon p({{0, 0}, {0, 1}, {1, 1}, {1, 0}, {0.5, 0}});
  CHECK(p.size() == 4);
  CHECK(p.area() == doctest::Approx(1.0));
  CHECK(polygon_area(p.vertices()) > 0);
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 1}, {2, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {2, 0}, {1, 0.2}, {2, 2}, {0, 2}}), std::invalid_argument);
  CHECK_FALSE(ConvexPolygon::make({{0, 0}, {1, 0}}));
  // self-intersecting lists
  CHECK_FALSE(ConvexPolygon::make({{0, 0}, {0, 1}, {1, 1}, {0.5, 0}, {1, 0}}));
  std::vector<Point2> star;
  for (int i = 0; i < 5; ++i) star.push_back({std::cos(4 * std::numbers::pi * i / 5), std::sin(4 * std::numbers::pi * i / 5)});
  CHECK_FALSE(ConvexPolygon::make(star));
}

TEST_CASE("half-plane clipping") {
  const auto sq = ConvexPolygon::from_window(Window(0, 2, 0, 2));
  const auto left = clip_polygon_halfplane(sq.vertices(), {1, 0}, 1.0);
  CHECK(polygon_area(left) == doctest::Approx(2.0));
  CHECK(clip_polygon_halfplane(sq.vertices(), {1, 0}, -1.0).empty());
}

TEST_CASE("total length") {
  CHECK(total_length({}) == 0.0);
  const std::vector<Segment> one{Segment({0, 0}, {3, 4})};
  CHECK(total_length(one) == 5.0);
  Stream rng(3);
  std::vector<Segment> many;
  for (int i = 0; i < 100; ++i) many.emplace_back(Point2{rng.uniform(), rng.uniform()}, Point2{rng.uniform() + 2, rng.uniform()});
  // Kahan-compensated reference sum.
  double sum = 0.0, comp = 0.0;
  for (const auto& s : many) {
    const double y = std::hypot(s.b().x - s.a().x, s.b().y - s.a().y) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  CHECK(std::abs(total_length(many) - sum) <= 1e-12 * sum);
}

TEST_CASE("closest point on segment") {
  const Segment s({0, 0}, {2, 0});
  CHECK(closest_point_on_segment(s, {1, 5}) == Point2{1, 0});
  CHECK(closest_point_on_segment(s, {-3, 1}) == Point2{0, 0});
  CHECK(closest_point_on_segment(s, {7, -1}) == Point2{2, 0});
}
