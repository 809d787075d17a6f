#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace tesspath {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 p, Point2 q) { return {p.x + q.x, p.y + q.y}; }
  friend constexpr Point2 operator-(Point2 p, Point2 q) { return {p.x - q.x, p.y - q.y}; }
  friend constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend constexpr Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

constexpr double dot(Point2 p, Point2 q) { return p.x * q.x + p.y * q.y; }
constexpr double cross(Point2 p, Point2 q) { return p.x * q.y - p.y * q.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 p, Point2 q) { return norm(p - q); }

// Lexicographic (x, then y) order used for every deterministic tie-break.
constexpr bool lex_less(Point2 p, Point2 q) { return p.x < q.x || (p.x == q.x && p.y < q.y); }

// Twice the signed area of (a, b, c); positive when counterclockwise.
constexpr double orient(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

bool is_finite(Point2 p);

// A non-degenerate straight segment.  Construction rejects a == b and
// non-finite coordinates with std::invalid_argument.
class Segment {
public:
  Segment(Point2 a, Point2 b);

  Point2 a() const { return a_; }
  Point2 b() const { return b_; }
  Point2 direction() const { return b_ - a_; }
  double length() const { return distance(a_, b_); }
  Point2 at(double t) const { return a_ + t * (b_ - a_); }

  friend bool operator==(const Segment&, const Segment&) = default;

private:
  Point2 a_;
  Point2 b_;
};

// Axis-aligned observation window.
struct Window {
  double xmin = 0.0;
  double xmax = 1.0;
  double ymin = 0.0;
  double ymax = 1.0;

  Window() = default;
  Window(double xmin, double xmax, double ymin, double ymax);

  static Window square(double side);  // centred at the origin
  static Window around(Point2 centre, double half_width, double half_height);

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  double diameter() const { return std::hypot(width(), height()); }
  Point2 centre() const { return {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}; }
  bool contains(Point2 p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }
  // Distance from an interior point to the nearest side; negative outside.
  double distance_to_boundary(Point2 p) const;
  Window expanded(double margin) const;
  Window scaled(double factor) const;  // coordinates multiplied by factor
  // Snap tolerance for degeneracy tests: 1e-9 times the diameter.
  double snap_eps() const { return 1e-9 * diameter(); }

  friend bool operator==(const Window&, const Window&) = default;
};

// Convex polygon with counterclockwise vertices, no repeated or collinear
// vertices.  The constructor normalises orientation and drops collinear
// vertices; it throws std::invalid_argument if fewer than three remain or
// the input is not convex.
class ConvexPolygon {
public:
  explicit ConvexPolygon(std::vector<Point2> vertices);
  // Same normalisation, but degenerate results yield std::nullopt.
  static std::optional<ConvexPolygon> make(std::vector<Point2> vertices);
  static ConvexPolygon from_window(const Window& w);

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  double area() const;
  double perimeter() const;
  Window bounding_box() const;
  bool contains(Point2 p, double eps = 0.0) const;

private:
  struct Unchecked {};
  ConvexPolygon(Unchecked, std::vector<Point2> v) : vertices_(std::move(v)) {}
  std::vector<Point2> vertices_;
};

// Proper crossing point of the two segments, if any.  Parallel-disjoint and
// endpoint-touching pairs yield nothing; a shared sub-segment longer than
// eps throws CollinearOverlap.  Symmetric in its arguments (bitwise).
std::optional<Point2> segment_intersection(const Segment& s1, const Segment& s2, double eps);

// s intersected with p, when that intersection has positive length.
std::optional<Segment> clip_segment_to_polygon(const Segment& s, const ConvexPolygon& p);
std::optional<Segment> clip_segment_to_window(const Segment& s, const Window& w);

// Part of the convex polygon where dot(normal, x) <= offset.
std::vector<Point2> clip_polygon_halfplane(std::span<const Point2> polygon, Point2 normal,
                                           double offset);

double polygon_area(std::span<const Point2> polygon);

double total_length(std::span<const Segment> segments);

// Closest point of segment s to q.
Point2 closest_point_on_segment(const Segment& s, Point2 q);

}  // namespace tesspath
