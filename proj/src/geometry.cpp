#include "tesspath/geometry.hpp"

#include "tesspath/errors.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace tesspath {

bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

Segment::Segment(Point2 a, Point2 b) : a_(a), b_(b) {
  if (!is_finite(a) || !is_finite(b)) throw std::invalid_argument("Segment: non-finite coordinate");
  if (a == b) throw std::invalid_argument("Segment: zero length");
}

Window::Window(double xmin_, double xmax_, double ymin_, double ymax_)
    : xmin(xmin_), xmax(xmax_), ymin(ymin_), ymax(ymax_) {
  if (!(xmin < xmax) || !(ymin < ymax)) throw std::invalid_argument("Window: empty extent");
}

Window Window::square(double side) { return Window(-0.5 * side, 0.5 * side, -0.5 * side, 0.5 * side); }

Window Window::around(Point2 c, double hw, double hh) { return Window(c.x - hw, c.x + hw, c.y - hh, c.y + hh); }

double Window::distance_to_boundary(Point2 p) const {
  return std::min({p.x - xmin, xmax - p.x, p.y - ymin, ymax - p.y});
}

Window Window::expanded(double m) const { return Window(xmin - m, xmax + m, ymin - m, ymax + m); }

Window Window::scaled(double f) const { return Window(f * xmin, f * xmax, f * ymin, f * ymax); }

namespace {

double bbox_diameter(std::span<const Point2> v) {
  if (v.empty()) return 0.0;
  double x0 = v[0].x, x1 = v[0].x, y0 = v[0].y, y1 = v[0].y;
  for (auto p : v) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  return std::hypot(x1 - x0, y1 - y0);
}

// Drops repeated and collinear vertices, orients counterclockwise.  Returns
// an empty vector when fewer than three vertices survive or the polygon is
// not convex.
std::vector<Point2> normalise_convex(std::vector<Point2> v) {
  const double eps = 1e-12 * bbox_diameter(v);
  std::vector<Point2> out;
  out.reserve(v.size());
  for (auto p : v) {
    if (!is_finite(p)) return {};
    if (out.empty() || distance(out.back(), p) > eps) out.push_back(p);
  }
  while (out.size() > 1 && distance(out.front(), out.back()) <= eps) out.pop_back();
  if (out.size() < 3) return {};
  if (polygon_area(out) < 0) std::reverse(out.begin(), out.end());

  // Collinear elimination; repeat until stable since removals can expose more.
  const double area_eps = 1e-12 * bbox_diameter(out) * bbox_diameter(out);
  bool changed = true;
  while (changed && out.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < out.size() && out.size() >= 3; ++i) {
      const auto& prev = out[(i + out.size() - 1) % out.size()];
      const auto& next = out[(i + 1) % out.size()];
      if (std::abs(orient(prev, out[i], next)) <= area_eps && dot(out[i] - prev, next - out[i]) > 0) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (out.size() < 3) return {};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& prev = out[(i + out.size() - 1) % out.size()];
    const auto& next = out[(i + 1) % out.size()];
    if (orient(prev, out[i], next) <= 0) return {};
  }
  // Left turns everywhere still admits star-shaped windings; the exterior
  // angles of a simple convex polygon sum to exactly one turn.
  double turning = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Point2 d0 = out[i] - out[(i + out.size() - 1) % out.size()];
    const Point2 d1 = out[(i + 1) % out.size()] - out[i];
    turning += std::atan2(cross(d0, d1), dot(d0, d1));
  }
  if (turning > 3 * std::numbers::pi) return {};
  return out;
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Point2> vertices) : vertices_(normalise_convex(std::move(vertices))) {
  if (vertices_.empty()) throw std::invalid_argument("ConvexPolygon: degenerate or non-convex vertex list");
}

std::optional<ConvexPolygon> ConvexPolygon::make(std::vector<Point2> vertices) {
  auto v = normalise_convex(std::move(vertices));
  if (v.empty()) return std::nullopt;
  return ConvexPolygon(Unchecked{}, std::move(v));
}

ConvexPolygon ConvexPolygon::from_window(const Window& w) {
  return ConvexPolygon(Unchecked{}, {{w.xmin, w.ymin}, {w.xmax, w.ymin}, {w.xmax, w.ymax}, {w.xmin, w.ymax}});
}

double ConvexPolygon::area() const { return polygon_area(vertices_); }

double ConvexPolygon::perimeter() const {
  double s = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) s += distance(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
  return s;
}

Window ConvexPolygon::bounding_box() const {
  Window w;
  w.xmin = w.xmax = vertices_[0].x;
  w.ymin = w.ymax = vertices_[0].y;
  for (auto p : vertices_) {
    w.xmin = std::min(w.xmin, p.x);
    w.xmax = std::max(w.xmax, p.x);
    w.ymin = std::min(w.ymin, p.y);
    w.ymax = std::max(w.ymax, p.y);
  }
  return w;
}

bool ConvexPolygon::contains(Point2 p, double eps) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const auto& u = vertices_[i];
    const auto& v = vertices_[(i + 1) % vertices_.size()];
    if (cross(v - u, p - u) < -eps * distance(u, v)) return false;
  }
  return true;
}

std::optional<Point2> segment_intersection(const Segment& first, const Segment& second, double eps) {
  if (eps < 0) throw std::invalid_argument("segment_intersection: eps < 0");
  // Canonical argument order makes the result bitwise symmetric.
  auto key_less = [](const Segment& s, const Segment& t) {
    if (s.a() != t.a()) return lex_less(s.a(), t.a());
    return lex_less(s.b(), t.b());
  };
  const Segment& s1 = key_less(second, first) ? second : first;
  const Segment& s2 = key_less(second, first) ? first : second;

  const Point2 r = s1.direction();
  const Point2 s = s2.direction();
  const Point2 q = s2.a() - s1.a();
  const double lr = norm(r);
  const double ls = norm(s);
  const double denom = cross(r, s);

  if (std::abs(denom) <= 1e-12 * lr * ls) {
    // Parallel: only an overlap of collinear segments matters.
    if (std::abs(cross(r, q)) / lr > eps) return std::nullopt;
    const double t0 = dot(q, r) / lr;
    const double t1 = dot(s2.b() - s1.a(), r) / lr;
    const double overlap = std::min(lr, std::max(t0, t1)) - std::max(0.0, std::min(t0, t1));
    if (overlap > eps) throw CollinearOverlap("segments share a sub-segment of positive length");
    return std::nullopt;
  }

  const double t = cross(q, s) / denom;
  const double u = cross(q, r) / denom;
  if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return std::nullopt;
  const Point2 p = s1.at(t);
  for (auto e : {s1.a(), s1.b(), s2.a(), s2.b()}) {
    if (distance(p, e) <= eps) return std::nullopt;
  }
  return p;
}

std::optional<Segment> clip_segment_to_polygon(const Segment& seg, const ConvexPolygon& poly) {
  const Point2 a = seg.a();
  const Point2 d = seg.direction();
  const double ld = norm(d);
  double lo = 0.0;
  double hi = 1.0;
  const auto& v = poly.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 e = v[(i + 1) % v.size()] - v[i];
    const double fa = cross(e, a - v[i]);
    const double fb = cross(e, seg.b() - v[i]);
    const double tol = 1e-12 * norm(e) * (ld + norm(a - v[i]));
    if (fa >= -tol && fb >= -tol) continue;
    if (fa < -tol && fb < -tol) return std::nullopt;
    const double tc = fa / (fa - fb);
    if (fa < 0) {
      lo = std::max(lo, tc);
    } else {
      hi = std::min(hi, tc);
    }
    if (lo >= hi) return std::nullopt;
  }
  if ((hi - lo) * ld <= 1e-12 * (ld + norm(a))) return std::nullopt;
  const Point2 pa = lo == 0.0 ? a : seg.at(lo);
  const Point2 pb = hi == 1.0 ? seg.b() : seg.at(hi);
  if (pa == pb) return std::nullopt;
  return Segment(pa, pb);
}

std::optional<Segment> clip_segment_to_window(const Segment& s, const Window& w) {
  return clip_segment_to_polygon(s, ConvexPolygon::from_window(w));
}

std::vector<Point2> clip_polygon_halfplane(std::span<const Point2> poly, Point2 normal, double offset) {
  std::vector<Point2> out;
  if (poly.empty()) return out;
  out.reserve(poly.size() + 1);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2 p = poly[i];
    const Point2 q = poly[(i + 1) % poly.size()];
    const double fp = dot(normal, p) - offset;
    const double fq = dot(normal, q) - offset;
    if (fp <= 0) out.push_back(p);
    if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
      const double t = fp / (fp - fq);
      out.push_back(p + t * (q - p));
    }
  }
  return out;
}

double polygon_area(std::span<const Point2> poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) s += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * s;
}

double total_length(std::span<const Segment> segments) {
  double s = 0.0;
  for (const auto& seg : segments) s += seg.length();
  return s;
}

Point2 closest_point_on_segment(const Segment& s, Point2 q) {
  const Point2 d = s.direction();
  const double t = std::clamp(dot(q - s.a(), d) / dot(d, d), 0.0, 1.0);
  if (t == 0.0) return s.a();
  if (t == 1.0) return s.b();
  return s.at(t);
}

}  // namespace tesspath
