#pragma once

#include "tesspath/geometry.hpp"

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace tesspath {

// Delaunay triangulation of a planar point set.  Vertex indices refer to
// the input order.  Triangles are counterclockwise; neighbors[t][i] is the
// triangle across the edge opposite triangles[t][i], or -1 on the hull.
struct Triangulation {
  std::vector<Point2> points;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 3>> neighbors;

  // Undirected edges (i < j), sorted.
  std::vector<std::pair<int, int>> edge_pairs() const;
  Point2 circumcentre(int t) const;
};

// Throws DegenerateInput when fewer than three points are given, when all
// points are collinear, or when two points coincide (within 1e-9 of the
// bounding diameter).  Cocircular ties resolve to the diagonal incident to
// the lexicographically smallest vertex of the quadrilateral.
Triangulation delaunay_triangulate(std::span<const Point2> points);

std::vector<Segment> delaunay_edges(std::span<const Point2> points);

// Voronoi cell of each nucleus intersected with the window; std::nullopt
// where the cell misses the window.  Throws DuplicateNuclei.
std::vector<std::optional<ConvexPolygon>> voronoi_cells(std::span<const Point2> nuclei, const Window& w);

// Voronoi edges clipped to the window (window border not included).
std::vector<Segment> voronoi_edges(std::span<const Point2> nuclei, const Window& w);

// Circumcircle test: positive when d lies strictly inside the circle through
// the counterclockwise triangle (a, b, c).
double incircle(Point2 a, Point2 b, Point2 c, Point2 d);

}  // namespace tesspath
