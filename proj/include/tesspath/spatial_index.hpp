#pragma once

#include "tesspath/geometry.hpp"

#include <span>
#include <vector>

namespace tesspath {

// Uniform bucket grid over a bounding box.  Cell (i, j) covers
// [x0 + i h, x0 + (i+1) h) x [y0 + j h, y0 + (j+1) h).
class GridFrame {
public:
  GridFrame() = default;
  GridFrame(const Window& bounds, double cell_size);

  int columns() const { return nx_; }
  int rows() const { return ny_; }
  double cell_size() const { return h_; }
  int column(double x) const;
  int row(double y) const;
  int index(int i, int j) const { return j * nx_ + i; }
  int cell_count() const { return nx_ * ny_; }
  // Distance from q to the outside of the block of cells [i0, i1] x [j0, j1];
  // infinite when the block is the whole grid.
  double clearance(Point2 q, int i0, int i1, int j0, int j1) const;

private:
  double x0_ = 0.0, y0_ = 0.0, h_ = 1.0;
  int nx_ = 1, ny_ = 1;
};

struct Neighbor {
  int index = -1;
  Point2 point;
  double distance = 0.0;
};

// Immutable nearest-neighbour index over a point set.
class PointIndex {
public:
  explicit PointIndex(std::span<const Point2> points);

  std::size_t size() const { return points_.size(); }
  // k-th closest point (k >= 1); equal distances are ordered
  // lexicographically.  Throws NotEnoughPoints when size() < k.
  Neighbor kth_nearest(Point2 q, int k) const;

private:
  std::vector<Point2> points_;
  GridFrame grid_;
  std::vector<int> cell_start_;
  std::vector<int> cell_items_;
};

struct SegmentHit {
  int segment = -1;
  Point2 point;  // closest point on the segment
  double distance = 0.0;
};

// Buckets segments into every grid cell they pass through (within eps).
class SegmentGrid {
public:
  SegmentGrid(std::span<const Segment> segments, double eps);

  const GridFrame& frame() const { return grid_; }
  std::span<const int> cell(int index) const;
  // Segment closest to q; ties go to the lower segment index.
  SegmentHit nearest(Point2 q) const;

private:
  std::span<const Segment> segments_;
  GridFrame grid_;
  std::vector<int> cell_start_;
  std::vector<int> cell_items_;
};

}  // namespace tesspath
