#include "tesspath/spatial_index.hpp"

#include "tesspath/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tesspath {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long kMaxCells = 1L << 23;

Window padded_bounds(double x0, double x1, double y0, double y1) {
  const double pad = 1e-9 * (1.0 + std::max({std::abs(x0), std::abs(x1), std::abs(y0), std::abs(y1)}));
  return Window(x0 - pad, x1 + pad, y0 - pad, y1 + pad);
}

Window bounds_of(std::span<const Point2> pts) {
  if (pts.empty()) return padded_bounds(0, 0, 0, 0);
  double x0 = kInf, x1 = -kInf, y0 = kInf, y1 = -kInf;
  for (auto p : pts) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  return padded_bounds(x0, x1, y0, y1);
}

// Visits the cells at Chebyshev distance exactly r from (ci, cj).
template <typename F>
void for_ring(const GridFrame& g, int ci, int cj, int r, F&& visit) {
  const int i0 = ci - r, i1 = ci + r, j0 = cj - r, j1 = cj + r;
  for (int j = std::max(j0, 0); j <= std::min(j1, g.rows() - 1); ++j) {
    if (j == j0 || j == j1) {
      for (int i = std::max(i0, 0); i <= std::min(i1, g.columns() - 1); ++i) visit(g.index(i, j));
    } else {
      if (i0 >= 0) visit(g.index(i0, j));
      if (i1 < g.columns() && r > 0) visit(g.index(i1, j));
    }
  }
}

bool neighbor_less(const Neighbor& a, const Neighbor& b) {
  if (a.distance != b.distance) return a.distance < b.distance;
  return lex_less(a.point, b.point);
}

}  // namespace

GridFrame::GridFrame(const Window& bounds, double cell_size) : x0_(bounds.xmin), y0_(bounds.ymin), h_(cell_size) {
  if (!(h_ > 0) || !std::isfinite(h_)) h_ = std::max(bounds.width(), bounds.height());
  auto dims = [&] {
    nx_ = std::max(1, static_cast<int>(std::ceil(bounds.width() / h_)));
    ny_ = std::max(1, static_cast<int>(std::ceil(bounds.height() / h_)));
  };
  dims();
  while (static_cast<long>(nx_) * ny_ > kMaxCells) {
    h_ *= 1.5;
    dims();
  }
}

int GridFrame::column(double x) const {
  const double f = std::floor((x - x0_) / h_);
  return static_cast<int>(std::clamp(f, 0.0, static_cast<double>(nx_ - 1)));
}

int GridFrame::row(double y) const {
  const double f = std::floor((y - y0_) / h_);
  return static_cast<int>(std::clamp(f, 0.0, static_cast<double>(ny_ - 1)));
}

double GridFrame::clearance(Point2 q, int i0, int i1, int j0, int j1) const {
  double d = kInf;
  if (i0 > 0) d = std::min(d, q.x - (x0_ + i0 * h_));
  if (i1 < nx_ - 1) d = std::min(d, x0_ + (i1 + 1) * h_ - q.x);
  if (j0 > 0) d = std::min(d, q.y - (y0_ + j0 * h_));
  if (j1 < ny_ - 1) d = std::min(d, y0_ + (j1 + 1) * h_ - q.y);
  return std::max(d, 0.0);
}

PointIndex::PointIndex(std::span<const Point2> points) : points_(points.begin(), points.end()) {
  const Window b = bounds_of(points_);
  const double h = points_.empty() ? 1.0 : std::sqrt(b.area() / static_cast<double>(points_.size()));
  grid_ = GridFrame(b, std::max(h, 1e-12 * b.diameter()));
  cell_start_.assign(static_cast<std::size_t>(grid_.cell_count()) + 1, 0);
  std::vector<int> cell_of(points_.size());
  for (std::size_t k = 0; k < points_.size(); ++k) {
    cell_of[k] = grid_.index(grid_.column(points_[k].x), grid_.row(points_[k].y));
    ++cell_start_[cell_of[k] + 1];
  }
  for (std::size_t c = 1; c < cell_start_.size(); ++c) cell_start_[c] += cell_start_[c - 1];
  cell_items_.resize(points_.size());
  auto fill = cell_start_;
  for (std::size_t k = 0; k < points_.size(); ++k) cell_items_[fill[cell_of[k]]++] = static_cast<int>(k);
}

Neighbor PointIndex::kth_nearest(Point2 q, int k) const {
  if (k < 1) throw NotEnoughPoints("k must be >= 1");
  if (points_.size() < static_cast<std::size_t>(k)) throw NotEnoughPoints("pattern has fewer than k points");
  const int ci = grid_.column(q.x);
  const int cj = grid_.row(q.y);
  std::vector<Neighbor> cand;
  for (int r = 0;; ++r) {
    for_ring(grid_, ci, cj, r, [&](int c) {
      for (int s = cell_start_[c]; s < cell_start_[c + 1]; ++s) {
        const int idx = cell_items_[s];
        cand.push_back({idx, points_[idx], distance(q, points_[idx])});
      }
    });
    const int i0 = std::max(ci - r, 0), i1 = std::min(ci + r, grid_.columns() - 1);
    const int j0 = std::max(cj - r, 0), j1 = std::min(cj + r, grid_.rows() - 1);
    const double clear = grid_.clearance(q, i0, i1, j0, j1);
    if (cand.size() >= static_cast<std::size_t>(k)) {
      std::nth_element(cand.begin(), cand.begin() + (k - 1), cand.end(), neighbor_less);
      if (cand[k - 1].distance < clear || std::isinf(clear)) return cand[k - 1];
    }
  }
}

SegmentGrid::SegmentGrid(std::span<const Segment> segments, double eps) : segments_(segments) {
  double x0 = kInf, x1 = -kInf, y0 = kInf, y1 = -kInf, length = 0.0;
  for (const auto& s : segments) {
    x0 = std::min({x0, s.a().x, s.b().x});
    x1 = std::max({x1, s.a().x, s.b().x});
    y0 = std::min({y0, s.a().y, s.b().y});
    y1 = std::max({y1, s.a().y, s.b().y});
    length += s.length();
  }
  if (segments.empty()) x0 = x1 = y0 = y1 = 0.0;
  const Window b = padded_bounds(x0 - eps, x1 + eps, y0 - eps, y1 + eps);
  // About two mean free paths per cell keeps the per-cell lists short.
  double h = length > 0 ? 2.0 * b.area() / length : b.diameter();
  if (segments.size() < 8) h = std::max(b.width(), b.height());
  grid_ = GridFrame(b, h);

  const double hh = grid_.cell_size();
  const double gx0 = b.xmin;
  auto visit_cells = [&](const Segment& s, auto&& emit) {
    const Point2 a = s.a(), d = s.direction();
    const double lo = std::min(a.x, s.b().x) - eps, hi = std::max(a.x, s.b().x) + eps;
    const int c0 = grid_.column(lo), c1 = grid_.column(hi);
    const bool steep = std::abs(d.x) <= 1e-12 * s.length();
    for (int i = c0; i <= c1; ++i) {
      double ylo, yhi;
      if (steep || c0 == c1) {
        ylo = std::min(a.y, s.b().y);
        yhi = std::max(a.y, s.b().y);
      } else {
        const double xl = std::max(lo, gx0 + i * hh), xr = std::min(hi, gx0 + (i + 1) * hh);
        const double tl = std::clamp((xl - a.x) / d.x, 0.0, 1.0);
        const double tr = std::clamp((xr - a.x) / d.x, 0.0, 1.0);
        ylo = std::min(a.y + tl * d.y, a.y + tr * d.y);
        yhi = std::max(a.y + tl * d.y, a.y + tr * d.y);
      }
      for (int j = grid_.row(ylo - eps); j <= grid_.row(yhi + eps); ++j) emit(grid_.index(i, j));
    }
  };
  cell_start_.assign(static_cast<std::size_t>(grid_.cell_count()) + 1, 0);
  for (const auto& s : segments) visit_cells(s, [&](int c) { ++cell_start_[c + 1]; });
  for (std::size_t c = 1; c < cell_start_.size(); ++c) cell_start_[c] += cell_start_[c - 1];
  cell_items_.resize(static_cast<std::size_t>(cell_start_.back()));
  auto fill = cell_start_;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    visit_cells(segments[k], [&](int c) { cell_items_[fill[c]++] = static_cast<int>(k); });
  }
}

std::span<const int> SegmentGrid::cell(int index) const {
  return std::span<const int>(cell_items_).subspan(cell_start_[index], cell_start_[index + 1] - cell_start_[index]);
}

SegmentHit SegmentGrid::nearest(Point2 q) const {
  SegmentHit best;
  best.distance = kInf;
  if (segments_.empty()) return best;
  const int ci = grid_.column(q.x);
  const int cj = grid_.row(q.y);
  for (int r = 0;; ++r) {
    for_ring(grid_, ci, cj, r, [&](int c) {
      for (int k : cell(c)) {
        const Point2 p = closest_point_on_segment(segments_[k], q);
        const double d = distance(p, q);
        if (d < best.distance || (d == best.distance && k < best.segment)) best = {k, p, d};
      }
    });
    const int i0 = std::max(ci - r, 0), i1 = std::min(ci + r, grid_.columns() - 1);
    const int j0 = std::max(cj - r, 0), j1 = std::min(cj + r, grid_.rows() - 1);
    const double clear = grid_.clearance(q, i0, i1, j0, j1);
    if (best.distance < clear || std::isinf(clear)) return best;
  }
}

}  // namespace tesspath
