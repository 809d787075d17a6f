#pragma once

#include "tesspath/geometry.hpp"
#include "tesspath/rng.hpp"
#include "tesspath/spatial_index.hpp"
#include "tesspath/tessellation.hpp"

#include <optional>
#include <vector>

namespace tesspath {

// Exact on-edge location of a point: offset along segments[segment_index]
// measured from its first endpoint.
struct EdgeAnchor {
  int segment_index = -1;
  double offset = 0.0;
};

// Finite point pattern.  anchors is either empty or parallel to points.
struct PointPattern {
  std::vector<Point2> points;
  std::vector<EdgeAnchor> anchors;
  std::optional<double> linear_intensity;
  Window window;

  std::size_t size() const { return points.size(); }
  bool anchored() const { return !points.empty() && anchors.size() == points.size(); }
};

// Cox process driven by lambda_l times edge length: Poisson(lambda_l * L)
// uniform points on each segment.  Throws std::invalid_argument for
// lambda_l <= 0.
PointPattern sample_cox_on_edges(const EdgeSet& edges, double lambda_l, Stream& rng);

// Homogeneous Poisson process of the given intensity in w.
PointPattern sample_poisson_window(double lambda, const Window& w, Stream& rng);

// Independent thinning with retention probability c followed by scaling all
// coordinates (and the window) by sqrt(c); the planar intensity is unchanged.
PointPattern thin_and_rescale(const PointPattern& pattern, double c, Stream& rng);

// k-th nearest point of the pattern to query (k >= 1).
Neighbor kth_nearest(Point2 query, const PointPattern& pattern, int k);

}  // namespace tesspath
