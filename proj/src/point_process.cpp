#include "tesspath/point_process.hpp"

#include "tesspath/errors.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace tesspath {

PointPattern sample_cox_on_edges(const EdgeSet& edges, double lambda_l, Stream& rng) {
  if (!(lambda_l > 0) || !std::isfinite(lambda_l)) throw std::invalid_argument("sample_cox_on_edges: lambda_l must be > 0");
  PointPattern out;
  out.window = edges.window;
  out.linear_intensity = lambda_l;
  for (std::size_t k = 0; k < edges.segments.size(); ++k) {
    const auto& s = edges.segments[k];
    const double len = s.length();
    std::poisson_distribution<long> count(lambda_l * len);
    const long n = count(rng);
    for (long i = 0; i < n; ++i) {
      const double off = rng.uniform() * len;
      out.points.push_back(s.at(off / len));
      out.anchors.push_back({static_cast<int>(k), off});
    }
  }
  return out;
}

PointPattern sample_poisson_window(double lambda, const Window& w, Stream& rng) {
  if (!(lambda > 0) || !std::isfinite(lambda)) throw std::invalid_argument("sample_poisson_window: lambda must be > 0");
  PointPattern out;
  out.window = w;
  std::poisson_distribution<long> count(lambda * w.area());
  const long n = count(rng);
  out.points.resize(static_cast<std::size_t>(n));
  for (auto& p : out.points) {
    p.x = rng.uniform(w.xmin, w.xmax);
    p.y = rng.uniform(w.ymin, w.ymax);
  }
  return out;
}

PointPattern thin_and_rescale(const PointPattern& pattern, double c, Stream& rng) {
  if (!(c > 0 && c < 1)) throw std::invalid_argument("thin_and_rescale: c must lie in (0, 1)");
  const double f = std::sqrt(c);
  PointPattern out;
  out.window = pattern.window.scaled(f);
  if (pattern.linear_intensity) out.linear_intensity = *pattern.linear_intensity * f;
  for (auto p : pattern.points) {
    if (rng.uniform() < c) out.points.push_back(f * p);
  }
  return out;
}

Neighbor kth_nearest(Point2 query, const PointPattern& pattern, int k) {
  if (k < 1) throw NotEnoughPoints("k must be >= 1");
  if (pattern.size() < static_cast<std::size_t>(k)) throw NotEnoughPoints("pattern has fewer than k points");
  return PointIndex(pattern.points).kth_nearest(query, k);
}

}  // namespace tesspath
