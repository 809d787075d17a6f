#include "tesspath/estimators.hpp"

#include "tesspath/errors.hpp"
#include "tesspath/parallel.hpp"
#include "tesspath/path_graph.hpp"
#include "tesspath/point_process.hpp"
#include "tesspath/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace tesspath {

double ExperimentConfig::effective_guard() const { return guard ? *guard : 3.0 / std::sqrt(lambda()); }

void ExperimentConfig::validate() const {
  model.validate();
  if (!(lambda_l > 0) || !std::isfinite(lambda_l)) throw ConfigInvalid("lambda_l must be positive");
  if (!(window_side > 0) || !std::isfinite(window_side)) throw ConfigInvalid("window.side must be positive");
  if (replications < 1) throw ConfigInvalid("replications must be >= 1");
  if (k < 1) throw ConfigInvalid("k must be >= 1");
  const double g = effective_guard();
  if (!(g > 0)) throw ConfigInvalid("guard must be positive");
  if (!(g < 0.5 * window_side)) {
    throw ConfigInvalid("guard " + std::to_string(g) + " must be smaller than the window half-side " +
                        std::to_string(0.5 * window_side));
  }
}

SampleDiagnostics& SampleDiagnostics::operator+=(const SampleDiagnostics& o) {
  discarded_unreachable += o.discarded_unreachable;
  discarded_boundary += o.discarded_boundary;
  skipped_replications += o.skipped_replications;
  high_points += o.high_points;
  low_points += o.low_points;
  reference_points += o.reference_points;
  return *this;
}

namespace {

// A sample waiting for its shortest path: source node, target H node and
// the Euclidean part already known.
struct Request {
  int high = -1;      // index into the H pattern
  int node = -1;      // graph node of the start point
  double offset = 0;  // added to the path length
  double euclid = 0;
  bool is_c = true;
};

}  // namespace

ReplicationSamples sample_replication(const ExperimentConfig& cfg, int replication, SamplingOptions opts) {
  ReplicationSamples out;
  const Window w = cfg.window();
  const double guard = cfg.effective_guard();
  const auto rep = static_cast<std::uint64_t>(replication);

  auto rng_t = Stream::for_replication(cfg.seed, rep, StreamRole::tessellation);
  EdgeSet edges;
  try {
    edges = sample_edge_set(cfg.model, w, rng_t);
  } catch (const EmptyRealization&) {
    out.diagnostics.skipped_replications = 1;
    return out;
  }
  auto rng_h = Stream::for_replication(cfg.seed, rep, StreamRole::cox_high);
  auto rng_l = Stream::for_replication(cfg.seed, rep, StreamRole::cox_low);
  auto rng_r = Stream::for_replication(cfg.seed, rep, StreamRole::reference_points);
  std::vector<PointPattern> patterns(3);
  patterns[0] = sample_cox_on_edges(edges, cfg.lambda_l, rng_h);
  patterns[1] = sample_cox_on_edges(edges, cfg.lambda_l, rng_l);
  out.diagnostics.high_points = static_cast<long>(patterns[0].size());
  out.diagnostics.low_points = static_cast<long>(patterns[1].size());
  if (patterns[0].size() < static_cast<std::size_t>(cfg.k)) {
    out.diagnostics.skipped_replications = 1;
    return out;
  }
  const PointIndex high_index(patterns[0].points);
  std::vector<Request> requests;

  // A start point counts when it lies in the core window and its serving H
  // point is closer than the window boundary.
  auto serve = [&](Point2 p, Neighbor& nb) {
    const double room = w.distance_to_boundary(p);
    if (room < guard) return false;
    nb = high_index.kth_nearest(p, cfg.k);
    if (nb.distance < room) return true;
    ++out.diagnostics.discarded_boundary;
    return false;
  };

  if (opts.shortest_paths) {
    for (std::size_t m = 0; m < patterns[1].size(); ++m) {
      Neighbor nb;
      if (!serve(patterns[1].points[m], nb)) continue;
      requests.push_back({nb.index, static_cast<int>(m), 0.0, nb.distance, true});
    }
  }
  if (opts.subscriber_lines) {
    const Window core(w.xmin + guard, w.xmax - guard, w.ymin + guard, w.ymax - guard);
    const auto refs = sample_poisson_window(cfg.lambda(), core, rng_r);
    out.diagnostics.reference_points = static_cast<long>(refs.size());
    const SegmentGrid seg_grid(edges.segments, w.snap_eps());
    PointPattern& proj = patterns[2];
    proj.window = w;
    for (Point2 q : refs.points) {
      Neighbor nb;
      if (!serve(q, nb)) continue;
      const SegmentHit hit = seg_grid.nearest(q);
      const Segment& s = edges.segments[hit.segment];
      proj.points.push_back(hit.point);
      proj.anchors.push_back({hit.segment, std::min(distance(s.a(), hit.point), s.length())});
      requests.push_back({nb.index, static_cast<int>(proj.size()) - 1, hit.distance, nb.distance, false});
    }
  }
  if (requests.empty()) return out;

  const PathGraph g = build_path_graph(edges, patterns, w.snap_eps());
  for (auto& r : requests) r.node = g.anchor_map[r.is_c ? 1 : 2][r.node];

  // One Dijkstra per serving H point, H points in index order.
  std::map<int, std::vector<std::size_t>> by_high;
  for (std::size_t i = 0; i < requests.size(); ++i) by_high[requests[i].high].push_back(i);
  std::vector<double> path(requests.size(), kUnreachable);
  DijkstraWorkspace ws(g);
  std::vector<int> targets;
  for (const auto& [h, idx] : by_high) {
    targets.clear();
    for (std::size_t i : idx) targets.push_back(requests[i].node);
    const auto d = ws.distances(g.anchor_map[0][h], targets);
    for (std::size_t t = 0; t < idx.size(); ++t) path[idx[t]] = d[t];
  }
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const Request& r = requests[i];
    if (path[i] == kUnreachable) {
      ++out.diagnostics.discarded_unreachable;
      continue;
    }
    if (r.is_c) {
      out.c_star.push_back(path[i]);
      out.euclid.push_back(r.euclid);
    } else {
      out.s_star.push_back(r.offset + path[i]);
    }
  }
  return out;
}

CStarSampleSet sample_network(const ExperimentConfig& cfg, SamplingOptions opts) {
  cfg.validate();
  CStarSampleSet set;
  set.config = cfg;
  set.replications.resize(static_cast<std::size_t>(cfg.replications));
  parallel_for(set.replications.size(),
               [&](std::size_t r) { set.replications[r] = sample_replication(cfg, static_cast<int>(r), opts); });
  for (const auto& r : set.replications) {
    set.values.insert(set.values.end(), r.c_star.begin(), r.c_star.end());
    set.euclid_values.insert(set.euclid_values.end(), r.euclid.begin(), r.euclid.end());
    set.s_star_values.insert(set.s_star_values.end(), r.s_star.begin(), r.s_star.end());
    set.diagnostics += r.diagnostics;
  }
  return set;
}

CStarSampleSet sample_typical_shortest_path(const ExperimentConfig& cfg) { return sample_network(cfg, {true, false}); }

CStarSampleSet sample_subscriber_line_length(const ExperimentConfig& cfg) {
  return sample_network(cfg, {false, true});
}

namespace {

Window strip_window(double span) {
  const double h = span / 4.0;
  return Window(-h, span + h, -h, h);
}

void check_span(const TessellationModel& model, double span, int replications) {
  model.validate();
  if (!(span > 0) || !std::isfinite(span)) throw ConfigInvalid("span must be positive");
  if (replications < 1) throw ConfigInvalid("replications must be >= 1");
}

struct XiReplication {
  double ratio = 0.0;
  bool reachable = true;
};

}  // namespace

XiEstimate estimate_xi(const TessellationModel& model, double span, int replications, std::uint64_t seed) {
  check_span(model, span, replications);
  const Window w = strip_window(span);
  const Stream root(seed);
  std::vector<XiReplication> reps(static_cast<std::size_t>(replications));
  parallel_for(reps.size(), [&](std::size_t r) {
    auto rng = root.split(r);
    EdgeSet edges;
    try {
      edges = sample_edge_set(model, w, rng);
    } catch (const EmptyRealization&) {
      throw SpanTooSmall("replication " + std::to_string(r) + " has no edges");
    }
    auto hits = transect_hits(edges, 0.0);
    std::vector<TransectHit> inside;
    for (const auto& h : hits) {
      if (h.x <= span) inside.push_back(h);
    }
    if (inside.size() < 2) throw SpanTooSmall("fewer than two transect crossings in replication " + std::to_string(r));
    const auto first = *std::min_element(inside.begin(), inside.end(), [](const TransectHit& a, const TransectHit& b) {
      return std::abs(a.x) < std::abs(b.x);
    });
    const TransectHit last = inside.back();
    if (last.x <= first.x) throw SpanTooSmall("no crossing beyond the one nearest 0");
    PointPattern ends;
    ends.window = w;
    for (const auto& h : {first, last}) {
      ends.points.push_back(edges.segments[h.anchor.segment_index].at(h.anchor.offset /
                                                                     edges.segments[h.anchor.segment_index].length()));
      ends.anchors.push_back(h.anchor);
    }
    const PathGraph g = build_path_graph(edges, std::span<const PointPattern>(&ends, 1), w.snap_eps());
    DijkstraWorkspace ws(g);
    const int target = g.anchor_map[0][1];
    const double c = ws.distances(g.anchor_map[0][0], std::span<const int>(&target, 1))[0];
    if (c == kUnreachable) {
      reps[r].reachable = false;
      return;
    }
    reps[r].ratio = c / (last.x - first.x);
  });
  XiEstimate est;
  for (const auto& r : reps) {
    if (r.reachable) {
      est.ratio_samples.push_back(r.ratio);
    } else {
      ++est.discarded_unreachable;
    }
  }
  const double n = static_cast<double>(est.ratio_samples.size());
  if (n == 0) throw SpanTooSmall("no replication connected its transect crossings");
  double s = 0.0;
  for (double v : est.ratio_samples) s += v;
  est.xi_hat = s / n;
  if (n > 1) {
    double ss = 0.0;
    for (double v : est.ratio_samples) ss += (v - est.xi_hat) * (v - est.xi_hat);
    est.standard_error = std::sqrt(ss / (n - 1) / n);
  }
  return est;
}

TransectSample sample_transect(const TessellationModel& model, double span, int replications, std::uint64_t seed) {
  check_span(model, span, replications);
  const Window w = strip_window(span);
  const Stream root(seed);
  std::vector<std::vector<double>> per_rep(static_cast<std::size_t>(replications));
  parallel_for(per_rep.size(), [&](std::size_t r) {
    auto rng = root.split(r);
    try {
      for (const auto& h : transect_hits(sample_edge_set(model, w, rng), 0.0)) {
        if (h.x >= 0 && h.x <= span) per_rep[r].push_back(h.alpha);
      }
    } catch (const EmptyRealization&) {
    }
  });
  TransectSample out;
  for (const auto& a : per_rep) out.angles.insert(out.angles.end(), a.begin(), a.end());
  out.hits = static_cast<long>(out.angles.size());
  out.total_span = span * replications;
  return out;
}

std::vector<double> sample_intersection_angles(const TessellationModel& model, double span, int replications,
                                               std::uint64_t seed) {
  return sample_transect(model, span, replications, seed).angles;
}

}  // namespace tesspath
