#include "tesspath/path_graph.hpp"

#include "tesspath/errors.hpp"
#include "tesspath/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <unordered_map>

namespace tesspath {

namespace {

struct Stop {
  int segment;
  double t;
  Point2 p;
  int pattern = -1;
  int point = -1;
};

double parameter_on(const Segment& s, Point2 p) {
  const Point2 d = s.direction();
  return std::clamp(dot(p - s.a(), d) / dot(d, d), 0.0, 1.0);
}

// Nodes merged on an eps grid: a new point joins the lowest-numbered node
// within eps in the surrounding 3x3 buckets.
class NodeMerger {
public:
  NodeMerger(std::vector<Point2>& nodes, double eps) : nodes_(nodes), eps_(eps) {}

  int insert(Point2 p) {
    const long long ix = static_cast<long long>(std::floor(p.x / eps_));
    const long long iy = static_cast<long long>(std::floor(p.y / eps_));
    int best = -1;
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = buckets_.find(key(ix + dx, iy + dy));
        if (it == buckets_.end()) continue;
        for (int n : it->second) {
          if (distance(nodes_[n], p) <= eps_ && (best < 0 || n < best)) best = n;
        }
      }
    }
    if (best >= 0) return best;
    nodes_.push_back(p);
    const int id = static_cast<int>(nodes_.size()) - 1;
    buckets_[key(ix, iy)].push_back(id);
    return id;
  }

private:
  static unsigned long long key(long long ix, long long iy) {
    return static_cast<unsigned long long>(ix) * 0x9e3779b97f4a7c15ULL ^ static_cast<unsigned long long>(iy);
  }

  std::vector<Point2>& nodes_;
  double eps_;
  std::unordered_map<unsigned long long, std::vector<int>> buckets_;
};

void add_crossings(std::span<const Segment> segs, const SegmentGrid& grid, double eps, std::vector<Stop>& stops) {
  const GridFrame& f = grid.frame();
  for (int c = 0; c < f.cell_count(); ++c) {
    auto items = grid.cell(c);
    for (std::size_t u = 0; u < items.size(); ++u) {
      for (std::size_t v = u + 1; v < items.size(); ++v) {
        const int i = items[u], j = items[v];
        std::optional<Point2> p;
        try {
          p = segment_intersection(segs[i], segs[j], eps);
        } catch (const CollinearOverlap&) {
          continue;
        }
        if (!p || f.index(f.column(p->x), f.row(p->y)) != c) continue;
        stops.push_back({i, parameter_on(segs[i], *p), *p});
        stops.push_back({j, parameter_on(segs[j], *p), *p});
      }
    }
  }
}

// Endpoints of one segment lying in the interior of another.
void add_t_junctions(std::span<const Segment> segs, const SegmentGrid& grid, double eps, std::vector<Stop>& stops) {
  const GridFrame& f = grid.frame();
  std::vector<int> stamp(segs.size(), -1);
  int query = 0;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (Point2 e : {segs[i].a(), segs[i].b()}) {
      ++query;
      const int ci = f.column(e.x), cj = f.row(e.y);
      for (int a = std::max(ci - 1, 0); a <= std::min(ci + 1, f.columns() - 1); ++a) {
        for (int b = std::max(cj - 1, 0); b <= std::min(cj + 1, f.rows() - 1); ++b) {
          for (int j : grid.cell(f.index(a, b))) {
            if (j == static_cast<int>(i) || stamp[j] == query) continue;
            stamp[j] = query;
            const Segment& s = segs[j];
            if (distance(closest_point_on_segment(s, e), e) > eps) continue;
            if (distance(e, s.a()) <= eps || distance(e, s.b()) <= eps) continue;
            stops.push_back({j, parameter_on(s, e), e});
          }
        }
      }
    }
  }
}

void add_anchors(std::span<const Segment> segs, std::span<const PointPattern> embedded, double eps,
                 std::vector<Stop>& stops) {
  for (std::size_t k = 0; k < embedded.size(); ++k) {
    const auto& pat = embedded[k];
    if (pat.points.empty()) continue;
    if (pat.anchors.size() != pat.points.size()) {
      throw InvalidAnchor("pattern " + std::to_string(k) + " has no edge anchors");
    }
    for (std::size_t m = 0; m < pat.points.size(); ++m) {
      const EdgeAnchor& a = pat.anchors[m];
      if (a.segment_index < 0 || a.segment_index >= static_cast<int>(segs.size())) {
        throw InvalidAnchor("segment index " + std::to_string(a.segment_index) + " out of range");
      }
      const double len = segs[a.segment_index].length();
      if (!(a.offset >= -eps && a.offset <= len + eps)) {
        throw InvalidAnchor("offset " + std::to_string(a.offset) + " outside segment of length " + std::to_string(len));
      }
      stops.push_back({a.segment_index, std::clamp(a.offset / len, 0.0, 1.0), pat.points[m], static_cast<int>(k),
                       static_cast<int>(m)});
    }
  }
}

void label_components(PathGraph& g) {
  const int n = static_cast<int>(g.size());
  std::vector<int> raw(n, -1);
  std::vector<int> sizes;
  std::vector<int> queue;
  for (int s = 0; s < n; ++s) {
    if (raw[s] >= 0) continue;
    const int id = static_cast<int>(sizes.size());
    raw[s] = id;
    queue.assign(1, s);
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (const Arc& a : g.arcs(queue[h])) {
        if (raw[a.target] < 0) {
          raw[a.target] = id;
          queue.push_back(a.target);
        }
      }
    }
    sizes.push_back(static_cast<int>(queue.size()));
  }
  std::vector<int> order(sizes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sizes[a] > sizes[b]; });
  std::vector<int> rank(sizes.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r);
  g.component.resize(n);
  for (int i = 0; i < n; ++i) g.component[i] = rank[raw[i]];
  g.component_count = static_cast<int>(sizes.size());
}

using QueueItem = std::pair<double, int>;
using MinQueue = std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>>;

}  // namespace

double PathGraph::total_length() const {
  double s = 0.0;
  for (const Arc& a : arc_list) s += a.length;
  return 0.5 * s;
}

PathGraph build_path_graph(const EdgeSet& edges, std::span<const PointPattern> embedded, double eps) {
  const std::span<const Segment> segs(edges.segments);
  if (!(eps > 0)) eps = edges.window.snap_eps();
  std::vector<Stop> stops;
  stops.reserve(4 * segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) {
    stops.push_back({static_cast<int>(i), 0.0, segs[i].a()});
    stops.push_back({static_cast<int>(i), 1.0, segs[i].b()});
  }
  const SegmentGrid grid(segs, eps);
  add_crossings(segs, grid, eps, stops);
  add_t_junctions(segs, grid, eps, stops);
  add_anchors(segs, embedded, eps, stops);
  std::sort(stops.begin(), stops.end(), [](const Stop& a, const Stop& b) {
    if (a.segment != b.segment) return a.segment < b.segment;
    if (a.t != b.t) return a.t < b.t;
    if (a.pattern != b.pattern) return a.pattern < b.pattern;
    return a.point < b.point;
  });

  PathGraph g;
  g.anchor_map.resize(embedded.size());
  for (std::size_t k = 0; k < embedded.size(); ++k) g.anchor_map[k].assign(embedded[k].points.size(), -1);
  NodeMerger merger(g.nodes, eps);
  std::vector<std::pair<int, int>> links;
  links.reserve(stops.size());
  int prev = -1, prev_segment = -1;
  for (const Stop& s : stops) {
    const int node = merger.insert(s.p);
    if (s.pattern >= 0) g.anchor_map[s.pattern][s.point] = node;
    if (s.segment == prev_segment && node != prev) links.emplace_back(prev, node);
    prev = node;
    prev_segment = s.segment;
  }

  const int n = static_cast<int>(g.nodes.size());
  g.arc_start.assign(n + 1, 0);
  for (auto [u, v] : links) {
    ++g.arc_start[u + 1];
    ++g.arc_start[v + 1];
  }
  for (int i = 0; i < n; ++i) g.arc_start[i + 1] += g.arc_start[i];
  g.arc_list.resize(2 * links.size());
  auto fill = g.arc_start;
  for (auto [u, v] : links) {
    const double len = distance(g.nodes[u], g.nodes[v]);
    g.arc_list[fill[u]++] = {v, len};
    g.arc_list[fill[v]++] = {u, len};
  }
  label_components(g);
  return g;
}

std::vector<double> shortest_path_lengths(const PathGraph& g, int source) {
  if (source < 0 || source >= static_cast<int>(g.size())) throw std::out_of_range("shortest_path_lengths: bad source");
  std::vector<double> dist(g.size(), kUnreachable);
  MinQueue q;
  dist[source] = 0.0;
  q.push({0.0, source});
  while (!q.empty()) {
    auto [d, u] = q.top();
    q.pop();
    if (d > dist[u]) continue;
    for (const Arc& a : g.arcs(u)) {
      const double nd = d + a.length;
      if (nd < dist[a.target]) {
        dist[a.target] = nd;
        q.push({nd, a.target});
      }
    }
  }
  return dist;
}

DijkstraWorkspace::DijkstraWorkspace(const PathGraph& g)
    : g_(g), dist_(g.size(), kUnreachable), settled_(g.size(), 0), want_(g.size(), 0) {}

std::vector<double> DijkstraWorkspace::distances(int source, std::span<const int> targets) {
  if (source < 0 || source >= static_cast<int>(g_.size())) throw std::out_of_range("DijkstraWorkspace: bad source");
  int remaining = 0;
  for (int t : targets) {
    if (!want_[t]) {
      want_[t] = 1;
      ++remaining;
    }
  }
  MinQueue q;
  dist_[source] = 0.0;
  touched_.push_back(source);
  q.push({0.0, source});
  while (!q.empty() && remaining > 0) {
    auto [d, u] = q.top();
    q.pop();
    if (settled_[u]) continue;
    settled_[u] = 1;
    if (want_[u]) --remaining;
    for (const Arc& a : g_.arcs(u)) {
      const double nd = d + a.length;
      if (nd < dist_[a.target]) {
        if (dist_[a.target] == kUnreachable) touched_.push_back(a.target);
        dist_[a.target] = nd;
        q.push({nd, a.target});
      }
    }
  }
  std::vector<double> out;
  out.reserve(targets.size());
  for (int t : targets) out.push_back(settled_[t] ? dist_[t] : kUnreachable);
  for (int t : targets) want_[t] = 0;
  for (int v : touched_) {
    dist_[v] = kUnreachable;
    settled_[v] = 0;
  }
  touched_.clear();
  return out;
}

std::vector<TransectHit> transect_hits(const EdgeSet& edges, double line_y) {
  std::vector<TransectHit> hits;
  for (std::size_t k = 0; k < edges.segments.size(); ++k) {
    const Segment& s = edges.segments[k];
    const double ya = s.a().y - line_y, yb = s.b().y - line_y;
    if (!((ya < 0 && yb > 0) || (ya > 0 && yb < 0))) continue;
    const double t = ya / (ya - yb);
    double dx = s.b().x - s.a().x, dy = s.b().y - s.a().y;
    if (dy < 0) {
      dx = -dx;
      dy = -dy;
    }
    TransectHit h;
    h.anchor = {static_cast<int>(k), t * s.length()};
    h.x = s.a().x + t * (s.b().x - s.a().x);
    h.alpha = std::atan2(dy, dx);
    hits.push_back(h);
  }
  std::sort(hits.begin(), hits.end(), [](const TransectHit& a, const TransectHit& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.anchor.segment_index < b.anchor.segment_index;
  });
  return hits;
}

}  // namespace tesspath
