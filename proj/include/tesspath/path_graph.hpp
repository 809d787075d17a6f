#pragma once

#include "tesspath/geometry.hpp"
#include "tesspath/point_process.hpp"
#include "tesspath/tessellation.hpp"

#include <limits>
#include <span>
#include <vector>

namespace tesspath {

struct Arc {
  int target = -1;
  double length = 0.0;
};

// Weighted undirected graph embedded in an edge set.  Adjacency is stored in
// compressed rows; arcs(i) lists the neighbours of node i.
class PathGraph {
public:
  std::vector<Point2> nodes;
  std::vector<int> arc_start;  // size nodes.size() + 1
  std::vector<Arc> arc_list;
  // anchor_map[k][m]: node of point m of the k-th embedded pattern.
  std::vector<std::vector<int>> anchor_map;
  // Connected component id per node; largest component first (id 0).
  std::vector<int> component;
  int component_count = 0;

  std::size_t size() const { return nodes.size(); }
  std::span<const Arc> arcs(int node) const {
    return std::span<const Arc>(arc_list).subspan(arc_start[node], arc_start[node + 1] - arc_start[node]);
  }
  std::size_t edge_count() const { return arc_list.size() / 2; }
  double total_length() const;
  bool connected(int u, int v) const { return component[u] == component[v]; }
};

// Nodes are segment endpoints, proper crossings, T-junctions and the
// embedded points, merged when closer than eps.  Every segment is split at
// all nodes on it.  Pairs that overlap collinearly are not split against
// each other.  Throws InvalidAnchor for a pattern without valid anchors.
PathGraph build_path_graph(const EdgeSet& edges, std::span<const PointPattern> embedded, double eps);

constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// Single-source distances; unreachable nodes get kUnreachable.
std::vector<double> shortest_path_lengths(const PathGraph& g, int source);

// Reusable Dijkstra state for many queries on the same graph.
class DijkstraWorkspace {
public:
  explicit DijkstraWorkspace(const PathGraph& g);

  // Distances from source to each target, stopping once all are settled.
  std::vector<double> distances(int source, std::span<const int> targets);

private:
  const PathGraph& g_;
  std::vector<double> dist_;
  std::vector<unsigned char> settled_;
  std::vector<int> want_;
  std::vector<int> touched_;
};

// Crossing of an edge segment with a horizontal line.
struct TransectHit {
  int node = -1;  // filled in once the hit is embedded in a graph
  EdgeAnchor anchor;
  double x = 0.0;
  double alpha = 0.0;  // angle between segment and line, in (0, pi)
};

// Proper crossings with the line y = line_y, sorted by x.
std::vector<TransectHit> transect_hits(const EdgeSet& edges, double line_y);

}  // namespace tesspath
