#include "tesspath/delaunay.hpp"

#include "tesspath/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

namespace tesspath {

double incircle(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  return alift * (bdx * cdy - bdy * cdx) + blift * (cdx * ady - cdy * adx) + clift * (adx * bdy - ady * bdx);
}

namespace {

// Guibas-Stolfi divide and conquer on a quad-edge structure.  Edge ids are
// 4 * quad + rotation.
class QuadEdgeMesh {
public:
  explicit QuadEdgeMesh(std::span<const Point2> pts) : pts_(pts) {}

  static int rot(int e) { return (e & ~3) | ((e + 1) & 3); }
  static int sym(int e) { return (e & ~3) | ((e + 2) & 3); }
  static int invrot(int e) { return (e & ~3) | ((e + 3) & 3); }
  int onext(int e) const { return next_[e]; }
  int oprev(int e) const { return rot(onext(rot(e))); }
  int lnext(int e) const { return rot(onext(invrot(e))); }
  int rprev(int e) const { return onext(sym(e)); }
  int org(int e) const { return org_[e]; }
  int dest(int e) const { return org_[sym(e)]; }
  bool alive(int e) const { return alive_[e >> 2]; }
  int edge_count() const { return static_cast<int>(alive_.size()) * 4; }

  int make_edge(int a, int b) {
    const int e = static_cast<int>(next_.size());
    next_.insert(next_.end(), {e, e + 3, e + 2, e + 1});
    org_.insert(org_.end(), {a, -1, b, -1});
    alive_.push_back(true);
    return e;
  }

  void splice(int a, int b) {
    const int alpha = rot(onext(a));
    const int beta = rot(onext(b));
    std::swap(next_[a], next_[b]);
    std::swap(next_[alpha], next_[beta]);
  }

  int connect(int a, int b) {
    const int e = make_edge(dest(a), org(b));
    splice(e, lnext(a));
    splice(sym(e), b);
    return e;
  }

  void remove(int e) {
    splice(e, oprev(e));
    splice(sym(e), oprev(sym(e)));
    alive_[e >> 2] = false;
  }

  double ccw(int a, int b, int c) const { return orient(pts_[a], pts_[b], pts_[c]); }
  bool right_of(int x, int e) const { return ccw(x, dest(e), org(e)) > 0; }
  bool left_of(int x, int e) const { return ccw(x, org(e), dest(e)) > 0; }
  bool in_circle(int a, int b, int c, int d) const { return incircle(pts_[a], pts_[b], pts_[c], pts_[d]) > 0; }

  // Triangulates order[lo, hi); returns (counterclockwise hull edge out of
  // the leftmost vertex, clockwise hull edge out of the rightmost vertex).
  std::pair<int, int> build(const std::vector<int>& order, std::size_t lo, std::size_t hi) {
    const std::size_t n = hi - lo;
    if (n == 2) {
      const int a = make_edge(order[lo], order[lo + 1]);
      return {a, sym(a)};
    }
    if (n == 3) {
      const int s1 = order[lo], s2 = order[lo + 1], s3 = order[lo + 2];
      const int a = make_edge(s1, s2);
      const int b = make_edge(s2, s3);
      splice(sym(a), b);
      const double o = ccw(s1, s2, s3);
      if (o > 0) {
        connect(b, a);
        return {a, sym(b)};
      }
      if (o < 0) {
        const int c = connect(b, a);
        return {sym(c), c};
      }
      return {a, sym(b)};
    }
    const std::size_t mid = lo + n / 2;
    auto [ldo, ldi] = build(order, lo, mid);
    auto [rdi, rdo] = build(order, mid, hi);
    while (true) {
      if (left_of(org(rdi), ldi)) {
        ldi = lnext(ldi);
      } else if (right_of(org(ldi), rdi)) {
        rdi = rprev(rdi);
      } else {
        break;
      }
    }
    int basel = connect(sym(rdi), ldi);
    if (org(ldi) == org(ldo)) ldo = sym(basel);
    if (org(rdi) == org(rdo)) rdo = basel;
    auto valid = [&](int e) { return right_of(dest(e), basel); };
    while (true) {
      int lcand = onext(sym(basel));
      if (valid(lcand)) {
        while (in_circle(dest(basel), org(basel), dest(lcand), dest(onext(lcand)))) {
          const int t = onext(lcand);
          remove(lcand);
          lcand = t;
        }
      }
      int rcand = oprev(basel);
      if (valid(rcand)) {
        while (in_circle(dest(basel), org(basel), dest(rcand), dest(oprev(rcand)))) {
          const int t = oprev(rcand);
          remove(rcand);
          rcand = t;
        }
      }
      const bool lv = valid(lcand);
      const bool rv = valid(rcand);
      if (!lv && !rv) break;
      if (!lv || (rv && in_circle(dest(lcand), org(lcand), org(rcand), dest(rcand)))) {
        basel = connect(rcand, sym(basel));
      } else {
        basel = connect(sym(basel), sym(lcand));
      }
    }
    return {ldo, rdo};
  }

private:
  std::span<const Point2> pts_;
  std::vector<int> next_;
  std::vector<int> org_;
  std::vector<char> alive_;
};

double bbox_diameter(std::span<const Point2> pts) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (auto p : pts) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  return pts.empty() ? 0.0 : std::hypot(x1 - x0, y1 - y0);
}

// True if two points lie within eps of each other (grid hash).
bool has_near_duplicates(std::span<const Point2> pts, double eps) {
  if (eps <= 0) eps = std::numeric_limits<double>::min();
  std::unordered_map<std::uint64_t, std::vector<int>> grid;
  grid.reserve(pts.size() * 2);
  auto key = [](std::int64_t i, std::int64_t j) {
    return (static_cast<std::uint64_t>(i) << 32) ^ static_cast<std::uint64_t>(j & 0xffffffff);
  };
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto i = static_cast<std::int64_t>(std::floor(pts[k].x / eps));
    const auto j = static_cast<std::int64_t>(std::floor(pts[k].y / eps));
    for (std::int64_t di = -1; di <= 1; ++di) {
      for (std::int64_t dj = -1; dj <= 1; ++dj) {
        auto it = grid.find(key(i + di, j + dj));
        if (it == grid.end()) continue;
        for (int other : it->second) {
          if (distance(pts[other], pts[k]) <= eps) return true;
        }
      }
    }
    grid[key(i, j)].push_back(static_cast<int>(k));
  }
  return false;
}

bool all_collinear(std::span<const Point2> pts) {
  if (pts.size() < 3) return true;
  // Farthest pair proxy: first point and the point farthest from it.
  std::size_t far = 0;
  double best = -1;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double d = distance(pts[0], pts[i]);
    if (d > best) {
      best = d;
      far = i;
    }
  }
  const double tol = 1e-12 * best * best;
  for (const auto& p : pts) {
    if (std::abs(orient(pts[0], pts[far], p)) > tol) return false;
  }
  return true;
}

void link_neighbors(Triangulation& tri) {
  std::unordered_map<std::uint64_t, std::pair<int, int>> edge_owner;
  edge_owner.reserve(tri.triangles.size() * 3);
  tri.neighbors.assign(tri.triangles.size(), {-1, -1, -1});
  for (int t = 0; t < static_cast<int>(tri.triangles.size()); ++t) {
    for (int i = 0; i < 3; ++i) {
      const int a = tri.triangles[t][(i + 1) % 3];
      const int b = tri.triangles[t][(i + 2) % 3];
      const auto key = (static_cast<std::uint64_t>(std::min(a, b)) << 32) | static_cast<std::uint32_t>(std::max(a, b));
      auto [it, inserted] = edge_owner.try_emplace(key, t, i);
      if (!inserted) {
        const auto [u, j] = it->second;
        tri.neighbors[t][i] = u;
        tri.neighbors[u][j] = t;
      }
    }
  }
}

int index_in(const std::array<int, 3>& tri, int v) {
  for (int i = 0; i < 3; ++i) {
    if (tri[i] == v) return i;
  }
  return -1;
}

// Flips edge opposite vertex i of triangle t.
void flip(Triangulation& tr, int t, int i) {
  const int u = tr.neighbors[t][i];
  auto& T = tr.triangles[t];
  auto& U = tr.triangles[u];
  const int a = T[i];
  const int b = T[(i + 1) % 3];
  const int c = T[(i + 2) % 3];
  const int j = (index_in(U, b) + 1) % 3;  // U is a rotation of (d, c, b)
  const int d = U[j];
  // Outer neighbours before the flip.
  const int n_ab = tr.neighbors[t][(i + 2) % 3];  // across (a, b)
  const int n_ca = tr.neighbors[t][(i + 1) % 3];  // across (c, a)
  const int n_bd = tr.neighbors[u][(j + 1) % 3];  // opposite c in U
  const int n_dc = tr.neighbors[u][(j + 2) % 3];  // opposite b in U
  // New triangles: t = (a, b, d), u = (a, d, c).
  T = {a, b, d};
  U = {a, d, c};
  tr.neighbors[t] = {n_bd, u, n_ab};
  tr.neighbors[u] = {n_dc, n_ca, t};
  auto repoint = [&](int nb, int from, int to) {
    if (nb < 0) return;
    for (auto& x : tr.neighbors[nb]) {
      if (x == from) {
        x = to;
        return;
      }
    }
  };
  repoint(n_bd, u, t);
  repoint(n_ca, t, u);
}

void break_cocircular_ties(Triangulation& tr) {
  const auto& P = tr.points;
  const int budget = 10 * static_cast<int>(tr.triangles.size()) + 10;
  for (int pass = 0, flips = 0; pass < budget; ++pass) {
    bool changed = false;
    for (int t = 0; t < static_cast<int>(tr.triangles.size()); ++t) {
      for (int i = 0; i < 3; ++i) {
        const int u = tr.neighbors[t][i];
        if (u < 0) continue;
        const auto& T = tr.triangles[t];
        const int a = T[i], b = T[(i + 1) % 3], c = T[(i + 2) % 3];
        const int d = tr.triangles[u][(index_in(tr.triangles[u], b) + 1) % 3];
        std::array<Point2, 4> q{P[a], P[b], P[c], P[d]};
        const double s = bbox_diameter(q);
        if (std::abs(incircle(P[a], P[b], P[c], P[d])) > 1e-12 * s * s * s * s) continue;
        // Current diagonal is (b, c); alternative is (a, d).
        int smallest = a;
        for (int v : {b, c, d}) {
          if (lex_less(P[v], P[smallest])) smallest = v;
        }
        if (smallest == b || smallest == c) continue;
        if (orient(P[a], P[b], P[d]) <= 0 || orient(P[a], P[d], P[c]) <= 0) continue;
        flip(tr, t, i);
        changed = true;
        if (++flips > budget) return;
        break;
      }
    }
    if (!changed) return;
  }
}

}  // namespace

Triangulation delaunay_triangulate(std::span<const Point2> points) {
  if (points.size() < 3) throw DegenerateInput("need at least three points");
  for (auto p : points) {
    if (!is_finite(p)) throw DegenerateInput("non-finite coordinate");
  }
  const double diam = bbox_diameter(points);
  if (has_near_duplicates(points, 1e-9 * diam)) throw DegenerateInput("coincident points");
  if (all_collinear(points)) throw DegenerateInput("all points collinear");

  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return lex_less(points[i], points[j]); });

  QuadEdgeMesh mesh(points);
  mesh.build(order, 0, order.size());

  Triangulation tr;
  tr.points.assign(points.begin(), points.end());
  for (int e = 0; e < mesh.edge_count(); e += 2) {
    // Primal edges only (rotation 0 and 2).
    if (!mesh.alive(e)) continue;
    const int e1 = mesh.lnext(e);
    const int e2 = mesh.lnext(e1);
    if (mesh.lnext(e2) != e) continue;
    if (e > e1 || e > e2) continue;
    const int a = mesh.org(e), b = mesh.org(e1), c = mesh.org(e2);
    if (orient(points[a], points[b], points[c]) <= 0) continue;
    tr.triangles.push_back({a, b, c});
  }
  link_neighbors(tr);
  break_cocircular_ties(tr);
  return tr;
}

std::vector<std::pair<int, int>> Triangulation::edge_pairs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(triangles.size() * 2);
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    for (int i = 0; i < 3; ++i) {
      const int a = triangles[t][(i + 1) % 3];
      const int b = triangles[t][(i + 2) % 3];
      const int nb = neighbors[t][i];
      if (nb < 0 || static_cast<std::size_t>(nb) > t) out.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Point2 Triangulation::circumcentre(int t) const {
  const Point2 a = points[triangles[t][0]];
  const Point2 b = points[triangles[t][1]] - a;
  const Point2 c = points[triangles[t][2]] - a;
  const double d = 2.0 * cross(b, c);
  const double b2 = dot(b, b);
  const double c2 = dot(c, c);
  return a + Point2{(c.y * b2 - b.y * c2) / d, (b.x * c2 - c.x * b2) / d};
}

std::vector<Segment> delaunay_edges(std::span<const Point2> points) {
  const auto tr = delaunay_triangulate(points);
  std::vector<Segment> out;
  for (auto [i, j] : tr.edge_pairs()) out.emplace_back(points[i], points[j]);
  return out;
}

namespace {

// Fallback for fewer than three or collinear nuclei: every cell is the
// window cut by all bisectors.
std::vector<std::vector<Point2>> brute_force_cells(std::span<const Point2> nuclei, const Window& w) {
  const auto box = ConvexPolygon::from_window(w).vertices();
  std::vector<std::vector<Point2>> cells(nuclei.size());
  for (std::size_t i = 0; i < nuclei.size(); ++i) {
    std::vector<Point2> cell(box.begin(), box.end());
    for (std::size_t j = 0; j < nuclei.size() && !cell.empty(); ++j) {
      if (j == i) continue;
      const Point2 n = nuclei[j] - nuclei[i];
      const double off = 0.5 * (dot(nuclei[j], nuclei[j]) - dot(nuclei[i], nuclei[i]));
      cell = clip_polygon_halfplane(cell, n, off);
    }
    cells[i] = std::move(cell);
  }
  return cells;
}

void check_nuclei(std::span<const Point2> nuclei, const Window& w) {
  if (nuclei.empty()) throw DegenerateInput("voronoi: no nuclei");
  for (auto p : nuclei) {
    if (!is_finite(p)) throw DegenerateInput("voronoi: non-finite nucleus");
  }
  if (has_near_duplicates(nuclei, w.snap_eps())) throw DuplicateNuclei("two nuclei closer than the snap tolerance");
}

bool triangulable(std::span<const Point2> nuclei) { return nuclei.size() >= 3 && !all_collinear(nuclei); }

}  // namespace

std::vector<std::optional<ConvexPolygon>> voronoi_cells(std::span<const Point2> nuclei, const Window& w) {
  check_nuclei(nuclei, w);
  std::vector<std::vector<Point2>> raw;
  if (!triangulable(nuclei)) {
    raw = brute_force_cells(nuclei, w);
  } else {
    const auto tr = delaunay_triangulate(nuclei);
    std::vector<std::vector<int>> adj(nuclei.size());
    for (auto [i, j] : tr.edge_pairs()) {
      adj[i].push_back(j);
      adj[j].push_back(i);
    }
    const auto box = ConvexPolygon::from_window(w).vertices();
    raw.resize(nuclei.size());
    for (std::size_t i = 0; i < nuclei.size(); ++i) {
      std::vector<Point2> cell(box.begin(), box.end());
      for (int j : adj[i]) {
        if (cell.empty()) break;
        const Point2 n = nuclei[j] - nuclei[i];
        const double off = 0.5 * (dot(nuclei[j], nuclei[j]) - dot(nuclei[i], nuclei[i]));
        cell = clip_polygon_halfplane(cell, n, off);
      }
      raw[i] = std::move(cell);
    }
  }
  std::vector<std::optional<ConvexPolygon>> out;
  out.reserve(raw.size());
  for (auto& cell : raw) out.push_back(ConvexPolygon::make(std::move(cell)));
  return out;
}

std::vector<Segment> voronoi_edges(std::span<const Point2> nuclei, const Window& w) {
  check_nuclei(nuclei, w);
  std::vector<Segment> out;
  const double reach = 2.0 * w.diameter();
  auto emit = [&](Point2 p, Point2 q) {
    if (p == q) return;
    if (auto s = clip_segment_to_window(Segment(p, q), w)) out.push_back(*s);
  };
  if (!triangulable(nuclei)) {
    // Parallel bisectors between consecutive nuclei along the common line.
    std::vector<Point2> sorted(nuclei.begin(), nuclei.end());
    std::sort(sorted.begin(), sorted.end(), lex_less);
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      const Point2 mid = 0.5 * (sorted[i] + sorted[i + 1]);
      const Point2 d = sorted[i + 1] - sorted[i];
      const Point2 perp = (1.0 / norm(d)) * Point2{-d.y, d.x};
      const double r = reach + distance(mid, w.centre());
      emit(mid - r * perp, mid + r * perp);
    }
    return out;
  }
  const auto tr = delaunay_triangulate(nuclei);
  std::vector<Point2> cc(tr.triangles.size());
  for (std::size_t t = 0; t < cc.size(); ++t) cc[t] = tr.circumcentre(static_cast<int>(t));
  for (std::size_t t = 0; t < tr.triangles.size(); ++t) {
    for (int i = 0; i < 3; ++i) {
      const int nb = tr.neighbors[t][i];
      if (nb >= 0) {
        if (static_cast<std::size_t>(nb) > t) emit(cc[t], cc[nb]);
        continue;
      }
      // Hull edge: the Voronoi edge is a ray leaving along the outer normal.
      const Point2 a = nuclei[tr.triangles[t][(i + 1) % 3]];
      const Point2 b = nuclei[tr.triangles[t][(i + 2) % 3]];
      const Point2 d = b - a;
      const Point2 outward = (1.0 / norm(d)) * Point2{d.y, -d.x};
      const double r = reach + distance(cc[t], w.centre());
      emit(cc[t], cc[t] + r * outward);
    }
  }
  return out;
}

}  // namespace tesspath
