#include "tesspath/tessellation.hpp"

#include "tesspath/delaunay.hpp"
#include "tesspath/errors.hpp"
#include "tesspath/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace tesspath {

TessellationModel TessellationModel::leaf(ModelKind k, double g) {
  TessellationModel m;
  m.kind_ = k;
  m.gamma_ = g;
  return m;
}

TessellationModel TessellationModel::superposition(TessellationModel first, TessellationModel second) {
  TessellationModel m;
  m.kind_ = ModelKind::superposition;
  m.gamma_ = 0.0;
  m.children_ = {std::move(first), std::move(second)};
  return m;
}

TessellationModel TessellationModel::nesting(TessellationModel host, TessellationModel component) {
  TessellationModel m;
  m.kind_ = ModelKind::nesting;
  m.gamma_ = 0.0;
  m.children_ = {std::move(host), std::move(component)};
  return m;
}

double TessellationModel::gamma() const {
  if (is_leaf()) return gamma_;
  return children_[0].gamma() + children_[1].gamma();
}

TessellationModel TessellationModel::scaled(double factor) const {
  TessellationModel m = *this;
  if (m.is_leaf()) {
    m.gamma_ *= factor;
  } else {
    for (auto& c : m.children_) c = c.scaled(factor);
  }
  return m;
}

const char* kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::plt: return "plt";
    case ModelKind::pvt: return "pvt";
    case ModelKind::pdt: return "pdt";
    case ModelKind::superposition: return "superposition";
    case ModelKind::nesting: return "nesting";
  }
  return "?";
}

std::string TessellationModel::name() const {
  std::ostringstream os;
  os << kind_name(kind_) << '(';
  if (is_leaf()) {
    os << gamma_;
  } else {
    os << children_[0].name() << ',' << children_[1].name();
  }
  os << ')';
  return os.str();
}

void TessellationModel::validate() const {
  if (is_leaf()) {
    if (kind_ == ModelKind::superposition || kind_ == ModelKind::nesting) {
      throw ConfigInvalid(std::string(kind_name(kind_)) + " needs two children");
    }
    if (!std::isfinite(gamma_) || gamma_ <= 0) throw ConfigInvalid("model gamma must be positive and finite");
    return;
  }
  if (children_.size() != 2) throw ConfigInvalid("composite model needs exactly two children");
  if (kind_ == ModelKind::nesting && (!children_[0].is_leaf() || !children_[1].is_leaf())) {
    throw ConfigInvalid("nesting supports leaf host and component models only (depth 1)");
  }
  for (const auto& c : children_) c.validate();
}

double EdgeSet::length_intensity() const { return total_length(segments) / window.area(); }

std::vector<LineParam> sample_poisson_lines(double gamma, double radius, Stream& rng) {
  // Lines with (p, phi) of density gamma/pi on [-R, R] x [0, pi) have length
  // intensity gamma.
  std::poisson_distribution<long> count(2.0 * radius * gamma);
  const long n = count(rng);
  std::vector<LineParam> lines(static_cast<std::size_t>(n));
  for (auto& l : lines) {
    l.p = rng.uniform(-radius, radius);
    l.phi = rng.uniform(0.0, std::numbers::pi);
  }
  return lines;
}

namespace {

Point2 line_normal(const LineParam& l) { return {std::cos(l.phi), std::sin(l.phi)}; }

std::optional<Segment> line_in_window(const LineParam& l, Point2 centre, double radius, const Window& w) {
  const Point2 n = line_normal(l);
  const Point2 d{-n.y, n.x};
  const Point2 foot = centre + l.p * n;
  const double reach = 2.0 * radius + 1.0;
  return clip_segment_to_window(Segment(foot - reach * d, foot + reach * d), w);
}

double circumradius(const Window& w) { return 0.5 * w.diameter(); }

std::vector<Point2> uniform_points(double intensity, const Window& w, Stream& rng) {
  std::poisson_distribution<long> count(intensity * w.area());
  const long n = count(rng);
  std::vector<Point2> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) {
    p.x = rng.uniform(w.xmin, w.xmax);
    p.y = rng.uniform(w.ymin, w.ymax);
  }
  return pts;
}

void push_clipped(std::vector<Segment>& out, Point2 a, Point2 b, const Window& w) {
  if (a == b) return;
  if (auto s = clip_segment_to_window(Segment(a, b), w)) out.push_back(*s);
}

std::optional<ConvexPolygon> clip_polygon_to_window(std::vector<Point2> poly, const Window& w) {
  poly = clip_polygon_halfplane(poly, {1, 0}, w.xmax);
  poly = clip_polygon_halfplane(poly, {-1, 0}, -w.xmin);
  poly = clip_polygon_halfplane(poly, {0, 1}, w.ymax);
  poly = clip_polygon_halfplane(poly, {0, -1}, -w.ymin);
  return ConvexPolygon::make(std::move(poly));
}

// Collinear fallback: consecutive points along the common line.
std::vector<Segment> chain_edges(std::vector<Point2> pts, const Window& w) {
  std::sort(pts.begin(), pts.end(), lex_less);
  std::vector<Segment> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) push_clipped(out, pts[i], pts[i + 1], w);
  return out;
}

CellRealization sample_leaf(const TessellationModel& m, const Window& w, Stream& rng, bool want_cells) {
  CellRealization out;
  const double gamma = m.gamma();
  switch (m.kind()) {
    case ModelKind::plt: {
      const Point2 c = w.centre();
      const double r = circumradius(w);
      const auto lines = sample_poisson_lines(gamma, r, rng);
      for (const auto& l : lines) {
        if (auto s = line_in_window(l, c, r, w)) out.edges.push_back(*s);
      }
      if (want_cells) out.cells = line_arrangement_faces(lines, c, w);
      break;
    }
    case ModelKind::pvt: {
      // Poisson-Voronoi: length intensity 2 sqrt(lambda_n).
      const double lambda_n = 0.25 * gamma * gamma;
      const auto nuclei = uniform_points(lambda_n, w.expanded(4.0 / std::sqrt(lambda_n)), rng);
      if (!nuclei.empty()) {
        out.edges = voronoi_edges(nuclei, w);
        if (want_cells) {
          for (auto& cell : voronoi_cells(nuclei, w)) {
            if (cell) out.cells.push_back(std::move(*cell));
          }
        }
      } else if (want_cells) {
        out.cells.push_back(ConvexPolygon::from_window(w));
      }
      break;
    }
    case ModelKind::pdt: {
      // Poisson-Delaunay: length intensity 32 sqrt(lambda_p) / (3 pi).
      const double root = 3.0 * std::numbers::pi * gamma / 32.0;
      const double lambda_p = root * root;
      const auto pts = uniform_points(lambda_p, w.expanded(4.0 / root), rng);
      Triangulation tr;
      try {
        tr = delaunay_triangulate(pts);
      } catch (const DegenerateInput&) {
        out.edges = chain_edges(pts, w);
        if (want_cells) out.cells.push_back(ConvexPolygon::from_window(w));
        break;
      }
      for (auto [i, j] : tr.edge_pairs()) push_clipped(out.edges, pts[i], pts[j], w);
      if (want_cells) {
        for (const auto& t : tr.triangles) {
          const Point2 a = pts[t[0]], b = pts[t[1]], c = pts[t[2]];
          if (std::max({a.x, b.x, c.x}) < w.xmin || std::min({a.x, b.x, c.x}) > w.xmax) continue;
          if (std::max({a.y, b.y, c.y}) < w.ymin || std::min({a.y, b.y, c.y}) > w.ymax) continue;
          if (auto cell = clip_polygon_to_window({a, b, c}, w)) out.cells.push_back(std::move(*cell));
        }
      }
      break;
    }
    default:
      throw ConfigInvalid("sample_cells: leaf model required");
  }
  return out;
}

std::vector<Segment> sample_segments(const TessellationModel& m, const Window& w, Stream& rng) {
  switch (m.kind()) {
    case ModelKind::superposition: {
      auto s0 = rng.split(0);
      auto s1 = rng.split(1);
      auto out = sample_segments(m.children()[0], w, s0);
      auto more = sample_segments(m.children()[1], w, s1);
      out.insert(out.end(), more.begin(), more.end());
      return out;
    }
    case ModelKind::nesting: {
      auto host_rng = rng.split(0);
      auto comp_root = rng.split(1);
      auto host = sample_leaf(m.children()[0], w, host_rng, true);
      auto out = std::move(host.edges);
      for (std::size_t i = 0; i < host.cells.size(); ++i) {
        const auto& cell = host.cells[i];
        auto comp_rng = comp_root.split(i);
        for (const auto& e : sample_segments(m.children()[1], cell.bounding_box(), comp_rng)) {
          if (auto s = clip_segment_to_polygon(e, cell)) out.push_back(*s);
        }
      }
      return out;
    }
    default:
      return sample_leaf(m, w, rng, false).edges;
  }
}

}  // namespace

std::vector<ConvexPolygon> line_arrangement_faces(const std::vector<LineParam>& lines, Point2 centre,
                                                  const Window& w) {
  const auto box = ConvexPolygon::from_window(w).vertices();
  std::vector<std::vector<Point2>> faces{std::vector<Point2>(box.begin(), box.end())};
  const double tol = 1e-12 * w.diameter();
  for (const auto& l : lines) {
    const Point2 n = line_normal(l);
    const double off = l.p + dot(n, centre);
    std::vector<std::vector<Point2>> next;
    next.reserve(faces.size() + 8);
    for (auto& f : faces) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (auto v : f) {
        const double s = dot(n, v) - off;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
      if (hi <= tol || lo >= -tol) {
        next.push_back(std::move(f));
        continue;
      }
      next.push_back(clip_polygon_halfplane(f, n, off));
      next.push_back(clip_polygon_halfplane(f, -1.0 * n, -off));
    }
    faces = std::move(next);
  }
  std::vector<ConvexPolygon> out;
  out.reserve(faces.size());
  for (auto& f : faces) {
    if (auto p = ConvexPolygon::make(std::move(f))) out.push_back(std::move(*p));
  }
  return out;
}

CellRealization sample_cells(const TessellationModel& leaf, const Window& w, Stream& rng) {
  leaf.validate();
  if (!leaf.is_leaf()) throw ConfigInvalid("sample_cells: leaf model required");
  return sample_leaf(leaf, w, rng, true);
}

EdgeSet sample_edge_set(const TessellationModel& model, const Window& w, Stream& rng) {
  model.validate();
  EdgeSet es;
  es.window = w;
  es.gamma_declared = model.gamma();
  es.segments = sample_segments(model, w, rng);
  if (es.segments.empty()) throw EmptyRealization("no edge of " + model.name() + " meets the window");
  return es;
}

CalibrationResult calibrate_length_intensity(const TessellationModel& model, const Window& w, int reps,
                                             std::uint64_t seed) {
  if (reps < 1) throw ConfigInvalid("calibrate_length_intensity: reps must be >= 1");
  model.validate();
  std::vector<double> values(static_cast<std::size_t>(reps), 0.0);
  const Stream root(seed);
  parallel_for(values.size(), [&](std::size_t r) {
    auto rng = root.split(r);
    try {
      values[r] = sample_edge_set(model, w, rng).length_intensity();
    } catch (const EmptyRealization&) {
      values[r] = 0.0;
    }
  });
  CalibrationResult out;
  out.replications = reps;
  double s = 0.0;
  for (double v : values) s += v;
  out.mean = s / reps;
  if (reps > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.standard_error = std::sqrt(ss / (reps - 1) / reps);
  }
  return out;
}

}  // namespace tesspath
