#pragma once

#include "tesspath/geometry.hpp"
#include "tesspath/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tesspath {

enum class ModelKind { plt, pvt, pdt, superposition, nesting };

// Descriptor of a stationary isotropic tessellation model.  Leaves carry
// their length intensity gamma (edge length per unit area); compositions
// carry two children and add their intensities.
class TessellationModel {
public:
  static TessellationModel plt(double gamma) { return leaf(ModelKind::plt, gamma); }
  static TessellationModel pvt(double gamma) { return leaf(ModelKind::pvt, gamma); }
  static TessellationModel pdt(double gamma) { return leaf(ModelKind::pdt, gamma); }
  static TessellationModel superposition(TessellationModel first, TessellationModel second);
  // Cells of host subdivided by independent copies of component.
  static TessellationModel nesting(TessellationModel host, TessellationModel component);

  ModelKind kind() const { return kind_; }
  bool is_leaf() const { return children_.empty(); }
  const std::vector<TessellationModel>& children() const { return children_; }
  double gamma() const;
  // Same structure with every leaf intensity multiplied by factor.
  TessellationModel scaled(double factor) const;
  std::string name() const;  // e.g. "nesting(plt(0.5),pvt(0.5))"

  // Throws ConfigInvalid: non-positive or non-finite gamma, nesting with a
  // composite child (only depth-1 nesting is supported).
  void validate() const;

  friend bool operator==(const TessellationModel&, const TessellationModel&) = default;

private:
  static TessellationModel leaf(ModelKind k, double g);
  ModelKind kind_ = ModelKind::plt;
  double gamma_ = 1.0;
  std::vector<TessellationModel> children_;
};

const char* kind_name(ModelKind k);

// Line {x : dot(x - centre, (cos phi, sin phi)) = p}.
struct LineParam {
  double p = 0.0;
  double phi = 0.0;  // [0, pi)
};

// Finite realisation of the edge set inside a window.
struct EdgeSet {
  std::vector<Segment> segments;
  Window window;
  double gamma_declared = 1.0;

  double length_intensity() const;  // total length / window area
};

// Isotropic Poisson line process with length intensity gamma, restricted to
// lines hitting a disc of the given radius (p is relative to its centre).
std::vector<LineParam> sample_poisson_lines(double gamma, double radius, Stream& rng);

// Edge set of the model inside w.  Superposition children use
// rng.split(0) and rng.split(1); nesting uses rng.split(0) for the host and
// rng.split(1).split(cell) for the component in each host cell.
// Throws EmptyRealization when no edge meets the window.
EdgeSet sample_edge_set(const TessellationModel& model, const Window& w, Stream& rng);

// Cells of a leaf model inside w, built from the same realisation that
// sample_edge_set would produce from this stream.
struct CellRealization {
  std::vector<Segment> edges;
  std::vector<ConvexPolygon> cells;
};
CellRealization sample_cells(const TessellationModel& leaf, const Window& w, Stream& rng);

// Faces of an arrangement of lines inside the window.
std::vector<ConvexPolygon> line_arrangement_faces(const std::vector<LineParam>& lines, Point2 centre,
                                                  const Window& w);

struct CalibrationResult {
  double mean = 0.0;
  double standard_error = 0.0;
  int replications = 0;
};

// Monte Carlo estimate of the length intensity; replication r draws from
// Stream(seed).split(r).
CalibrationResult calibrate_length_intensity(const TessellationModel& model, const Window& w, int reps,
                                             std::uint64_t seed);

}  // namespace tesspath
