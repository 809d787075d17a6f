#pragma once

#include "tesspath/geometry.hpp"
#include "tesspath/tessellation.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tesspath {

struct ExperimentConfig {
  TessellationModel model;
  double lambda_l = 1.0;
  double window_side = 1.0;      // square window centred at the origin
  std::optional<double> guard;   // default 3 / sqrt(lambda_l * gamma)
  int replications = 1;
  std::uint64_t seed = 0;
  int k = 1;                     // connect to the k-th nearest high-level point

  double gamma() const { return model.gamma(); }
  double kappa() const { return gamma() / lambda_l; }
  double lambda() const { return lambda_l * gamma(); }  // planar intensity
  double effective_guard() const;
  Window window() const { return Window::square(window_side); }

  // Throws ConfigInvalid.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct SampleDiagnostics {
  long discarded_unreachable = 0;
  long discarded_boundary = 0;
  long skipped_replications = 0;
  long high_points = 0;
  long low_points = 0;
  long reference_points = 0;

  SampleDiagnostics& operator+=(const SampleDiagnostics& o);
  friend bool operator==(const SampleDiagnostics&, const SampleDiagnostics&) = default;
};

// Samples of one replication, in point order.
struct ReplicationSamples {
  std::vector<double> c_star;
  std::vector<double> euclid;   // parallel to c_star
  std::vector<double> s_star;
  SampleDiagnostics diagnostics;
};

struct CStarSampleSet {
  ExperimentConfig config;
  std::vector<ReplicationSamples> replications;  // index = replication
  // Pooled in replication order.
  std::vector<double> values;
  std::vector<double> euclid_values;
  std::vector<double> s_star_values;
  SampleDiagnostics diagnostics;
};

struct SamplingOptions {
  bool shortest_paths = true;
  bool subscriber_lines = false;
};

// Replication r uses the streams (seed, r, role).  Results do not depend on
// the number of worker threads.
CStarSampleSet sample_network(const ExperimentConfig& cfg, SamplingOptions opts);
CStarSampleSet sample_typical_shortest_path(const ExperimentConfig& cfg);
CStarSampleSet sample_subscriber_line_length(const ExperimentConfig& cfg);

// One replication; exposed for tests.
ReplicationSamples sample_replication(const ExperimentConfig& cfg, int replication, SamplingOptions opts);

struct XiEstimate {
  std::vector<double> ratio_samples;
  double xi_hat = 0.0;
  double standard_error = 0.0;
  long discarded_unreachable = 0;
};

// Path-to-chord ratio between the outermost crossings of the x-axis in
// [0, span], on the strip [-span/4, 5 span/4] x [-span/4, span/4].
// Throws SpanTooSmall when a replication has fewer than two crossings.
XiEstimate estimate_xi(const TessellationModel& model, double span, int replications, std::uint64_t seed);

struct TransectSample {
  std::vector<double> angles;  // pooled incidence angles in (0, pi)
  long hits = 0;
  double total_span = 0.0;

  double intensity() const { return total_span > 0 ? static_cast<double>(hits) / total_span : 0.0; }
};

// Crossings of the x-axis with abscissa in [0, span], pooled over
// replications on the same strip as estimate_xi.
TransectSample sample_transect(const TessellationModel& model, double span, int replications, std::uint64_t seed);
std::vector<double> sample_intersection_angles(const TessellationModel& model, double span, int replications,
                                               std::uint64_t seed);

}  // namespace tesspath
