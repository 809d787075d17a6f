#pragma once

#include "tesspath/estimators.hpp"
#include "tesspath/stats.hpp"
#include "tesspath/tessellation.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace tesspath {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Command { simulate, estimate_xi, fit, calibrate, verify };
const char* command_name(Command c);
std::optional<Command> parse_command(const std::string& name);

// Parsed experiment file.  Field errors raise ConfigInvalid naming the
// offending field.
struct RunConfig {
  Command command = Command::simulate;
  ExperimentConfig experiment;
  std::filesystem::path output_dir = "out";
  double span = 200.0;                  // estimate-xi
  std::optional<std::string> limit;     // "small_kappa" | "large_kappa"
  double xi = 1.0;                      // constant of the large-kappa limit
  double tolerance = 0.05;              // verify
  std::optional<double> truncation;     // truncated Weibull tau
  std::optional<std::filesystem::path> input;  // fit: existing samples.csv
};

TessellationModel model_from_json(const nlohmann::json& j, const std::string& where = "model");
nlohmann::json model_to_json(const TessellationModel& m);

// Accepts either a config document or a manifest (whose "config" member is
// used).  Throws ConfigInvalid.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);
nlohmann::json run_config_to_json(const RunConfig& c);

// Limit law selected by the config: explicit "limit", otherwise small-kappa
// for kappa <= 1 and large-kappa above.
LimitLaw limit_law_for(const RunConfig& c);

struct KsRecord {
  std::string law;
  double statistic = 0.0;
  friend bool operator==(const KsRecord&, const KsRecord&) = default;
};

struct Verification {
  double tolerance = 0.0;
  bool passed = false;
  friend bool operator==(const Verification&, const Verification&) = default;
};

struct Summary {
  std::string command;
  nlohmann::json config;
  long n_samples = 0;
  double mean = 0.0;
  double variance = 0.0;
  std::optional<KsRecord> ks_vs_limit;
  std::vector<FitResult> fits;
  std::optional<double> xi_hat;
  std::optional<double> xi_standard_error;
  std::optional<CalibrationResult> calibration;
  std::optional<Verification> verification;
  SampleDiagnostics diagnostics;

  friend bool operator==(const Summary&, const Summary&);
};

nlohmann::json summary_to_json(const Summary& s);
Summary summary_from_json(const nlohmann::json& j);

// Writes content to path through a temporary file and a rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string format_real(double v);  // 17 significant digits
std::string samples_csv(const CStarSampleSet& set);
std::vector<double> read_samples_column(const std::filesystem::path& csv, const std::string& column);

// Throws IoError when the summary holds no results.
void write_summary_json(const Summary& s, const std::filesystem::path& path);

// Blocks "kde", "limit" and (when given) "fit", each two columns x y,
// separated by two blank lines.  Throws TooFewSamples below 30 values.
std::string plot_data(const EmpiricalSample& s, const LimitLaw& law, const std::optional<FitResult>& fit);
void write_plot_data(const EmpiricalSample& s, const LimitLaw& law, const std::optional<FitResult>& fit,
                     const std::filesystem::path& path);

struct CliOptions {
  std::string command;
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
};

// Runs one command and returns the process exit code: 0 success, 1 runtime
// failure (including a failed verify), 2 configuration error.
int run_experiment(const CliOptions& opts, std::ostream& log);

}  // namespace tesspath
