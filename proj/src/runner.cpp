#include "tesspath/runner.hpp"

#include "tesspath/errors.hpp"
#include "tesspath/parallel.hpp"
#include "tesspath/rng.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tesspath {

using nlohmann::json;

namespace {

const json* member(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

double number_field(const json& j, const char* key, const std::string& where, bool required, double fallback) {
  const json* v = member(j, key);
  if (!v) {
    if (required) throw ConfigInvalid("missing field '" + where + key + "'");
    return fallback;
  }
  if (!v->is_number()) throw ConfigInvalid("field '" + where + key + "' must be a number");
  const double d = v->get<double>();
  if (!std::isfinite(d)) throw ConfigInvalid("field '" + where + key + "' must be finite");
  return d;
}

double positive_field(const json& j, const char* key, const std::string& where, bool required, double fallback) {
  const double d = number_field(j, key, where, required, fallback);
  if (!(d > 0)) throw ConfigInvalid("field '" + where + key + "' must be positive");
  return d;
}

long integer_field(const json& j, const char* key, long fallback, long min_value) {
  const json* v = member(j, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) throw ConfigInvalid(std::string("field '") + key + "' must be an integer");
  const long n = v->get<long>();
  if (n < min_value) throw ConfigInvalid(std::string("field '") + key + "' must be >= " + std::to_string(min_value));
  return n;
}

json diagnostics_to_json(const SampleDiagnostics& d) {
  return {{"discarded_unreachable", d.discarded_unreachable}, {"discarded_boundary", d.discarded_boundary},
          {"skipped_replications", d.skipped_replications},   {"high_points", d.high_points},
          {"low_points", d.low_points},                       {"reference_points", d.reference_points}};
}

SampleDiagnostics diagnostics_from_json(const json& j) {
  SampleDiagnostics d;
  d.discarded_unreachable = j.at("discarded_unreachable").get<long>();
  d.discarded_boundary = j.at("discarded_boundary").get<long>();
  d.skipped_replications = j.at("skipped_replications").get<long>();
  d.high_points = j.at("high_points").get<long>();
  d.low_points = j.at("low_points").get<long>();
  d.reference_points = j.at("reference_points").get<long>();
  return d;
}

json fit_to_json(const FitResult& f) {
  json params;
  switch (f.family) {
    case Family::exponential: params = {{"rate", f.rate}}; break;
    case Family::weibull: params = {{"a", f.a}, {"b", f.b}}; break;
    case Family::truncated_weibull: params = {{"a", f.a}, {"b", f.b}, {"tau", f.tau}}; break;
  }
  return {{"family", family_name(f.family)}, {"params", params}, {"loglik", f.loglik}, {"ks", f.ks_statistic}};
}

FitResult fit_from_json(const json& j) {
  FitResult f;
  const auto name = j.at("family").get<std::string>();
  const json& p = j.at("params");
  if (name == "exponential") {
    f.family = Family::exponential;
    f.rate = p.at("rate").get<double>();
  } else if (name == "weibull" || name == "truncated_weibull") {
    f.family = name == "weibull" ? Family::weibull : Family::truncated_weibull;
    f.a = p.at("a").get<double>();
    f.b = p.at("b").get<double>();
    if (f.family == Family::truncated_weibull) f.tau = p.at("tau").get<double>();
  } else {
    throw IoError("unknown fit family '" + name + "'");
  }
  f.loglik = j.at("loglik").get<double>();
  f.ks_statistic = j.at("ks").get<double>();
  return f;
}

bool same_calibration(const std::optional<CalibrationResult>& a, const std::optional<CalibrationResult>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  return a->mean == b->mean && a->standard_error == b->standard_error && a->replications == b->replications;
}

// Every fit that converges on the sample.
std::vector<FitResult> all_fits(std::span<const double> values, const RunConfig& cfg, std::ostream& log) {
  std::vector<FitResult> fits;
  auto attempt = [&](const char* what, auto&& fn) {
    try {
      fits.push_back(fn());
    } catch (const Error& e) {
      log << "warning: " << what << " fit skipped: " << e.what() << '\n';
    }
  };
  attempt("exponential", [&] { return fit_exponential(values); });
  attempt("weibull(shape 2)", [&] { return fit_weibull(values, 2.0); });
  attempt("weibull", [&] { return fit_weibull(values); });
  attempt("truncated weibull", [&] { return fit_truncated_weibull(values, cfg.truncation); });
  return fits;
}

std::optional<FitResult> plotted_fit(const std::vector<FitResult>& fits) {
  for (auto it = fits.rbegin(); it != fits.rend(); ++it) {
    if (it->family == Family::truncated_weibull) return *it;
  }
  if (!fits.empty()) return fits.back();
  return std::nullopt;
}

std::string hex(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json substream_ids(const RunConfig& cfg) {
  json out = json::array();
  const auto seed = cfg.experiment.seed;
  for (int r = 0; r < cfg.experiment.replications; ++r) {
    const auto rep = static_cast<std::uint64_t>(r);
    if (cfg.command == Command::estimate_xi || cfg.command == Command::calibrate) {
      out.push_back({{"replication", r}, {"stream", hex(Stream(seed).split(rep).key())}});
      continue;
    }
    out.push_back({{"replication", r},
                   {"tessellation", hex(Stream::for_replication(seed, rep, StreamRole::tessellation).key())},
                   {"cox_high", hex(Stream::for_replication(seed, rep, StreamRole::cox_high).key())},
                   {"cox_low", hex(Stream::for_replication(seed, rep, StreamRole::cox_low).key())},
                   {"reference_points", hex(Stream::for_replication(seed, rep, StreamRole::reference_points).key())}});
  }
  return out;
}

void fill_sample_stats(Summary& s, std::span<const double> values) {
  s.n_samples = static_cast<long>(values.size());
  if (values.empty()) return;
  const EmpiricalSample e({values.begin(), values.end()});
  s.mean = e.mean();
  s.variance = e.variance();
}

void write_plot_if_possible(std::span<const double> values, const LimitLaw& law, const std::optional<FitResult>& fit,
                            const std::filesystem::path& path, std::ostream& log) {
  try {
    write_plot_data(EmpiricalSample({values.begin(), values.end()}), law, fit, path);
  } catch (const TooFewSamples& e) {
    log << "warning: " << path.filename().string() << " not written: " << e.what() << '\n';
  }
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::simulate: return "simulate";
    case Command::estimate_xi: return "estimate-xi";
    case Command::fit: return "fit";
    case Command::calibrate: return "calibrate";
    case Command::verify: return "verify";
  }
  return "?";
}

std::optional<Command> parse_command(const std::string& name) {
  for (Command c : {Command::simulate, Command::estimate_xi, Command::fit, Command::calibrate, Command::verify}) {
    if (name == command_name(c)) return c;
  }
  return std::nullopt;
}

TessellationModel model_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigInvalid("field '" + where + "' must be an object");
  const json* type = member(j, "type");
  if (!type) throw ConfigInvalid("missing field '" + where + ".type'");
  if (!type->is_string()) throw ConfigInvalid("field '" + where + ".type' must be a string");
  const auto t = type->get<std::string>();
  const std::string prefix = where + ".";
  if (t == "plt" || t == "pvt" || t == "pdt") {
    const double g = positive_field(j, "gamma", prefix, true, 0.0);
    if (t == "plt") return TessellationModel::plt(g);
    if (t == "pvt") return TessellationModel::pvt(g);
    return TessellationModel::pdt(g);
  }
  if (t != "superposition" && t != "nesting") {
    throw ConfigInvalid("field '" + where + ".type' must be one of plt, pvt, pdt, superposition, nesting");
  }
  const json* ch = member(j, "children");
  if (!ch) throw ConfigInvalid("missing field '" + where + ".children'");
  if (!ch->is_array() || ch->size() != 2) {
    throw ConfigInvalid("field '" + where + ".children' must be an array of two models");
  }
  auto first = model_from_json((*ch)[0], where + ".children[0]");
  auto second = model_from_json((*ch)[1], where + ".children[1]");
  TessellationModel m = t == "superposition" ? TessellationModel::superposition(first, second)
                                              : TessellationModel::nesting(first, second);
  if (member(j, "gamma")) {
    const double g = positive_field(j, "gamma", prefix, true, 0.0);
    if (std::abs(g - m.gamma()) > 1e-9 * m.gamma()) {
      throw ConfigInvalid("field '" + where + ".gamma' must equal the sum of the children's gamma (" +
                          format_real(m.gamma()) + ")");
    }
  }
  try {
    m.validate();
  } catch (const ConfigInvalid& e) {
    throw ConfigInvalid("field '" + where + "': " + e.what());
  }
  return m;
}

json model_to_json(const TessellationModel& m) {
  json j = {{"type", kind_name(m.kind())}};
  if (m.is_leaf()) {
    j["gamma"] = m.gamma();
  } else {
    j["children"] = {model_to_json(m.children()[0]), model_to_json(m.children()[1])};
  }
  return j;
}

RunConfig parse_run_config(const json& doc) {
  if (!doc.is_object()) throw ConfigInvalid("config must be a JSON object");
  const json& j = member(doc, "config") && doc.at("config").is_object() ? doc.at("config") : doc;
  RunConfig c;
  const json* cmd = member(j, "command");
  if (!cmd) throw ConfigInvalid("missing field 'command'");
  if (!cmd->is_string() || !parse_command(cmd->get<std::string>())) {
    throw ConfigInvalid("field 'command' must be one of simulate, estimate-xi, fit, calibrate, verify");
  }
  c.command = *parse_command(cmd->get<std::string>());
  const json* model = member(j, "model");
  if (!model) throw ConfigInvalid("missing field 'model'");
  auto& e = c.experiment;
  e.model = model_from_json(*model);

  const bool needs_points = c.command == Command::simulate || c.command == Command::verify ||
                            (c.command == Command::fit && !member(j, "input"));
  e.lambda_l = positive_field(j, "lambda_l", "", needs_points, 1.0);
  const json* win = member(j, "window");
  const bool needs_window = c.command != Command::estimate_xi && !(c.command == Command::fit && member(j, "input"));
  if (!win && needs_window) throw ConfigInvalid("missing field 'window'");
  if (win) {
    if (!win->is_object()) throw ConfigInvalid("field 'window' must be an object");
    e.window_side = positive_field(*win, "side", "window.", true, 0.0);
  }
  if (member(j, "guard")) e.guard = positive_field(j, "guard", "", true, 0.0);
  e.replications = static_cast<int>(integer_field(j, "replications", 1, 1));
  if (const json* s = member(j, "seed")) {
    if (!s->is_number_integer()) throw ConfigInvalid("field 'seed' must be an integer");
    e.seed = s->is_number_unsigned() ? s->get<std::uint64_t>() : static_cast<std::uint64_t>(s->get<std::int64_t>());
  }
  e.k = static_cast<int>(integer_field(j, "k", 1, 1));
  if (const json* o = member(j, "output_dir")) {
    if (!o->is_string()) throw ConfigInvalid("field 'output_dir' must be a string");
    c.output_dir = o->get<std::string>();
  }
  c.span = positive_field(j, "span", "", false, 200.0);
  if (const json* l = member(j, "limit")) {
    if (!l->is_string() || (*l != "small_kappa" && *l != "large_kappa")) {
      throw ConfigInvalid("field 'limit' must be \"small_kappa\" or \"large_kappa\"");
    }
    c.limit = l->get<std::string>();
  }
  c.xi = positive_field(j, "xi", "", false, 1.0);
  c.tolerance = positive_field(j, "tolerance", "", false, 0.05);
  if (member(j, "truncation")) c.truncation = positive_field(j, "truncation", "", true, 0.0);
  if (const json* in = member(j, "input")) {
    if (!in->is_string()) throw ConfigInvalid("field 'input' must be a string");
    c.input = in->get<std::string>();
  }
  if (needs_window && c.command != Command::calibrate) {
    try {
      e.validate();
    } catch (const ConfigInvalid& err) {
      throw ConfigInvalid(std::string("invalid experiment: ") + err.what());
    }
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot read config file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigInvalid("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_run_config(j);
}

json run_config_to_json(const RunConfig& c) {
  const auto& e = c.experiment;
  json j = {{"command", command_name(c.command)},
            {"model", model_to_json(e.model)},
            {"lambda_l", e.lambda_l},
            {"window", {{"side", e.window_side}}},
            {"replications", e.replications},
            {"seed", e.seed},
            {"k", e.k},
            {"output_dir", c.output_dir.string()},
            {"span", c.span},
            {"xi", c.xi},
            {"tolerance", c.tolerance}};
  if (e.guard) j["guard"] = *e.guard;
  if (c.limit) j["limit"] = *c.limit;
  if (c.truncation) j["truncation"] = *c.truncation;
  if (c.input) j["input"] = c.input->string();
  return j;
}

LimitLaw limit_law_for(const RunConfig& c) {
  const auto& e = c.experiment;
  const bool small = c.limit ? *c.limit == "small_kappa" : e.kappa() <= 1.0;
  if (small) return SmallKappa{e.lambda_l};
  return LargeKappa{e.lambda(), c.xi};
}

bool operator==(const Summary& a, const Summary& b) {
  return a.command == b.command && a.config == b.config && a.n_samples == b.n_samples && a.mean == b.mean &&
         a.variance == b.variance && a.ks_vs_limit == b.ks_vs_limit && a.fits == b.fits && a.xi_hat == b.xi_hat &&
         a.xi_standard_error == b.xi_standard_error && same_calibration(a.calibration, b.calibration) &&
         a.verification == b.verification && a.diagnostics == b.diagnostics;
}

json summary_to_json(const Summary& s) {
  json j = {{"command", s.command},   {"config", s.config},     {"n_samples", s.n_samples},
            {"mean", s.mean},         {"variance", s.variance}, {"diagnostics", diagnostics_to_json(s.diagnostics)}};
  j["ks_vs_limit"] = s.ks_vs_limit ? json{{"law", s.ks_vs_limit->law}, {"statistic", s.ks_vs_limit->statistic}}
                                   : json(nullptr);
  j["fits"] = json::array();
  for (const auto& f : s.fits) j["fits"].push_back(fit_to_json(f));
  if (s.xi_hat) j["xi_hat"] = *s.xi_hat;
  if (s.xi_standard_error) j["xi_standard_error"] = *s.xi_standard_error;
  if (s.calibration) {
    j["calibration"] = {{"mean", s.calibration->mean},
                        {"standard_error", s.calibration->standard_error},
                        {"replications", s.calibration->replications}};
  }
  if (s.verification) {
    j["verification"] = {{"tolerance", s.verification->tolerance}, {"passed", s.verification->passed}};
  }
  return j;
}

Summary summary_from_json(const json& j) {
  try {
    Summary s;
    s.command = j.at("command").get<std::string>();
    s.config = j.at("config");
    s.n_samples = j.at("n_samples").get<long>();
    s.mean = j.at("mean").get<double>();
    s.variance = j.at("variance").get<double>();
    s.diagnostics = diagnostics_from_json(j.at("diagnostics"));
    if (const json* k = member(j, "ks_vs_limit")) {
      s.ks_vs_limit = KsRecord{k->at("law").get<std::string>(), k->at("statistic").get<double>()};
    }
    for (const auto& f : j.at("fits")) s.fits.push_back(fit_from_json(f));
    if (const json* x = member(j, "xi_hat")) s.xi_hat = x->get<double>();
    if (const json* x = member(j, "xi_standard_error")) s.xi_standard_error = x->get<double>();
    if (const json* c = member(j, "calibration")) {
      CalibrationResult r;
      r.mean = c->at("mean").get<double>();
      r.standard_error = c->at("standard_error").get<double>();
      r.replications = c->at("replications").get<int>();
      s.calibration = r;
    }
    if (const json* v = member(j, "verification")) {
      s.verification = Verification{v->at("tolerance").get<double>(), v->at("passed").get<bool>()};
    }
    return s;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed summary: ") + e.what());
  }
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string samples_csv(const CStarSampleSet& set) {
  std::string out = "replication,c_star,euclid,s_star\n";
  for (std::size_t r = 0; r < set.replications.size(); ++r) {
    const auto& rep = set.replications[r];
    const std::size_t rows = std::max(rep.c_star.size(), rep.s_star.size());
    for (std::size_t i = 0; i < rows; ++i) {
      out += std::to_string(r);
      out += ',';
      if (i < rep.c_star.size()) out += format_real(rep.c_star[i]);
      out += ',';
      if (i < rep.euclid.size()) out += format_real(rep.euclid[i]);
      out += ',';
      if (i < rep.s_star.size()) out += format_real(rep.s_star[i]);
      out += '\n';
    }
  }
  return out;
}

std::vector<double> read_samples_column(const std::filesystem::path& csv, const std::string& column) {
  std::ifstream in(csv);
  if (!in) throw IoError("cannot read '" + csv.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("'" + csv.string() + "' is empty");
  int col = -1, idx = 0;
  std::stringstream header(line);
  for (std::string name; std::getline(header, name, ','); ++idx) {
    if (name == column) col = idx;
  }
  if (col < 0) throw IoError("'" + csv.string() + "' has no column '" + column + "'");
  std::vector<double> values;
  while (std::getline(in, line)) {
    std::stringstream row(line);
    std::string cell;
    for (int i = 0; i <= col && std::getline(row, cell, ','); ++i) {
      if (i == col && !cell.empty()) values.push_back(std::stod(cell));
    }
  }
  return values;
}

void write_summary_json(const Summary& s, const std::filesystem::path& path) {
  if (s.n_samples == 0 && !s.xi_hat && !s.calibration) throw IoError("summary has no results");
  write_atomic(path, summary_to_json(s).dump(2) + "\n");
}

std::string plot_data(const EmpiricalSample& s, const LimitLaw& law, const std::optional<FitResult>& fit) {
  if (s.size() < 30) throw TooFewSamples("plot data needs at least 30 samples, got " + std::to_string(s.size()));
  const Curve k = kde(s);
  std::string out = "# kde bandwidth=" + format_real(silverman_bandwidth(s)) + "\n";
  for (std::size_t i = 0; i < k.x.size(); ++i) out += format_real(k.x[i]) + ' ' + format_real(k.y[i]) + '\n';
  out += "\n\n# limit " + limit_name(law) + "\n";
  for (double x : k.x) out += format_real(x) + ' ' + format_real(limit_pdf(law, x)) + '\n';
  if (fit) {
    out += "\n\n# fit ";
    out += family_name(fit->family);
    out += '\n';
    for (double x : k.x) out += format_real(x) + ' ' + format_real(fit->pdf(x)) + '\n';
  }
  return out;
}

void write_plot_data(const EmpiricalSample& s, const LimitLaw& law, const std::optional<FitResult>& fit,
                     const std::filesystem::path& path) {
  write_atomic(path, plot_data(s, law, fit));
}

int run_experiment(const CliOptions& opts, std::ostream& log) {
  RunConfig cfg;
  try {
    const auto cmd = parse_command(opts.command);
    if (!cmd) throw ConfigInvalid("unknown command '" + opts.command + "'");
    cfg = load_run_config(opts.config);
    if (cfg.command != *cmd) {
      log << "note: running '" << opts.command << "' (config says '" << command_name(cfg.command) << "')\n";
      cfg.command = *cmd;
    }
    if (opts.seed) cfg.experiment.seed = *opts.seed;
    if (opts.out) cfg.output_dir = *opts.out;
  } catch (const ConfigInvalid& e) {
    log << "config error: " << e.what() << '\n';
    return 2;
  }

  const auto started = std::chrono::system_clock::now();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto& e = cfg.experiment;
    const auto dir = cfg.output_dir;
    Summary summary;
    summary.command = command_name(cfg.command);
    summary.config = run_config_to_json(cfg);
    int exit_code = 0;

    switch (cfg.command) {
      case Command::simulate:
      case Command::verify:
      case Command::fit: {
        std::vector<double> values;
        std::optional<CStarSampleSet> set;
        if (cfg.command == Command::fit && cfg.input) {
          values = read_samples_column(*cfg.input, "c_star");
        } else {
          set = sample_network(e, {true, cfg.command == Command::simulate});
          summary.diagnostics = set->diagnostics;
          values = set->values;
          write_atomic(dir / "samples.csv", samples_csv(*set));
        }
        fill_sample_stats(summary, values);
        if (values.empty()) throw TooFewSamples("no C* samples were produced");
        const LimitLaw law = limit_law_for(cfg);
        const EmpiricalSample sample(values);
        summary.ks_vs_limit = KsRecord{limit_name(law), ks_distance(sample, limit_cdf(law))};
        summary.fits = all_fits(values, cfg, log);
        if (cfg.command == Command::verify) {
          summary.verification = Verification{cfg.tolerance, summary.ks_vs_limit->statistic <= cfg.tolerance};
          if (!summary.verification->passed) exit_code = 1;
          log << "verify: KS " << format_real(summary.ks_vs_limit->statistic) << " vs " << summary.ks_vs_limit->law
              << (summary.verification->passed ? " <= " : " > ") << cfg.tolerance << '\n';
        }
        write_plot_if_possible(values, law, plotted_fit(summary.fits), dir / "plot_c_star.dat", log);
        if (set && !set->s_star_values.empty()) {
          write_plot_if_possible(set->s_star_values, law, std::nullopt, dir / "plot_s_star.dat", log);
        }
        break;
      }
      case Command::estimate_xi: {
        const auto est = estimate_xi(e.model, cfg.span, e.replications, e.seed);
        summary.xi_hat = est.xi_hat;
        summary.xi_standard_error = est.standard_error;
        summary.diagnostics.discarded_unreachable = est.discarded_unreachable;
        fill_sample_stats(summary, est.ratio_samples);
        std::string csv = "replication,ratio\n";
        for (std::size_t i = 0; i < est.ratio_samples.size(); ++i) {
          csv += std::to_string(i) + ',' + format_real(est.ratio_samples[i]) + '\n';
        }
        write_atomic(dir / "xi_samples.csv", csv);
        break;
      }
      case Command::calibrate: {
        summary.calibration = calibrate_length_intensity(e.model, e.window(), e.replications, e.seed);
        break;
      }
    }
    write_summary_json(summary, dir / "summary.json");

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json manifest = {{"tool", "tess-paths"},
                     {"version", kToolVersion},
                     {"command", command_name(cfg.command)},
                     {"config", run_config_to_json(cfg)},
                     {"seed", e.seed},
                     {"threads", thread_count()},
                     {"substreams", substream_ids(cfg)},
                     {"started_unix", std::chrono::duration_cast<std::chrono::seconds>(started.time_since_epoch()).count()},
                     {"wall_clock_seconds", wall},
                     {"diagnostics", diagnostics_to_json(summary.diagnostics)}};
    write_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
    log << command_name(cfg.command) << ": wrote " << (dir / "summary.json").string() << '\n';
    return exit_code;
  } catch (const ConfigInvalid& err) {
    log << "config error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    log << "error: " << err.what() << '\n';
    return 1;
  }
}

}  // namespace tesspath
