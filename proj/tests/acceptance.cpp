// End-to-end acceptance checks.  Prints one PASS/FAIL line per criterion
// and exits non-zero when any criterion fails.  Criterion numbers given on
// the command line restrict the run to those criteria.

#include "oracles.hpp"

#include "tesspath/delaunay.hpp"
#include "tesspath/errors.hpp"
#include "tesspath/estimators.hpp"
#include "tesspath/path_graph.hpp"
#include "tesspath/point_process.hpp"
#include "tesspath/runner.hpp"
#include "tesspath/stats.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

using namespace tesspath;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double ks_to(const std::vector<double>& v, const Cdf& cdf) { return ks_distance(EmpiricalSample(v), cdf); }

Cdf weibull_pi() {
  return [](double r) { return r <= 0 ? 0.0 : -std::expm1(-std::numbers::pi * r * r); };
}

fs::path work_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("tesspath_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string sha256_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) throw IoError("sha256 failed");
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", md[i]);
    hex += byte;
  }
  return hex;
}

int run_cli(const std::string& args, const std::string& threads, const fs::path& log) {
  const std::string cmd =
      "TESS_PATHS_THREADS=" + threads + " " + TESS_PATHS_BIN + " " + args + " >" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ExperimentConfig experiment(TessellationModel m, double lambda_l, double side, std::optional<double> guard, int reps,
                            std::uint64_t seed) {
  ExperimentConfig c;
  c.model = std::move(m);
  c.lambda_l = lambda_l;
  c.window_side = side;
  c.guard = guard;
  c.replications = reps;
  c.seed = seed;
  return c;
}

// C* samples, drawing further batches under fresh seeds until at least n
// values are pooled.
std::vector<double> c_star_at_least(ExperimentConfig cfg, std::size_t n) {
  std::vector<double> out;
  for (int round = 0; out.size() < n && round < 50; ++round, cfg.seed += 1000003) {
    const auto set = sample_typical_shortest_path(cfg);
    out.insert(out.end(), set.values.begin(), set.values.end());
  }
  return out;
}

Outcome criterion_1() {
  Outcome o{true, ""};
  for (auto m : {TessellationModel::plt(0.05), TessellationModel::pvt(0.05)}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto v = c_star_at_least(experiment(m, 1.0, 200.0, std::nullopt, 5, 101), 5000);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double ks = ks_to(v, limit_cdf(SmallKappa{1.0}));
    const bool ok = v.size() >= 5000 && ks <= 0.05 && secs < 120;
    o.pass = o.pass && ok;
    o.detail += m.name() + ": n=" + std::to_string(v.size()) + " KS=" + fmt("%.4f", ks) + " (" +
                fmt("%.1f", secs) + "s)  ";
  }
  return o;
}

// Criteria 2, 5 and 11 share one pair of command-line runs.
struct LargeKappaRuns {
  bool ran = false;
  int exit_1 = -1, exit_4 = -1;
  std::string hash_1, hash_4;
  std::vector<double> c_star, euclid;
  double seconds = 0.0;
};

const LargeKappaRuns& large_kappa_runs() {
  static LargeKappaRuns runs;
  if (runs.ran) return runs;
  runs.ran = true;
  const fs::path dir = work_dir() / "plt40";
  fs::create_directories(dir);
  const json cfg{{"command", "simulate"},
                 {"model", {{"type", "plt"}, {"gamma", 40.0}}},
                 {"lambda_l", 0.025},
                 {"window", {{"side", 24.0}}},
                 {"guard", 3.0},
                 {"replications", 20},
                 {"seed", 7}};
  std::ofstream(dir / "config.json") << cfg.dump(2);
  const std::string base = "simulate --config " + (dir / "config.json").string() + " --seed 7 --out ";
  const auto t0 = std::chrono::steady_clock::now();
  runs.exit_1 = run_cli(base + (dir / "t1").string(), "1", dir / "t1.log");
  runs.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  runs.exit_4 = run_cli(base + (dir / "t4").string(), "4", dir / "t4.log");
  if (runs.exit_1 == 0 && runs.exit_4 == 0) {
    runs.hash_1 = sha256_file(dir / "t1" / "samples.csv");
    runs.hash_4 = sha256_file(dir / "t4" / "samples.csv");
    runs.c_star = read_samples_column(dir / "t1" / "samples.csv", "c_star");
    runs.euclid = read_samples_column(dir / "t1" / "samples.csv", "euclid");
  }
  return runs;
}

Outcome criterion_2() {
  const auto& r = large_kappa_runs();
  if (r.exit_1 != 0) return {false, "simulate exited with " + std::to_string(r.exit_1)};
  const double ks = ks_to(r.c_star, weibull_pi());
  const double xi = std::sqrt(std::numbers::pi / fit_weibull(r.c_star, 2.0).a);
  return {r.c_star.size() >= 5000 && ks <= 0.05 && r.seconds < 600,
          "plt(40), lambda_l=0.025: n=" + std::to_string(r.c_star.size()) + " KS=" + fmt("%.4f", ks) +
              " (fitted xi " + fmt("%.3f", xi) + ", " + fmt("%.1f", r.seconds) + "s)"};
}

Outcome criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cfg = experiment(TessellationModel::pvt(40.0), 0.025, 24.0, 3.0, 20, 7);
  const auto set = sample_typical_shortest_path(cfg);
  const auto fit = fit_weibull(set.values, 2.0);
  const double xi_fit = std::sqrt(cfg.lambda() * std::numbers::pi / fit.a);
  const auto est = estimate_xi(TessellationModel::pvt(1.0), 200.0, 100, 11);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto in_band = [](double x) { return x >= 1.10 && x <= 1.20; };
  return {set.values.size() >= 5000 && in_band(xi_fit) && in_band(est.xi_hat) && secs < 900,
          "fit: n=" + std::to_string(set.values.size()) + " xi=" + fmt("%.4f", xi_fit) +
              "; transect: xi=" + fmt("%.4f", est.xi_hat) + " +- " + fmt("%.4f", est.standard_error) + " (" +
              fmt("%.1f", secs) + "s)"};
}

Outcome criterion_4() {
  const auto est = estimate_xi(TessellationModel::pdt(1.0), 200.0, 100, 13);
  return {est.xi_hat <= 1.32 && est.xi_hat >= 0.98,
          "pdt(1): xi=" + fmt("%.4f", est.xi_hat) + " +- " + fmt("%.4f", est.standard_error)};
}

Outcome criterion_5() {
  const auto& r = large_kappa_runs();
  if (r.exit_1 != 0) return {false, "simulate exited with " + std::to_string(r.exit_1)};
  const double ks = ks_to(r.euclid, weibull_pi());
  return {ks <= 0.03, "n=" + std::to_string(r.euclid.size()) + " KS=" + fmt("%.4f", ks)};
}

const std::vector<TransectSample>& transects() {
  static const std::vector<TransectSample> t = [] {
    std::vector<TransectSample> out;
    std::uint64_t seed = 17;
    for (auto m : {TessellationModel::plt(1), TessellationModel::pvt(1), TessellationModel::pdt(1)}) {
      out.push_back(sample_transect(m, 200.0, 50, seed++));
    }
    return out;
  }();
  return t;
}

const char* kTransectNames[] = {"plt", "pvt", "pdt"};

Outcome criterion_6() {
  Outcome o{true, ""};
  const double target = 2.0 / std::numbers::pi;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& t = transects()[i];
    const double rel = std::abs(t.intensity() - target) / target;
    o.pass = o.pass && t.total_span >= 1e4 && rel <= 0.03;
    o.detail += std::string(kTransectNames[i]) + ": " + fmt("%.4f", t.intensity()) + "  ";
  }
  return o;
}

Outcome criterion_7() {
  Outcome o{true, ""};
  const Cdf law = [](double a) { return a <= 0 ? 0.0 : a >= std::numbers::pi ? 1.0 : (1 - std::cos(a)) / 2; };
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& t = transects()[i];
    const double ks = ks_to(t.angles, law);
    o.pass = o.pass && t.angles.size() >= 5000 && ks <= 0.03;
    o.detail += std::string(kTransectNames[i]) + ": n=" + std::to_string(t.angles.size()) + " KS=" +
                fmt("%.4f", ks) + "  ";
  }
  return o;
}

Outcome criterion_8() {
  Outcome o{true, ""};
  const auto half_plt = TessellationModel::plt(0.5), half_pvt = TessellationModel::pvt(0.5);
  const std::vector<TessellationModel> models{TessellationModel::plt(1), TessellationModel::pvt(1),
                                              TessellationModel::pdt(1),
                                              TessellationModel::superposition(half_plt, half_pvt),
                                              TessellationModel::nesting(half_pvt, half_plt)};
  std::uint64_t seed = 23;
  for (const auto& m : models) {
    const auto c = calibrate_length_intensity(m, Window::square(100), 200, seed++);
    o.pass = o.pass && c.mean >= 0.98 && c.mean <= 1.02;
    o.detail += m.name() + "=" + fmt("%.4f", c.mean) + "  ";
  }
  return o;
}

Outcome criterion_9() {
  const auto ca = experiment(TessellationModel::plt(2.0), 1.0, 30.0, std::nullopt, 4, 31);
  const auto cb = experiment(TessellationModel::plt(1.0), 0.5, 60.0, std::nullopt, 4, 37);
  auto a = c_star_at_least(ca, 5000);
  auto b = c_star_at_least(cb, 5000);
  if (a.size() < 5000 || b.size() < 5000) return {false, "not enough samples"};
  a.resize(5000);
  b.resize(5000);
  for (double& x : a) x *= ca.lambda_l;
  for (double& x : b) x *= cb.lambda_l;
  const double ks = ks_two_sample(EmpiricalSample(a), EmpiricalSample(b));
  return {ks <= 0.05, "n=5000 each, two-sample KS=" + fmt("%.4f", ks)};
}

Outcome criterion_10() {
  Stream rng(41);
  long graph_mismatch = 0, knn_mismatch = 0, delaunay_mismatch = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 49);
    PathGraph g;
    std::vector<std::vector<double>> dense(n, std::vector<double>(n, oracle::inf));
    std::vector<std::vector<Arc>> rows(n);
    for (int i = 0; i < n; ++i) {
      g.nodes.push_back({rng.uniform(), rng.uniform()});
      dense[i][i] = 0.0;
      for (int j = 0; j < i; ++j) {
        if (rng.uniform() >= 0.1) continue;
        const double len = rng.uniform(0.0, 3.0);
        rows[i].push_back({j, len});
        rows[j].push_back({i, len});
        dense[i][j] = dense[j][i] = std::min(dense[i][j], len);
      }
    }
    g.arc_start.push_back(0);
    for (auto& r : rows) {
      g.arc_list.insert(g.arc_list.end(), r.begin(), r.end());
      g.arc_start.push_back(static_cast<int>(g.arc_list.size()));
    }
    g.component.assign(n, 0);
    // Bellman-Ford style relaxation to a fixed point.
    for (bool changed = true; changed;) {
      changed = false;
      for (int s = 0; s < n; ++s)
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v) {
            if (dense[s][u] + dense[u][v] < dense[s][v]) {
              dense[s][v] = dense[s][u] + dense[u][v];
              changed = true;
            }
          }
    }
    for (int s = 0; s < n; ++s) {
      const auto d = shortest_path_lengths(g, s);
      for (int t = 0; t < n; ++t) {
        const bool ok = std::isinf(dense[s][t]) ? std::isinf(d[t]) : std::abs(d[t] - dense[s][t]) <= 1e-9;
        graph_mismatch += !ok;
      }
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    PointPattern pat;
    const int n = 1 + static_cast<int>(rng() % 300);
    for (int i = 0; i < n; ++i) pat.points.push_back({rng.uniform(0, 10), rng.uniform(0, 10)});
    const Point2 q{rng.uniform(-2, 12), rng.uniform(-2, 12)};
    std::vector<std::pair<double, Point2>> scan;
    for (auto p : pat.points) scan.push_back({distance(q, p), p});
    std::sort(scan.begin(), scan.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first < b.first : lex_less(a.second, b.second);
    });
    for (int k = 1; k <= std::min(n, 5); ++k) {
      const auto nb = kth_nearest(q, pat, k);
      knn_mismatch += !(nb.point == scan[k - 1].second && nb.distance == scan[k - 1].first);
    }
  }
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point2> pts(50);
    for (auto& p : pts) p = {rng.uniform(), rng.uniform()};
    std::set<std::array<int, 3>> brute, got;
    for (int i = 0; i < 50; ++i)
      for (int j = i + 1; j < 50; ++j)
        for (int k = j + 1; k < 50; ++k) {
          Point2 a = pts[i], b = pts[j], c = pts[k];
          if (orient(a, b, c) == 0) continue;
          if (orient(a, b, c) < 0) std::swap(b, c);
          bool empty = true;
          for (int m = 0; m < 50 && empty; ++m) {
            if (m != i && m != j && m != k && incircle(a, b, c, pts[m]) > 0) empty = false;
          }
          if (empty) brute.insert({i, j, k});
        }
    for (auto t : delaunay_triangulate(pts).triangles) {
      std::sort(t.begin(), t.end());
      got.insert(t);
    }
    delaunay_mismatch += got != brute;
  }
  return {graph_mismatch == 0 && knn_mismatch == 0 && delaunay_mismatch == 0,
          "path mismatches=" + std::to_string(graph_mismatch) + " knn mismatches=" + std::to_string(knn_mismatch) +
              " delaunay mismatches=" + std::to_string(delaunay_mismatch)};
}

Outcome criterion_11() {
  const auto& r = large_kappa_runs();
  if (r.exit_1 != 0 || r.exit_4 != 0) return {false, "simulate failed"};
  return {r.hash_1 == r.hash_4, "threads 1: " + r.hash_1.substr(0, 16) + "  threads 4: " + r.hash_4.substr(0, 16)};
}

Outcome criterion_12() {
  const double g = std::sqrt(10.0);
  const auto v = c_star_at_least(experiment(TessellationModel::pvt(g), 1.0 / g, 30.0, std::nullopt, 10, 43), 5000);
  const auto fit = fit_truncated_weibull(v);
  return {fit.ks_statistic <= 0.05, "n=" + std::to_string(v.size()) + " a=" + fmt("%.4f", fit.a) +
                                        " b=" + fmt("%.4f", fit.b) + " KS=" + fmt("%.4f", fit.ks_statistic)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{criterion_1, criterion_2,  criterion_3,  criterion_4,
                                                       criterion_5, criterion_6,  criterion_7,  criterion_8,
                                                       criterion_9, criterion_10, criterion_11, criterion_12};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %2d: %s  %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  fs::remove_all(work_dir());
  return failed == 0 ? 0 : 1;
}
