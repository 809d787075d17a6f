#include "tesspath/stats.hpp"

#include "tesspath/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace tesspath {

namespace {

constexpr int kMaxIterations = 200;

void check_positive(std::span<const double> values) {
  if (values.empty()) throw NonPositiveValues("empty sample");
  for (double v : values) {
    if (!(v > 0) || !std::isfinite(v)) throw NonPositiveValues("sample contains a value <= 0 or non-finite");
  }
}

double weibull_cdf(double a, double b, double x) { return x <= 0 ? 0.0 : -std::expm1(-a * std::pow(x, b)); }

double ks_of(std::span<const double> values, const FitResult& f) {
  return ks_distance(EmpiricalSample({values.begin(), values.end()}), [&](double x) { return f.cdf(x); });
}

// Shape profile equation on y = x / max(x): increasing in b, root at the MLE.
struct Profile {
  std::vector<double> logs;
  double mean_log = 0.0;

  explicit Profile(std::span<const double> values) {
    const double m = *std::max_element(values.begin(), values.end());
    for (double v : values) logs.push_back(std::log(v / m));
    mean_log = std::accumulate(logs.begin(), logs.end(), 0.0) / static_cast<double>(logs.size());
  }

  // Returns g(b) and g'(b).
  std::pair<double, double> eval(double b) const {
    double s0 = 0, s1 = 0, s2 = 0;
    for (double l : logs) {
      const double w = std::exp(b * l);
      s0 += w;
      s1 += w * l;
      s2 += w * l * l;
    }
    const double r = s1 / s0;
    return {r - 1.0 / b - mean_log, s2 / s0 - r * r + 1.0 / (b * b)};
  }
};

double solve_shape(std::span<const double> values) {
  const Profile prof(values);
  double lo = 1e-3, hi = 1.0;
  if (prof.eval(lo).first >= 0) throw NoConvergence("weibull shape: no sign change below 1e-3");
  int guard = 0;
  while (prof.eval(hi).first <= 0) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 60) throw NoConvergence("weibull shape: profile equation has no root (degenerate sample)");
  }
  double b = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxIterations; ++it) {
    const auto [g, dg] = prof.eval(b);
    if (std::abs(g) < 1e-10) return b;
    if (g < 0) lo = b; else hi = b;
    double next = b - g / dg;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    b = next;
  }
  throw NoConvergence("weibull shape: no convergence after 200 iterations");
}

// Mean truncated-Weibull log-likelihood in (u, v) = (log A, log b) for
// y = x / tau in (0, 1], A = a tau^b, without the constant -log tau.
struct TruncatedObjective {
  std::vector<double> logy;
  double mean_logy = 0.0;

  double value(double u, double v, std::array<double, 2>& grad) const {
    const double A = std::exp(u), b = std::exp(v);
    double s0 = 0, s1 = 0;
    for (double l : logy) {
      const double w = std::exp(b * l);
      s0 += w;
      s1 += w * l;
    }
    const double n = static_cast<double>(logy.size());
    s0 /= n;
    s1 /= n;
    const double em1 = std::expm1(A);
    grad[0] = 1.0 - A * s0 - A / em1;
    grad[1] = 1.0 + b * mean_logy - A * b * s1;
    // log(1 - exp(-A)) = log(expm1(A)) - A
    return u + v + (b - 1.0) * mean_logy - A * s0 - (std::log(em1) - A);
  }
};

}  // namespace

EmpiricalSample::EmpiricalSample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw TooFewSamples("empirical sample needs at least one value");
  std::sort(values_.begin(), values_.end());
}

double EmpiricalSample::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

double EmpiricalSample::variance() const {
  if (values_.size() < 2) return 0.0;
  const double m = mean();
  double ss = 0.0;
  for (double v : values_) ss += (v - m) * (v - m);
  return ss / static_cast<double>(values_.size() - 1);
}

double ecdf_eval(const EmpiricalSample& s, double x) {
  const auto& v = s.values();
  const auto k = std::upper_bound(v.begin(), v.end(), x) - v.begin();
  return static_cast<double>(k) / static_cast<double>(v.size());
}

double ks_distance(const EmpiricalSample& s, const Cdf& cdf) {
  const auto& v = s.values();
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    const double below = static_cast<double>(i) / n;
    const double at = static_cast<double>(j) / n;
    const double left = cdf(std::nextafter(v[i], -std::numeric_limits<double>::infinity()));
    d = std::max({d, std::abs(at - cdf(v[i])), std::abs(below - left)});
    i = j;
  }
  return std::min(d, 1.0);
}

double ks_two_sample(const EmpiricalSample& s, const EmpiricalSample& t) {
  const auto& a = s.values();
  const auto& b = t.values();
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() || j < b.size()) {
    const double x = j >= b.size() || (i < a.size() && a[i] <= b[j]) ? a[i] : b[j];
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::exponential: return "exponential";
    case Family::weibull: return "weibull";
    case Family::truncated_weibull: return "truncated_weibull";
  }
  return "?";
}

double FitResult::cdf(double x) const {
  switch (family) {
    case Family::exponential: return x <= 0 ? 0.0 : -std::expm1(-rate * x);
    case Family::weibull: return weibull_cdf(a, b, x);
    case Family::truncated_weibull:
      if (x >= tau) return 1.0;
      return weibull_cdf(a, b, x) / weibull_cdf(a, b, tau);
  }
  return 0.0;
}

double FitResult::pdf(double x) const {
  if (x <= 0) return 0.0;
  switch (family) {
    case Family::exponential: return rate * std::exp(-rate * x);
    case Family::weibull: return a * b * std::pow(x, b - 1) * std::exp(-a * std::pow(x, b));
    case Family::truncated_weibull:
      if (x > tau) return 0.0;
      return a * b * std::pow(x, b - 1) * std::exp(-a * std::pow(x, b)) / weibull_cdf(a, b, tau);
  }
  return 0.0;
}

FitResult fit_exponential(std::span<const double> values) {
  check_positive(values);
  const double n = static_cast<double>(values.size());
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  FitResult f;
  f.family = Family::exponential;
  f.rate = n / sum;
  f.loglik = n * std::log(f.rate) - f.rate * sum;
  f.ks_statistic = ks_of(values, f);
  return f;
}

double weibull_loglik(std::span<const double> values, double a, double b) {
  double ll = 0.0;
  for (double x : values) ll += std::log(a) + std::log(b) + (b - 1) * std::log(x) - a * std::pow(x, b);
  return ll;
}

double truncated_weibull_loglik(std::span<const double> values, double a, double b, double tau) {
  return weibull_loglik(values, a, b) - static_cast<double>(values.size()) * std::log(weibull_cdf(a, b, tau));
}

FitResult fit_weibull(std::span<const double> values, std::optional<double> fixed_shape) {
  check_positive(values);
  if (fixed_shape && !(*fixed_shape > 0)) throw NonPositiveValues("fixed shape must be > 0");
  const double b = fixed_shape ? *fixed_shape : solve_shape(values);
  const double m = *std::max_element(values.begin(), values.end());
  double s = 0.0;
  for (double x : values) s += std::pow(x / m, b);
  FitResult f;
  f.family = Family::weibull;
  f.b = b;
  f.a = static_cast<double>(values.size()) / s / std::pow(m, b);
  f.loglik = weibull_loglik(values, f.a, f.b);
  f.ks_statistic = ks_of(values, f);
  return f;
}

FitResult fit_truncated_weibull(std::span<const double> values, std::optional<double> tau_opt) {
  check_positive(values);
  const double mx = *std::max_element(values.begin(), values.end());
  const double tau = tau_opt ? *tau_opt : 1.001 * mx;
  if (!(tau > 0)) throw NonPositiveValues("truncation point must be > 0");
  if (mx > tau) throw ValuesExceedTruncation("sample maximum exceeds the truncation point");

  TruncatedObjective obj;
  for (double x : values) obj.logy.push_back(std::log(x / tau));
  obj.mean_logy = std::accumulate(obj.logy.begin(), obj.logy.end(), 0.0) / static_cast<double>(values.size());

  // Start from the untruncated fit, or from the exponential moment estimate.
  double u, v;
  try {
    const FitResult w = fit_weibull(values);
    u = std::log(w.a) + w.b * std::log(tau);
    v = std::log(w.b);
  } catch (const NoConvergence&) {
    const double mean_y = std::accumulate(values.begin(), values.end(), 0.0) / values.size() / tau;
    u = -std::log(mean_y);
    v = 0.0;
  }

  // BFGS on the negated objective.
  std::array<double, 2> g{};
  double fval = -obj.value(u, v, g);
  g = {-g[0], -g[1]};
  std::array<double, 4> H{1, 0, 0, 1};
  bool done = false;
  for (int it = 0; it < 500; ++it) {
    if (std::hypot(g[0], g[1]) < 1e-8) {
      done = true;
      break;
    }
    std::array<double, 2> p{-(H[0] * g[0] + H[1] * g[1]), -(H[2] * g[0] + H[3] * g[1])};
    double slope = p[0] * g[0] + p[1] * g[1];
    if (slope >= 0) {
      H = {1, 0, 0, 1};
      p = {-g[0], -g[1]};
      slope = -(g[0] * g[0] + g[1] * g[1]);
    }
    double step = 1.0;
    const double pn = std::hypot(p[0], p[1]);
    if (pn > 2.0) step = 2.0 / pn;
    std::array<double, 2> g_new{};
    double f_new = 0.0;
    double nu = u, nv = v;
    int ls = 0;
    for (; ls < 60; ++ls) {
      nu = u + step * p[0];
      nv = v + step * p[1];
      f_new = -obj.value(nu, nv, g_new);
      if (std::isfinite(f_new) && f_new <= fval + 1e-4 * step * slope) break;
      step *= 0.5;
    }
    if (ls == 60) break;
    g_new = {-g_new[0], -g_new[1]};
    const std::array<double, 2> s{nu - u, nv - v};
    const std::array<double, 2> y{g_new[0] - g[0], g_new[1] - g[1]};
    const double sy = s[0] * y[0] + s[1] * y[1];
    if (sy > 1e-300) {
      const double rho = 1.0 / sy;
      // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
      const std::array<double, 4> A{1 - rho * s[0] * y[0], -rho * s[0] * y[1], -rho * s[1] * y[0],
                                    1 - rho * s[1] * y[1]};
      const std::array<double, 4> AH{A[0] * H[0] + A[1] * H[2], A[0] * H[1] + A[1] * H[3],
                                     A[2] * H[0] + A[3] * H[2], A[2] * H[1] + A[3] * H[3]};
      H = {AH[0] * A[0] + AH[1] * A[1] + rho * s[0] * s[0], AH[0] * A[2] + AH[1] * A[3] + rho * s[0] * s[1],
           AH[2] * A[0] + AH[3] * A[1] + rho * s[1] * s[0], AH[2] * A[2] + AH[3] * A[3] + rho * s[1] * s[1]};
    }
    u = nu;
    v = nv;
    fval = f_new;
    g = g_new;
  }
  // The line search can stall slightly above 1e-8 once the objective is flat
  // to rounding; anything larger is a genuine failure.
  if (!done && std::hypot(g[0], g[1]) >= 1e-6) throw NoConvergence("truncated weibull: gradient did not vanish");
  FitResult f;
  f.family = Family::truncated_weibull;
  f.b = std::exp(v);
  f.a = std::exp(u) / std::pow(tau, f.b);
  f.tau = tau;
  f.loglik = truncated_weibull_loglik(values, f.a, f.b, tau);
  f.ks_statistic = ks_of(values, f);
  return f;
}

Cdf limit_cdf(const LimitLaw& law) {
  if (const auto* s = std::get_if<SmallKappa>(&law)) {
    const double r = 2.0 * s->lambda_l;
    return [r](double x) { return x <= 0 ? 0.0 : std::clamp(-std::expm1(-r * x), 0.0, 1.0); };
  }
  const auto& l = std::get<LargeKappa>(law);
  const double c = l.lambda * std::numbers::pi / (l.xi * l.xi);
  return [c](double r) { return r <= 0 ? 0.0 : std::clamp(-std::expm1(-c * r * r), 0.0, 1.0); };
}

double limit_pdf(const LimitLaw& law, double x) {
  if (x < 0) return 0.0;
  if (const auto* s = std::get_if<SmallKappa>(&law)) {
    const double r = 2.0 * s->lambda_l;
    return r * std::exp(-r * x);
  }
  const auto& l = std::get<LargeKappa>(law);
  const double c = l.lambda * std::numbers::pi / (l.xi * l.xi);
  return 2.0 * c * x * std::exp(-c * x * x);
}

std::string limit_name(const LimitLaw& law) {
  std::ostringstream os;
  os.precision(17);
  if (const auto* s = std::get_if<SmallKappa>(&law)) {
    os << "exponential(rate=" << 2.0 * s->lambda_l << ")";
  } else {
    const auto& l = std::get<LargeKappa>(law);
    os << "weibull(a=" << l.lambda * std::numbers::pi / (l.xi * l.xi) << ",b=2)";
  }
  return os.str();
}

double silverman_bandwidth(const EmpiricalSample& s) {
  const double n = static_cast<double>(s.size());
  return 1.06 * std::sqrt(s.variance()) * std::pow(n, -0.2);
}

Curve kde(const EmpiricalSample& s, int grid_points) {
  if (s.size() < 2) throw TooFewSamples("kernel density needs at least two values");
  if (grid_points < 2) grid_points = 2;
  const auto& v = s.values();
  const double top = 1.1 * v.back();
  double h = silverman_bandwidth(s);
  if (!(h > 0)) h = top > 0 ? 1e-3 * top : 1e-3;
  const double n = static_cast<double>(v.size());
  const double norm = 1.0 / (n * h * std::sqrt(2.0 * std::numbers::pi));
  Curve c;
  c.x.resize(grid_points);
  c.y.assign(grid_points, 0.0);
  for (int i = 0; i < grid_points; ++i) {
    const double x = top * i / (grid_points - 1);
    c.x[i] = x;
    // Only values within 8 bandwidths contribute measurably.
    const auto lo = std::lower_bound(v.begin(), v.end(), x - 8 * h);
    const auto hi = std::upper_bound(v.begin(), v.end(), x + 8 * h);
    double acc = 0.0;
    for (auto it = lo; it != hi; ++it) {
      const double z = (x - *it) / h;
      acc += std::exp(-0.5 * z * z);
    }
    for (auto it = v.begin(); it != v.end() && *it <= 8 * h - x; ++it) {
      const double z = (x + *it) / h;
      acc += std::exp(-0.5 * z * z);
    }
    c.y[i] = acc * norm;
  }
  return c;
}

}  // namespace tesspath
