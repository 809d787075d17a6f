#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace tesspath {

// Sorted copy of a sample (n >= 1).
class EmpiricalSample {
public:
  explicit EmpiricalSample(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double mean() const;
  double variance() const;  // unbiased; 0 for n == 1

private:
  std::vector<double> values_;
};

using Cdf = std::function<double(double)>;

// Fraction of values <= x.
double ecdf_eval(const EmpiricalSample& s, double x);

// sup |ECDF - cdf| over both sides of every jump.
double ks_distance(const EmpiricalSample& s, const Cdf& cdf);
double ks_two_sample(const EmpiricalSample& s, const EmpiricalSample& t);

enum class Family { exponential, weibull, truncated_weibull };
const char* family_name(Family f);

// Exponential: F = 1 - exp(-rate x).  Weibull: F = 1 - exp(-a x^b).
// Truncated Weibull: the Weibull law conditioned on (0, tau].
struct FitResult {
  Family family = Family::exponential;
  double rate = 0.0;
  double a = 0.0;
  double b = 0.0;
  double tau = 0.0;
  double loglik = 0.0;
  double ks_statistic = 0.0;

  double cdf(double x) const;
  double pdf(double x) const;

  friend bool operator==(const FitResult&, const FitResult&) = default;
};

// All fits throw NonPositiveValues for an empty sample or values <= 0.
FitResult fit_exponential(std::span<const double> values);
// Free shape: profile likelihood root in b; NoConvergence after 200 steps
// or when no root exists (e.g. a constant sample).
FitResult fit_weibull(std::span<const double> values, std::optional<double> fixed_shape = std::nullopt);
// tau defaults to 1.001 * max.  Throws ValuesExceedTruncation, NoConvergence.
FitResult fit_truncated_weibull(std::span<const double> values, std::optional<double> tau = std::nullopt);

double weibull_loglik(std::span<const double> values, double a, double b);
double truncated_weibull_loglik(std::span<const double> values, double a, double b, double tau);

// Exponential limit with rate 2 lambda_l.
struct SmallKappa {
  double lambda_l = 1.0;
};
// Weibull limit 1 - exp(-(lambda pi / xi^2) r^2).
struct LargeKappa {
  double lambda = 1.0;
  double xi = 1.0;
};
using LimitLaw = std::variant<SmallKappa, LargeKappa>;

Cdf limit_cdf(const LimitLaw& law);
double limit_pdf(const LimitLaw& law, double x);
std::string limit_name(const LimitLaw& law);

struct Curve {
  std::vector<double> x;
  std::vector<double> y;
};

// Gaussian kernel estimate with Silverman bandwidth, reflected at 0, on an
// even grid over [0, 1.1 max].  Throws TooFewSamples for n < 2.
Curve kde(const EmpiricalSample& s, int grid_points = 512);
double silverman_bandwidth(const EmpiricalSample& s);

}  // namespace tesspath
