#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gpage/linalg.hpp"

namespace gpage {

/// Streaming central moments up to fourth order with an associative merge
/// (Welford / Pebay updates).
class MomentAccumulator {
 public:
  void add(double x);
  void merge(const MomentAccumulator& other);

  std::uint64_t count() const { return n_; }
  double mean() const { return mean_; }
  /// Unbiased (n - 1) variance; 0 for fewer than two samples.
  double variance() const;
  /// Standard error of variance() as an estimator of the population variance.
  double variance_std_error() const;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

struct MCEstimate {
  double mean = 0.0;
  double variance = 0.0;
  double std_error = 0.0;           // sqrt(variance / n)
  double variance_std_error = 0.0;  // uncertainty of `variance`
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Draws one real value from a stream.
using Sampler = std::function<double(RngStream&)>;

/// How n samples are split across RNG streams and threads. Stream s owns
/// samples [s * n / streams, (s + 1) * n / streams) and is drawn from
/// RngStream(seed, s). Results are merged in stream order, so for a fixed
/// stream count the output does not depend on the number of workers.
struct MCPlan {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  unsigned streams = 0;  // 0: one stream per worker
};

/// Monte Carlo mean and variance of `sampler`. Throws InvalidArgument for
/// fewer than two samples.
MCEstimate mc_estimate(const Sampler& sampler, const MCPlan& plan);
MCEstimate mc_estimate(const Sampler& sampler, std::uint64_t n, std::uint64_t seed,
                       unsigned workers);

/// Same partitioning as mc_estimate, returning the raw draws in stream order.
std::vector<double> mc_samples(const Sampler& sampler, const MCPlan& plan);

/// Moments of an existing sample.
MCEstimate summarize(std::span<const double> samples, std::uint64_t seed = 0,
                     unsigned workers = 1);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// One-sample statistic sup |F_n - F| against a continuous CDF.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Asymptotic two-sample critical value c(alpha) sqrt((n + m) / (n m)),
/// c(alpha) = sqrt(-log(alpha / 2) / 2); c(0.01) = 1.628.
double ks_critical_value(std::size_t n, std::size_t m, double alpha);

/// One-sample critical value c(alpha) / sqrt(n).
double ks_critical_value(std::size_t n, double alpha);

struct Histogram {
  std::vector<double> edges;  // bins + 1 sorted edges
  std::vector<std::uint64_t> counts;
  std::uint64_t underflow = 0;
  std::uint64_t overflow = 0;  // includes NaN
  std::uint64_t total = 0;
};

/// Fixed-width bins [lo + k w, lo + (k+1) w), left-closed.
Histogram histogram(std::span<const double> samples, std::size_t bins, double lo, double hi);

}  // namespace gpage
