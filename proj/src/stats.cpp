#include "gpage/stats.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "gpage/errors.hpp"

namespace gpage {

void MomentAccumulator::add(double x) {
  const double n1 = static_cast<double>(n_);
  ++n_;
  const double n = static_cast<double>(n_);
  const double delta = x - mean_;
  const double delta_n = delta / n;
  const double delta_n2 = delta_n * delta_n;
  const double term1 = delta * delta_n * n1;
  mean_ += delta_n;
  m4_ += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2_ - 4.0 * delta_n * m3_;
  m3_ += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2_;
  m2_ += term1;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  const double d2 = delta * delta;
  const double d3 = d2 * delta;
  const double d4 = d2 * d2;

  const double m2 = m2_ + other.m2_ + d2 * na * nb / n;
  const double m3 = m3_ + other.m3_ + d3 * na * nb * (na - nb) / (n * n) +
                    3.0 * delta * (na * other.m2_ - nb * m2_) / n;
  const double m4 = m4_ + other.m4_ + d4 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                    6.0 * d2 * (na * na * other.m2_ + nb * nb * m2_) / (n * n) +
                    4.0 * delta * (na * other.m3_ - nb * m3_) / n;
  mean_ += delta * nb / n;
  m2_ = m2;
  m3_ = m3;
  m4_ = m4;
  n_ += other.n_;
}

double MomentAccumulator::variance() const {
  return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1);
}

double MomentAccumulator::variance_std_error() const {
  if (n_ < 4) return 0.0;
  const double n = static_cast<double>(n_);
  const double var = variance();
  const double mu4 = m4_ / n;
  const double v = (mu4 - var * var * (n - 3.0) / (n - 1.0)) / n;
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

namespace {

MCEstimate to_estimate(const MomentAccumulator& acc, std::uint64_t seed, unsigned workers) {
  MCEstimate e;
  e.n = acc.count();
  e.mean = acc.mean();
  e.variance = acc.variance();
  e.std_error = std::sqrt(e.variance / static_cast<double>(e.n));
  e.variance_std_error = acc.variance_std_error();
  e.seed = seed;
  e.workers = workers;
  return e;
}

MCPlan normalized(const MCPlan& plan) {
  MCPlan p = plan;
  if (p.workers == 0) p.workers = 1;
  if (p.streams == 0) p.streams = p.workers;
  return p;
}

std::uint64_t stream_begin(const MCPlan& p, unsigned s) {
  // 128-bit safe for the sample counts used here.
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(p.samples) * s) / p.streams);
}

// Runs body(stream_id) for every stream, spreading streams over workers.
template <typename Body>
void for_each_stream(const MCPlan& p, Body&& body) {
  const unsigned threads = std::min(p.workers, p.streams);
  if (threads <= 1) {
    for (unsigned s = 0; s < p.streams; ++s) body(s);
    return;
  }
  std::vector<std::jthread> pool;
  std::vector<std::exception_ptr> errors(threads);
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (unsigned s = t; s < p.streams; s += threads) body(s);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  pool.clear();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

MCEstimate mc_estimate(const Sampler& sampler, const MCPlan& plan) {
  if (plan.samples < 2) throw InvalidArgument("mc_estimate: need at least two samples");
  const MCPlan p = normalized(plan);
  std::vector<MomentAccumulator> parts(p.streams);
  for_each_stream(p, [&](unsigned s) {
    RngStream rng(p.seed, s);
    const std::uint64_t count = stream_begin(p, s + 1) - stream_begin(p, s);
    MomentAccumulator acc;
    for (std::uint64_t k = 0; k < count; ++k) acc.add(sampler(rng));
    parts[s] = acc;
  });
  MomentAccumulator total;
  for (const auto& part : parts) total.merge(part);
  return to_estimate(total, p.seed, p.workers);
}

MCEstimate mc_estimate(const Sampler& sampler, std::uint64_t n, std::uint64_t seed,
                       unsigned workers) {
  return mc_estimate(sampler, MCPlan{n, seed, workers, 0});
}

std::vector<double> mc_samples(const Sampler& sampler, const MCPlan& plan) {
  if (plan.samples < 1) throw InvalidArgument("mc_samples: need at least one sample");
  const MCPlan p = normalized(plan);
  std::vector<double> out(p.samples);
  for_each_stream(p, [&](unsigned s) {
    RngStream rng(p.seed, s);
    for (std::uint64_t k = stream_begin(p, s); k < stream_begin(p, s + 1); ++k)
      out[k] = sampler(rng);
  });
  return out;
}

MCEstimate summarize(std::span<const double> samples, std::uint64_t seed, unsigned workers) {
  if (samples.size() < 2) throw InvalidArgument("summarize: need at least two samples");
  MomentAccumulator acc;
  for (double x : samples) acc.add(x);
  return to_estimate(acc, seed, workers);
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("ks_statistic: samples must be non-empty");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == x) ++i;
    while (j < sb.size() && sb[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InvalidArgument("ks_statistic: samples must be non-empty");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const double f = cdf(sorted[k]);
    d = std::max({d, static_cast<double>(k + 1) / n - f, f - static_cast<double>(k) / n});
  }
  return d;
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0 || !(alpha > 0.0 && alpha < 1.0))
    throw InvalidArgument("ks_critical_value: bad arguments");
  return std::sqrt(-0.5 * std::log(0.5 * alpha) / static_cast<double>(n));
}

double ks_critical_value(std::size_t n, std::size_t m, double alpha) {
  if (n == 0 || m == 0 || !(alpha > 0.0 && alpha < 1.0))
    throw InvalidArgument("ks_critical_value: bad arguments");
  const double c = std::sqrt(-0.5 * std::log(0.5 * alpha));
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  return c * std::sqrt((dn + dm) / (dn * dm));
}

Histogram histogram(std::span<const double> samples, std::size_t bins, double lo, double hi) {
  if (bins < 1) throw InvalidArgument("histogram: need at least one bin");
  if (!(hi > lo)) throw InvalidArgument("histogram: empty range");
  Histogram h;
  h.edges.resize(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t k = 0; k <= bins; ++k) h.edges[k] = lo + width * static_cast<double>(k);
  h.edges[bins] = hi;
  h.counts.assign(bins, 0);
  for (double x : samples) {
    ++h.total;
    if (x < lo) {
      ++h.underflow;
    } else if (!(x < hi)) {
      ++h.overflow;
    } else {
      auto k = static_cast<std::size_t>((x - lo) / width);
      k = std::min(k, bins - 1);
      // Keep the left-closed rule exact at bin edges.
      if (x < h.edges[k]) --k;
      else if (k + 1 < bins && x >= h.edges[k + 1]) ++k;
      ++h.counts[k];
    }
  }
  return h;
}

}  // namespace gpage
