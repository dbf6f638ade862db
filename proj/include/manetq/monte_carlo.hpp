#pragma once

/**
 * @file monte_carlo.hpp
 * @brief Seeded Monte Carlo estimator for every quality parameter.
 *
 * Trial t draws its nodes from Xoshiro256ss::for_trial(seed, t) (see
 * rng.hpp). Trials are grouped in fixed chunks of kChunkTrials; per-chunk
 * statistics are merged in chunk order, so the estimates depend only on
 * the configuration and never on the number of worker threads.
 */

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "manetq/errors.hpp"
#include "manetq/metric.hpp"
#include "manetq/params.hpp"
#include "manetq/rng.hpp"
#include "manetq/varying.hpp"

namespace manetq {

enum class Boundary { Periodic, Disconnected };

// Sorted node positions in [0,1) and the n circular next-neighbour gaps:
// gaps[i] = x[i+1] - x[i] for i < n-1, gaps[n-1] = x[0] + 1 - x[n-1].
struct Sample {
  std::vector<double> positions;
  std::vector<double> gaps;

  static Sample from_gaps(std::vector<double> gaps, double first_position = 0.0) {
    Sample s;
    s.positions.reserve(gaps.size());
    double x = first_position;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      s.positions.push_back(x);
      x += gaps[i];
    }
    s.gaps = std::move(gaps);
    return s;
  }
};

template <class Rng>
Sample sample_gaps(std::uint64_t n, Rng& rng) {
  if (n < 1) throw InvalidParameter("need at least one node");
  Sample s;
  s.positions.resize(n);
  for (auto& x : s.positions) x = rng.uniform();
  std::sort(s.positions.begin(), s.positions.end());
  s.gaps.resize(n);
  for (std::size_t i = 0; i + 1 < n; ++i) s.gaps[i] = s.positions[i + 1] - s.positions[i];
  s.gaps[n - 1] = s.positions[0] + 1.0 - s.positions[n - 1];
  return s;
}

struct TrialOutcome {
  std::uint64_t disconnect_count = 0;  // k
  bool connected = false;
  bool covered = false;  // every relevant gap < 2 rho
  double coverage = 0;
  double segmentation = 0;
  double vulnerability = 0;
  double reachability = 0;
  std::uint64_t active_count = 0;  // n'
};

struct EvalOptions {
  bool coverage_clip = false;
};

namespace detail {

inline double reach_from_sizes(std::span<const std::uint64_t> sizes, std::uint64_t n) {
  double acc = 0;
  for (auto b : sizes) acc += static_cast<double>(b) * static_cast<double>(b - 1);
  const double nd = static_cast<double>(n);
  return acc / (nd * nd);
}

}  // namespace detail

inline TrialOutcome eval_trial(const Sample& sample, double rho, Boundary boundary, const EvalOptions& opts = {}) {
  const auto& g = sample.gaps;
  const std::size_t n = g.size();
  if (n == 0) throw InvalidParameter("empty sample");
  const bool periodic = boundary == Boundary::Periodic;
  // Gaps that can break a link: all n on the circle, the n-1 interior ones on the line.
  const std::size_t links = periodic ? n : n - 1;

  TrialOutcome out;
  out.active_count = n;

  std::vector<std::size_t> cuts;
  bool covered = true;
  for (std::size_t i = 0; i < links; ++i) {
    if (g[i] >= rho) cuts.push_back(i);
    if (g[i] >= 2 * rho) covered = false;
  }
  out.disconnect_count = cuts.size();
  out.connected = cuts.empty();
  out.covered = covered;
  out.segmentation = static_cast<double>(cuts.size()) / static_cast<double>(n);

  double uncovered = 0;
  if (opts.coverage_clip) {
    for (std::size_t i = 0; i + 1 < n; ++i) uncovered += std::max(0.0, g[i] - 2 * rho);
    uncovered += std::max(0.0, sample.positions.front() - rho);
    uncovered += std::max(0.0, 1.0 - sample.positions.back() - rho);
  } else {
    for (double y : g) uncovered += std::max(0.0, y - 2 * rho);
  }
  out.coverage = std::clamp(1.0 - uncovered, 0.0, 1.0);

  std::size_t important = 0;
  if (n >= 2) {
    auto is_important = [&](double left, double right) {
      return left < rho && right < rho && left + right >= rho;
    };
    if (periodic) {
      for (std::size_t j = 0; j < n; ++j)
        if (is_important(g[(j + n - 1) % n], g[j])) ++important;
    } else {
      for (std::size_t j = 1; j + 1 < n; ++j)
        if (is_important(g[j - 1], g[j])) ++important;
    }
  }
  out.vulnerability = static_cast<double>(important) / static_cast<double>(n);

  if (out.connected) {
    out.reachability = 1.0;
  } else {
    // Node i+1 starts a new segment after a cut at gap i.
    std::vector<std::uint64_t> sizes;
    sizes.reserve(cuts.size() + 1);
    if (periodic) {
      for (std::size_t c = 0; c + 1 < cuts.size(); ++c) sizes.push_back(cuts[c + 1] - cuts[c]);
      sizes.push_back(cuts.front() + n - cuts.back());
    } else {
      sizes.push_back(cuts.front() + 1);
      for (std::size_t c = 0; c + 1 < cuts.size(); ++c) sizes.push_back(cuts[c + 1] - cuts[c]);
      sizes.push_back(n - 1 - cuts.back());
    }
    out.reachability = detail::reach_from_sizes(sizes, n);
  }
  return out;
}

inline TrialOutcome eval_trial(std::span<const double> gaps, double rho, Boundary boundary) {
  return eval_trial(Sample::from_gaps(std::vector<double>(gaps.begin(), gaps.end())), rho, boundary);
}

struct TrialConfig {
  SystemParams params;
  Boundary boundary = Boundary::Periodic;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::optional<OnProbability> on_probability = std::nullopt;  // varying-node mode
  bool coverage_clip = false;
  std::uint64_t max_disc_k = 3;  // Disconnection(k) estimated for k = 0..max_disc_k
  unsigned threads = 0;          // 0: hardware concurrency; never affects results
};

struct Estimate {
  double mean = 0;
  double std_error = 0;  // sample standard deviation / sqrt(trials)
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kChunkTrials = 4096;

/// Metrics estimated by run(), in output order.
inline std::vector<MetricKind> simulated_metrics(std::uint64_t max_disc_k) {
  std::vector<MetricKind> m = {MetricKind::connectedness(), MetricKind::coveredness(),   MetricKind::coverage(),
                               MetricKind::segmentation(),  MetricKind::vulnerability(), MetricKind::reachability()};
  for (std::uint64_t k = 0; k <= max_disc_k; ++k) m.push_back(MetricKind::disconnection(k));
  return m;
}

namespace detail {

struct Moments {
  double count = 0;
  double mean = 0;
  double m2 = 0;

  void add(double x) {
    count += 1;
    const double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    const double total = count + o.count;
    const double d = o.mean - mean;
    mean += d * o.count / total;
    m2 += o.m2 + d * d * count * o.count / total;
    count = total;
  }
};

// Outcome when fewer than two nodes are active in varying-node mode.
inline TrialOutcome small_network_outcome(std::uint64_t active, double rho) {
  TrialOutcome out;
  out.active_count = active;
  if (active == 1) {
    out.disconnect_count = 1;
    out.segmentation = 1;
    out.coverage = std::min(1.0, 2 * rho);
  }
  return out;
}

inline void record(const TrialOutcome& o, std::span<Moments> m, std::uint64_t max_disc_k) {
  const bool any = o.active_count > 0;
  m[0].add(o.connected ? 1.0 : 0.0);
  m[1].add(o.covered ? 1.0 : 0.0);
  m[2].add(o.coverage);
  m[3].add(o.segmentation);
  m[4].add(o.vulnerability);
  m[5].add(o.reachability);
  for (std::uint64_t k = 0; k <= max_disc_k; ++k) m[6 + k].add(any && o.disconnect_count == k ? 1.0 : 0.0);
}

}  // namespace detail

/// Draws one trial's configuration and evaluates it.
inline TrialOutcome simulate_trial(const TrialConfig& config, std::uint64_t trial) {
  auto rng = Xoshiro256ss::for_trial(config.seed, trial);
  const double rho = config.params.rho().to_double();
  std::uint64_t active = config.params.n();
  const bool varying = config.on_probability.has_value();
  if (varying) {
    const double p = config.on_probability->value().to_double();
    active = 0;
    for (std::uint64_t i = 0; i < config.params.n(); ++i)
      if (rng.uniform() < p) ++active;
    if (active < 2) return detail::small_network_outcome(active, rho);
  }
  const Sample s = sample_gaps(active, rng);
  return eval_trial(s, rho, config.boundary, EvalOptions{config.coverage_clip});
}

inline std::map<MetricKind, Estimate> run(const TrialConfig& config) {
  if (config.trials < 1) throw InvalidParameter("need at least one trial");
  const auto metrics = simulated_metrics(config.max_disc_k);
  const std::size_t width = metrics.size();
  const std::uint64_t chunks = (config.trials + kChunkTrials - 1) / kChunkTrials;

  std::vector<detail::Moments> partial(chunks * width);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
      std::span<detail::Moments> slot(partial.data() + c * width, width);
      const std::uint64_t end = std::min(config.trials, (c + 1) * kChunkTrials);
      for (std::uint64_t t = c * kChunkTrials; t < end; ++t)
        detail::record(simulate_trial(config, t), slot, config.max_disc_k);
    }
  };

  unsigned threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  std::map<MetricKind, Estimate> out;
  const double n = static_cast<double>(config.trials);
  for (std::size_t i = 0; i < width; ++i) {
    detail::Moments total;
    for (std::uint64_t c = 0; c < chunks; ++c) total.merge(partial[c * width + i]);
    const double var = config.trials > 1 ? std::max(0.0, total.m2 / (n - 1)) : 0.0;
    out.emplace(metrics[i], Estimate{total.mean, std::sqrt(var / n), config.trials, config.seed});
  }
  return out;
}

}  // namespace manetq
