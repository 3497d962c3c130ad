#include "dsrace/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>
#include <vector>

#include "dsrace/kernel.hpp"

namespace dsrace {

namespace {

void check_config(const SimConfig& cfg) {
  if (!(cfg.q > 0.0 && cfg.q < 0.5)) {
    throw std::domain_error("q must satisfy 0 < q < 1/2");
  }
  if (cfg.n < 0) throw std::domain_error("n must be >= 0");
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.max_deficit < 0) throw std::invalid_argument("max_deficit must be >= 0");
}

struct ShardTotals {
  long successes = 0;
  StableSum dur1, dur2, dur3, dur4;
};

ShardTotals run_shard(const SimConfig& cfg, long max_deficit, long shard, long count) {
  ShardTotals t;
  for (long i = 0; i < count; ++i) {
    const TrialResult r = run_trial(cfg.q, cfg.n, max_deficit, cfg.seed, shard, i);
    if (!r.success) continue;
    ++t.successes;
    const double d = static_cast<double>(r.phase2_steps);
    const double d2 = d * d;
    t.dur1.add(d);
    t.dur2.add(d2);
    t.dur3.add(d2 * d);
    t.dur4.add(d2 * d2);
  }
  return t;
}

}  // namespace

long default_max_deficit(double q) {
  if (!(q > 0.0 && q < 0.5)) {
    throw std::domain_error("q must satisfy 0 < q < 1/2");
  }
  const double rho = q / (1.0 - q);
  double p = rho;
  long d = 1;
  while (p >= 1e-12 && d < 2000) {
    p *= rho;
    ++d;
  }
  return d;
}

TrialResult run_trial(double q, long n, long max_deficit, std::uint64_t seed, long shard,
                      long trial) {
  SplitMix64 rng(trial_stream_seed(seed, static_cast<std::uint64_t>(shard),
                                   static_cast<std::uint64_t>(trial)));
  long honest = 0;
  long attacker = 0;
  while (honest < n) {
    if (rng.next_unit() < q) {
      ++attacker;
    } else {
      ++honest;
    }
  }
  if (attacker >= n) return {attacker, true, 0};

  long deficit = n - attacker;
  long steps = 0;
  while (deficit > 0 && deficit < max_deficit) {
    if (rng.next_unit() < q) {
      --deficit;
    } else {
      ++deficit;
    }
    ++steps;
  }
  return {attacker, deficit == 0, steps};
}

SimOutcome run_race(const SimConfig& config) { return run_race_sharded(config, 1); }

SimOutcome run_race_sharded(const SimConfig& config, long shards) {
  check_config(config);
  if (shards < 1) throw std::invalid_argument("shards must be >= 1");
  const long max_deficit =
      config.max_deficit > 0 ? config.max_deficit : default_max_deficit(config.q);

  // Trials are dealt round-robin-free: shard i gets an equal slice plus one
  // of the remainder. Each shard draws from its own (seed, shard, trial)
  // streams, so shards can run on any thread in any order.
  std::vector<long> counts(static_cast<size_t>(shards));
  const long base = config.trials / shards;
  const long rem = config.trials % shards;
  for (long i = 0; i < shards; ++i) counts[static_cast<size_t>(i)] = base + (i < rem ? 1 : 0);

  std::vector<ShardTotals> totals(static_cast<size_t>(shards));
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (shards == 1 || hw == 1) {
    for (long i = 0; i < shards; ++i) {
      totals[static_cast<size_t>(i)] = run_shard(config, max_deficit, i, counts[static_cast<size_t>(i)]);
    }
  } else {
    std::vector<std::future<ShardTotals>> futures;
    futures.reserve(static_cast<size_t>(shards));
    for (long i = 0; i < shards; ++i) {
      futures.push_back(std::async(std::launch::async, run_shard, std::cref(config),
                                   max_deficit, i, counts[static_cast<size_t>(i)]));
    }
    for (long i = 0; i < shards; ++i) totals[static_cast<size_t>(i)] = futures[static_cast<size_t>(i)].get();
  }

  // Merge in shard order; addition order is fixed, so the result is
  // reproducible run-to-run.
  long successes = 0;
  StableSum s1, s2, s3, s4;
  for (const ShardTotals& t : totals) {
    successes += t.successes;
    s1.add(t.dur1.value());
    s2.add(t.dur2.value());
    s3.add(t.dur3.value());
    s4.add(t.dur4.value());
  }

  SimOutcome out;
  out.successes = successes;
  out.trials = config.trials;
  out.seed = config.seed;
  out.shards = shards;
  out.max_deficit = max_deficit;
  out.success_rate = static_cast<double>(successes) / static_cast<double>(config.trials);
  out.rate_std_err = std::sqrt(out.success_rate * (1.0 - out.success_rate) /
                               static_cast<double>(config.trials));
  if (successes > 0) {
    const double k = static_cast<double>(successes);
    const double mean = s1.value() / k;
    const double raw2 = s2.value() / k;
    const double raw3 = s3.value() / k;
    const double raw4 = s4.value() / k;
    const double var = raw2 - mean * mean;
    const double m4 = raw4 - 4.0 * mean * raw3 + 6.0 * mean * mean * raw2 -
                      3.0 * mean * mean * mean * mean;
    out.duration_mean = mean;
    out.duration_second_moment = raw2;
    out.duration_variance = var;
    out.duration_mean_std_err = std::sqrt(std::max(var, 0.0) / k);
    out.duration_variance_std_err = std::sqrt(std::max(m4 - var * var, 0.0) / k);
  } else {
    const double nan = std::nan("");
    out.duration_mean = nan;
    out.duration_second_moment = nan;
    out.duration_variance = nan;
    out.duration_mean_std_err = nan;
    out.duration_variance_std_err = nan;
  }
  return out;
}

}  // namespace dsrace
