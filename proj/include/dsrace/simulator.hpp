#pragma once

#include <cstdint>

namespace dsrace {

/// SplitMix64 finalizer (Stafford mix13): a stateless 64-bit avalanche mixer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// SplitMix64 generator: state advances by the golden gamma and is mixed on
/// output. Small, fast, and trivially seedable per stream.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53 significant bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Stream seed for one trial, derived from (seed, shard, trial) by mixing.
/// The derivation is position-based, so results never depend on scheduling.
inline std::uint64_t trial_stream_seed(std::uint64_t seed, std::uint64_t shard,
                                       std::uint64_t trial) {
  return mix64(mix64(seed ^ 0xA0761D6478BD642Full * (shard + 1)) ^
               0xE7037ED1A0B428DBull * (trial + 1));
}

struct SimConfig {
  double q = 0.0;
  long n = 0;
  long trials = 0;
  std::uint64_t seed = 0;
  long max_deficit = 0;  // 0 selects default_max_deficit(q)
};

/// Aggregate Monte Carlo result. Duration statistics are conditional on
/// success; they are NaN when no trial succeeded. The std-error fields are
/// the usual large-sample estimates (the variance one needs the fourth
/// central moment, which is tracked during the run).
struct SimOutcome {
  long successes = 0;
  long trials = 0;
  double success_rate = 0.0;
  double rate_std_err = 0.0;
  double duration_mean = 0.0;
  double duration_second_moment = 0.0;
  double duration_variance = 0.0;
  double duration_mean_std_err = 0.0;
  double duration_variance_std_err = 0.0;
  std::uint64_t seed = 0;
  long shards = 1;
  long max_deficit = 0;
};

/// Smallest deficit D with (q/(1-q))^D < 1e-12, capped at 2000: a race
/// abandoned there carries truncation bias far below Monte Carlo noise.
long default_max_deficit(double q);

struct TrialResult {
  long phase1_attacker_score = 0;
  bool success = false;
  long phase2_steps = 0;
};

/// One full race, deterministic in (seed, shard, trial). Phase I plays
/// goal-by-goal Bernoulli(q) until the honest side reaches n; a Phase-I
/// attacker score >= n wins immediately with zero Phase-II duration.
/// Otherwise Phase II walks the deficit by +-1 until it hits 0 (success) or
/// max_deficit (hopeless, failure), counting every step.
TrialResult run_trial(double q, long n, long max_deficit, std::uint64_t seed, long shard,
                      long trial);

/// `trials` independent races on a single stream family (shard 0).
SimOutcome run_race(const SimConfig& config);

/// Same, with trials split across `shards` independent substreams that may
/// execute concurrently. Merging is done in shard order, so a fixed
/// (seed, shards) pair reproduces bit-identically regardless of scheduling.
SimOutcome run_race_sharded(const SimConfig& config, long shards);

}  // namespace dsrace
