#ifndef REM_SIMULATE_HPP
#define REM_SIMULATE_HPP

#include <cstdint>
#include <vector>

#include "rem/model.hpp"
#include "rem/norm.hpp"
#include "rem/stats.hpp"

// Monte Carlo engine for replicas of S_n(beta). Summation is streaming and
// log domain; every draw is a pure function of (seed, replica stream, term
// index), so results are bit-identical across runs and worker counts.

namespace rem {

// Full enumeration only: m = floor(e^n) <= 10^9 (n <= 20).
inline constexpr std::uint64_t kLevelBudget = 1'000'000'000ULL;

struct ReplicaResult {
  double log_s_total = kNegInf;
  double log_s_standard = kNegInf;
  double log_s_shifted = kNegInf;
  std::uint64_t count_standard = 0;
  double max_log_term = kNegInf;
};

enum class Statistic { LLNRatio, CLTNormalized, StableNormalized };

struct ExperimentConfig {
  ModelParams params;
  double beta = 0.0;
  std::vector<int> n_values;
  std::uint64_t replicas = 1;
  std::uint64_t seed = 0;
  Statistic statistic = Statistic::LLNRatio;
  unsigned workers = 1;
};

struct ExperimentRun {
  int n = 0;
  std::uint64_t m = 0;
  Normalization normalization;
  std::vector<double> values;            // normalized statistic per replica
  std::vector<ReplicaResult> replicas;
  Summary summary;
};

struct Shard {
  std::uint64_t id;     // deterministic shard index (counter-stream offset)
  std::uint64_t begin;  // first term, inclusive
  std::uint64_t end;    // past-the-end term
};

// Deterministic block-aligned partition of [0, m). The multiset of drawn
// terms is identical for every worker count.
std::vector<Shard> shard_plan(std::uint64_t m, unsigned workers);

ReplicaResult simulate_replica(const SystemConfig& c, const ModelParams& p,
                               const RngStream& stream, unsigned workers = 1);

std::vector<ExperimentRun> run_experiment(const ExperimentConfig& cfg);

// The normalized statistic for one replica (log-domain, cancellation-safe).
double normalized_statistic(const ReplicaResult& r, Statistic stat,
                            double log_center, double log_scale);

}  // namespace rem

#endif
