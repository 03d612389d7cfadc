#include "rem/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "rem/numerics.hpp"
#include "simulate_kernel.hpp"

namespace rem {

namespace {

// Kahan-compensated accumulator for the cross-block merge.
struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    double y = v - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Merge block accumulators in block order: rescale each partial sum to the
// global maximum, then compensated-sum. Fixed order makes the result
// independent of which worker produced which block.
ReplicaResult merge_blocks(const std::vector<detail::BlockAccum>& blocks,
                           std::uint64_t m) {
  double mx = kNegInf;
  for (const auto& b : blocks) mx = std::max(mx, b.max_log);

  Kahan s_std, s_shift;
  std::uint64_t count_standard = 0;
  for (const auto& b : blocks) {
    double r = std::exp(b.max_log - mx);
    s_std.add(b.sum_standard * r);
    s_shift.add(b.sum_shifted * r);
    count_standard += b.count_standard;
  }
  (void)m;

  ReplicaResult out;
  out.max_log_term = mx;
  out.count_standard = count_standard;
  out.log_s_standard = s_std.sum > 0.0 ? mx + std::log(s_std.sum) : kNegInf;
  out.log_s_shifted = s_shift.sum > 0.0 ? mx + std::log(s_shift.sum) : kNegInf;
  out.log_s_total = mx + std::log(s_std.sum + s_shift.sum);
  return out;
}

}  // namespace

std::vector<Shard> shard_plan(std::uint64_t m, unsigned workers) {
  if (workers < 1) throw InvalidParams("shard_plan: workers must be >= 1");
  const std::uint64_t blocks = (m + detail::kBlockSize - 1) / detail::kBlockSize;
  const std::uint64_t per =
      std::max<std::uint64_t>(1, (blocks + workers - 1) / workers);

  std::vector<Shard> plan;
  std::uint64_t id = 0;
  for (std::uint64_t b = 0; b < blocks; b += per) {
    std::uint64_t begin = b * detail::kBlockSize;
    std::uint64_t end = std::min(m, (b + per) * detail::kBlockSize);
    plan.push_back({id++, begin, end});
  }
  if (plan.empty()) plan.push_back({0, 0, m});
  return plan;
}

ReplicaResult simulate_replica(const SystemConfig& c, const ModelParams& p,
                               const RngStream& stream, unsigned workers) {
  p.validate();
  if (c.m > kLevelBudget)
    throw BudgetExceeded("simulate_replica: m exceeds the 10^9 level budget");

  const std::uint64_t nblocks =
      (c.m + detail::kBlockSize - 1) / detail::kBlockSize;
  std::vector<detail::BlockAccum> blocks(nblocks);

  auto run_range = [&](std::uint64_t b0, std::uint64_t b1) {
    for (std::uint64_t b = b0; b < b1; ++b) {
      std::uint64_t begin = b * detail::kBlockSize;
      std::uint64_t end = std::min(c.m, begin + detail::kBlockSize);
      blocks[b] = detail::accumulate_block(p, c.beta, c.n, stream, begin, end);
    }
  };

  if (workers <= 1 || nblocks <= 1) {
    run_range(0, nblocks);
  } else {
    unsigned nw = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, nblocks));
    std::vector<std::thread> pool;
    pool.reserve(nw);
    std::uint64_t per = (nblocks + nw - 1) / nw;
    for (unsigned w = 0; w < nw; ++w) {
      std::uint64_t b0 = w * per;
      std::uint64_t b1 = std::min<std::uint64_t>(nblocks, b0 + per);
      if (b0 >= b1) break;
      pool.emplace_back(run_range, b0, b1);
    }
    for (auto& t : pool) t.join();
  }

  return merge_blocks(blocks, c.m);
}

double normalized_statistic(const ReplicaResult& r, Statistic stat,
                            double log_center, double log_scale) {
  if (stat == Statistic::LLNRatio)
    return std::exp(r.log_s_total - log_scale);
  if (log_center == kNegInf)
    return std::exp(r.log_s_total - log_scale);
  // (S - center)/scale without cancellation: D = log S - log center,
  // statistic = sign(D) exp(log|e^D - 1| + log center - log scale).
  double d = r.log_s_total - log_center;
  if (d == 0.0) return 0.0;
  double log_abs = std::log(std::abs(std::expm1(d)));
  double v = std::exp(log_abs + log_center - log_scale);
  return d > 0.0 ? v : -v;
}

std::vector<ExperimentRun> run_experiment(const ExperimentConfig& cfg) {
  cfg.params.validate();
  if (cfg.replicas < 1)
    throw InvalidParams("run_experiment: replicas must be >= 1");
  if (!(cfg.beta >= 0.0))
    throw InvalidParams("run_experiment: beta must be nonnegative");
  if (cfg.n_values.empty())
    throw InvalidParams("run_experiment: n_values is empty");

  // beta = 0 is a degenerate but valid LLN experiment; the regime report
  // (which requires beta > 0) is only consulted for the other statistics.
  RegimeReport rep;
  if (cfg.statistic != Statistic::LLNRatio) {
    rep = regime(cfg.beta, cfg.params);
    if (cfg.statistic == Statistic::StableNormalized && !rep.stable_applies)
      throw RegimeMismatch("StableNormalized requested outside a stable regime");
    if (cfg.statistic == Statistic::CLTNormalized && !rep.clt_applies &&
        !rep.at_clt_critical)
      throw RegimeMismatch("CLTNormalized requested outside the CLT regime");
  }

  std::vector<ExperimentRun> out;
  out.reserve(cfg.n_values.size());

  for (int n : cfg.n_values) {
    if (n < 1 || n > 40)
      throw InvalidParams("run_experiment: n must be in [1, 40]");
    SystemConfig c = SystemConfig::make(cfg.beta, n);
    if (c.m > kLevelBudget)
      throw BudgetExceeded("run_experiment: m exceeds the 10^9 level budget");

    ExperimentRun run;
    run.n = n;
    run.m = c.m;
    switch (cfg.statistic) {
      case Statistic::LLNRatio:
        run.normalization = {RegimeTag::LLN,
                             log_mean_partition(c, cfg.params), kNegInf, 0.0};
        break;
      case Statistic::CLTNormalized:
        run.normalization = {RegimeTag::CLT,
                             0.5 * log_var_partition(c, cfg.params),
                             log_mean_partition(c, cfg.params), 0.0};
        break;
      case Statistic::StableNormalized:
        run.normalization = centering(cfg.beta, n, cfg.params, rep);
        break;
    }

    run.replicas.resize(cfg.replicas);
    run.values.resize(cfg.replicas);

    auto work = [&](std::uint64_t r0, std::uint64_t r1) {
      for (std::uint64_t r = r0; r < r1; ++r) {
        RngStream stream{cfg.seed, r};
        run.replicas[r] = simulate_replica(c, cfg.params, stream);
        run.values[r] =
            normalized_statistic(run.replicas[r], cfg.statistic,
                                 run.normalization.log_center,
                                 run.normalization.log_scale);
      }
    };

    unsigned nw = std::max(1u, cfg.workers);
    nw = static_cast<unsigned>(std::min<std::uint64_t>(nw, cfg.replicas));
    if (nw <= 1) {
      work(0, cfg.replicas);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(nw);
      std::uint64_t per = (cfg.replicas + nw - 1) / nw;
      for (unsigned w = 0; w < nw; ++w) {
        std::uint64_t r0 = w * per;
        std::uint64_t r1 = std::min<std::uint64_t>(cfg.replicas, r0 + per);
        if (r0 >= r1) break;
        pool.emplace_back(work, r0, r1);
      }
      for (auto& t : pool) t.join();
    }

    run.summary = summarize(run.values);
    out.push_back(std::move(run));
  }
  return out;
}

}  // namespace rem
