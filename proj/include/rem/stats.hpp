#ifndef REM_STATS_HPP
#define REM_STATS_HPP

#include <functional>
#include <span>
#include <vector>

#include "rem/errors.hpp"

// Estimators and tests that turn replica samples into verdicts.

namespace rem {

// Hill estimate of the tail index from the k largest order statistics:
// k / sum log(X_(N-i+1) / X_(N-k)).
double hill(std::span<const double> sample, std::size_t k);

// Default k = ceil(sqrt(N)).
std::size_t hill_default_k(std::size_t n);

// Sup distance between the empirical CDF of `sample` and `cdf`.
double ks_one_sample(std::span<const double> sample,
                     const std::function<double(double)>& cdf);

// Sup distance between the empirical CDFs of two samples.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

struct Summary {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double median = 0.0;
  double q05 = 0.0, q25 = 0.0, q75 = 0.0, q95 = 0.0;
  double max = 0.0;
};

Summary summarize(std::span<const double> sample);

// Linear-interpolation quantile of a sample (copied and sorted internally).
double quantile(std::span<const double> sample, double p);

}  // namespace rem

#endif
