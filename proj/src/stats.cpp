#include "rem/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rem {

double hill(std::span<const double> sample, std::size_t k) {
  const std::size_t n = sample.size();
  if (k < 2 || k >= n)
    throw InvalidParams("hill: need 2 <= k < sample size");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  double ref = x[n - k - 1];
  if (!(ref > 0.0))
    throw DegenerateTail("hill: order statistic X_(N-k) not positive");
  double s = 0.0;
  for (std::size_t i = n - k; i < n; ++i) s += std::log(x[i] / ref);
  if (!(s > 0.0))
    throw DegenerateTail("hill: top order statistics not distinct");
  return static_cast<double>(k) / s;
}

std::size_t hill_default_k(std::size_t n) {
  return static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(n))));
}

double ks_one_sample(std::span<const double> sample,
                     const std::function<double(double)>& cdf) {
  if (sample.empty()) throw InvalidParams("ks_one_sample: empty sample");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double f = cdf(x[i]);
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidParams("ks_two_sample: empty sample");
  std::vector<double> xa(a.begin(), a.end()), xb(b.begin(), b.end());
  std::sort(xa.begin(), xa.end());
  std::sort(xb.begin(), xb.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  while (i < xa.size() && j < xb.size()) {
    double v = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] <= v) ++i;
    while (j < xb.size() && xb[j] <= v) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

double quantile(std::span<const double> sample, double p) {
  if (sample.empty()) throw InvalidParams("quantile: empty sample");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  double h = p * static_cast<double>(x.size() - 1);
  std::size_t lo = static_cast<std::size_t>(h);
  double frac = h - static_cast<double>(lo);
  return lo + 1 < x.size() ? x[lo] + frac * (x[lo + 1] - x[lo]) : x[lo];
}

Summary summarize(std::span<const double> sample) {
  if (sample.empty()) throw InvalidParams("summarize: empty sample");
  Summary s;
  const double n = static_cast<double>(sample.size());
  s.mean = std::accumulate(sample.begin(), sample.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : sample) ss += (v - s.mean) * (v - s.mean);
  s.variance = sample.size() > 1 ? ss / (n - 1.0) : 0.0;
  s.median = quantile(sample, 0.5);
  s.q05 = quantile(sample, 0.05);
  s.q25 = quantile(sample, 0.25);
  s.q75 = quantile(sample, 0.75);
  s.q95 = quantile(sample, 0.95);
  s.max = *std::max_element(sample.begin(), sample.end());
  return s;
}

}  // namespace rem
