#include "rem/model.hpp"

#include <cmath>
#include <quadmath.h>

#include "rem/numerics.hpp"

namespace rem {

std::uint64_t level_count(int n) {
  if (n < 1 || n > 40) throw InvalidParams("n must be in [1, 40]");
  // Quad precision leaves ~55 guard bits at n = 40; reject if e^n were ever
  // suspiciously close to an integer boundary.
  __float128 en = expq(static_cast<__float128>(n));
  __float128 fl = floorq(en);
  __float128 frac = en - fl;
  const __float128 guard = 1e-6;
  if (frac < guard || frac > 1.0 - guard)
    throw std::runtime_error("floor(e^n) too close to an integer boundary");
  return static_cast<std::uint64_t>(fl);
}

double log_level_count(int n) {
  if (n < 1) throw InvalidParams("n must be >= 1");
  if (n <= 40) return std::log(static_cast<double>(level_count(n)));
  return static_cast<double>(n);
}

SystemConfig SystemConfig::make(double beta, int n) {
  if (!(beta >= 0.0)) throw InvalidParams("beta must be nonnegative");
  SystemConfig c;
  c.beta = beta;
  c.n = n;
  c.m = level_count(n);
  return c;
}

double mixture_cdf(double x, const ModelParams& p, int n) {
  p.validate();
  if (n < 1) throw InvalidParams("n must be >= 1");
  double sn = std::sqrt(static_cast<double>(n));
  return 0.5 * normal_cdf(x) + 0.5 * normal_cdf((x - sn * p.a) / p.sigma);
}

double sample_energy(const ModelParams& p, int n, const RngStream& stream,
                     std::uint64_t counter) {
  p.validate();
  NormalPair np = normal_pair(stream, counter >> 1);
  bool odd = (counter & 1) != 0;
  double z = odd ? np.z1 : np.z0;
  bool shifted = odd ? np.bit1 : np.bit0;
  if (!shifted) return z;
  return std::sqrt(static_cast<double>(n)) * p.a + p.sigma * z;
}

double log_moment(double s, const SystemConfig& c, const ModelParams& p) {
  p.validate();
  double b = c.beta, n = c.n;
  double e1 = 0.5 * s * s * b * b * n;
  double e2 = s * b * p.a * n + 0.5 * s * s * b * b * p.sigma * p.sigma * n;
  if (e1 == e2) return e1;  // coincident branches, exact for (a, sigma) = (0, 1)
  return log_sum_exp(e1, e2) - std::log(2.0);
}

double log_mean_partition(const SystemConfig& c, const ModelParams& p) {
  return std::log(static_cast<double>(c.m)) + log_moment(1.0, c, p);
}

double log_var_partition(const SystemConfig& c, const ModelParams& p) {
  double lm2 = log_moment(2.0, c, p);
  double lm1 = log_moment(1.0, c, p);
  // Second moment strictly exceeds the squared mean for nondegenerate Z,
  // so the log-domain difference is well defined.
  return std::log(static_cast<double>(c.m)) + log_diff_exp(lm2, 2.0 * lm1);
}

}  // namespace rem
