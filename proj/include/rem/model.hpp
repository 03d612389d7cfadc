#ifndef REM_MODEL_HPP
#define REM_MODEL_HPP

#include <cstdint>

#include "rem/errors.hpp"
#include "rem/rng.hpp"

// The alloy-type energy level law: an even mixture of N(0,1) and
// N(sqrt(n)*a, sigma^2), its sampler, and closed-form exponential moments
// of the partition function S_n(beta) = sum_{j<=floor(e^n)} e^{beta sqrt(n) Z_j}.

namespace rem {

// A point in the (a, sigma) phase plane. (0, 1) degenerates to the
// classical REM with standard normal levels.
struct ModelParams {
  double a = 0.0;
  double sigma = 1.0;

  void validate() const {
    if (!(sigma > 0.0)) throw InvalidParams("sigma must be positive");
  }
  bool is_classical(double tol = 1e-12) const {
    return std::abs(a) <= tol && std::abs(sigma - 1.0) <= tol;
  }
};

// One simulated system: inverse temperature, size n, and the exact level
// count m = floor(e^n).
struct SystemConfig {
  double beta = 0.0;
  int n = 0;
  std::uint64_t m = 0;

  static SystemConfig make(double beta, int n);
};

// floor(e^n) to full integer precision; n in [1, 40].
std::uint64_t level_count(int n);

// log floor(e^n). Exact for n <= 40; for larger n the floor correction is
// below double resolution and log m = n.
double log_level_count(int n);

// F_{a,sigma}(x) = Phi(x)/2 + Phi((x - sqrt(n) a)/sigma)/2
double mixture_cdf(double x, const ModelParams& p, int n);

// One draw from F_{a,sigma} at the given counter. Bit-reproducible for a
// fixed (seed, stream, counter).
double sample_energy(const ModelParams& p, int n, const RngStream& stream,
                     std::uint64_t counter);

// log E[e^{s beta sqrt(n) Z_1}]
//   = logsumexp(s^2 b^2 n / 2, s b a n + s^2 b^2 sigma^2 n / 2) - log 2
double log_moment(double s, const SystemConfig& c, const ModelParams& p);

// log E[S_n(beta)] = log m + log_moment(1)
double log_mean_partition(const SystemConfig& c, const ModelParams& p);

// log Var(S_n(beta)) = log m + log(e^{lm2} - e^{2 lm1})
double log_var_partition(const SystemConfig& c, const ModelParams& p);

}  // namespace rem

#endif
