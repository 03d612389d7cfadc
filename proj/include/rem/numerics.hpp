#ifndef REM_NUMERICS_HPP
#define REM_NUMERICS_HPP

#include <cmath>
#include <limits>
#include <span>

// Log-domain helpers shared by all modules. Exponents in this code scale
// like beta^2 * n and overflow plain doubles long before n = 40, so sums,
// differences and normal-tail probabilities are kept as logarithms.

namespace rem {

inline constexpr double kSqrt2 = 1.4142135623730950488;
inline constexpr double kLog2Pi = 1.8378770664093454836;
inline constexpr double kInvSqrt2Pi = 0.3989422804014326779;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Argument beyond which 1 - Phi(x) is evaluated through the asymptotic
// series phi(x)/x (1 - 1/x^2 + 3/x^4 - ...) because erfc underflows.
inline constexpr double kPhiTailCrossover = 37.0;

inline double log_sum_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

inline double log_sum_exp(std::span<const double> xs) {
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

// log(e^a - e^b), requires a > b.
inline double log_diff_exp(double a, double b) {
  if (b == kNegInf) return a;
  return a + std::log1p(-std::exp(b - a));
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

inline double normal_pdf(double x) {
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

// log Phi(x), stable for large negative arguments where Phi underflows.
inline double log_normal_cdf(double x) {
  if (x < -kPhiTailCrossover) {
    // five correction terms leave a relative error below 1e-15 at |x| >= 37
    double inv = 1.0 / (x * x);
    double series =
        1.0 +
        inv * (-1.0 + inv * (3.0 + inv * (-15.0 + inv * (105.0 - inv * 945.0))));
    return -0.5 * x * x - 0.5 * kLog2Pi - std::log(-x) + std::log(series);
  }
  return std::log(0.5 * std::erfc(-x / kSqrt2));
}

// log(1 - Phi(x)) = log Phi(-x)
inline double log_normal_sf(double x) { return log_normal_cdf(-x); }

}  // namespace rem

#endif
