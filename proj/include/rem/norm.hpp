#ifndef REM_NORM_HPP
#define REM_NORM_HPP

#include "rem/model.hpp"
#include "rem/numerics.hpp"
#include "rem/phase.hpp"

// Normalizing and centering sequences for the three limit regimes, plus
// the truncated-moment functionals and tail sums used to decide which
// limit law emerges. Everything is closed form and log domain.

namespace rem {

enum class RegimeTag { LLN, CLT, StableStandard, StableShifted };

struct Normalization {
  RegimeTag tag = RegimeTag::LLN;
  double log_scale = 0.0;        // log of E[S_n], sqrt(Var), or gamma-type scale
  double log_center = kNegInf;   // log of the centering sequence; -inf for zero
  double drift = 0.0;            // drift mu of the limiting law, if any
};

// One-sided stable limit law: Levy tail nu((x,inf)) = C x^{-alpha}, drift mu.
struct StableSpec {
  double alpha = 1.0;
  double levy_tail_constant = kInvSqrt2Pi;
  double drift = 0.0;
};

// log gamma_n(beta) = sqrt2 beta n - (beta / (2 sqrt2)) log(2n)
double log_gamma(double beta, int n);

// log of e^{beta a n} gamma_n(beta sigma)
double log_gamma_shifted(double beta, int n, const ModelParams& p);

// Limit drift mu(beta) = 1 / (sqrt(pi) (beta - sqrt2)) for beta > sqrt2.
double classical_drift(double beta);

// Stable law parameters applying at (a, sigma, beta); throws NotStableRegime
// if the regime report does not put beta in a stable regime.
StableSpec stable_spec_for(double beta, const ModelParams& p,
                           const RegimeReport& regime);

// log J_n(s, tau) = log[ m e^{beta^2 n s^2 / 2} / scale^s
//                        * Phi(log(scale * tau)/(beta sqrt n) - beta s sqrt n) ]
// Returns the log value (-inf for 0).
double truncated_moment(int s, double tau, double beta, int n, double log_scale);

// Shifted-component analog J~_n(s, tau).
double truncated_moment_shifted(int s, double tau, double beta, int n,
                                const ModelParams& p, double log_scale);

// Sigma_n(x) = m (1 - Phi(kappa_n(x))), kappa_n(x) = (log scale + log x)/(beta sqrt n).
double tail_sum(double x, double beta, int n, double log_scale);

// The centering/scale pair for the strongest limit theorem applying at beta.
// Throws NotCovered for boundary points and proof gaps.
Normalization centering(double beta, int n, const ModelParams& p,
                        const RegimeReport& regime);

}  // namespace rem

#endif
