#include "rem/norm.hpp"

#include <cmath>

#include "rem/numerics.hpp"

namespace rem {

double log_gamma(double beta, int n) {
  if (!(beta > 0.0)) throw InvalidParams("beta must be positive");
  if (n < 1) throw InvalidParams("n must be >= 1");
  return kSqrt2 * beta * n - (beta / (2.0 * kSqrt2)) * std::log(2.0 * n);
}

double log_gamma_shifted(double beta, int n, const ModelParams& p) {
  p.validate();
  return beta * p.a * n + log_gamma(beta * p.sigma, n);
}

double classical_drift(double beta) {
  return 1.0 / (std::sqrt(M_PI) * (beta - kSqrt2));
}

StableSpec stable_spec_for(double beta, const ModelParams& p,
                           const RegimeReport& regime) {
  if (!(regime.stable_applies))
    throw NotStableRegime("beta is not in a stable regime here");
  StableSpec spec;
  spec.alpha = regime.tail_index;
  spec.levy_tail_constant = kInvSqrt2Pi;
  // Effective classical temperature of the dominating component. For
  // beta_eff > sqrt2 the normalized sum is centering-free and carries the
  // drift mu(beta_eff); otherwise the centering absorbs the mean.
  double beta_eff =
      regime.dominant == Component::Shifted ? beta * p.sigma : beta;
  double tol = 1e-12 * std::max(1.0, beta_eff);
  if (beta_eff > kSqrt2 + tol) spec.drift = classical_drift(beta_eff);
  return spec;
}

double truncated_moment(int s, double tau, double beta, int n,
                        double log_scale) {
  if (!(tau > 0.0)) throw InvalidParams("tau must be positive");
  if (!(beta > 0.0)) throw InvalidParams("beta must be positive");
  double sn = std::sqrt(static_cast<double>(n));
  double arg = (log_scale + std::log(tau)) / (beta * sn) - beta * s * sn;
  return log_level_count(n) + 0.5 * beta * beta * n * s * s - s * log_scale +
         log_normal_cdf(arg);
}

double truncated_moment_shifted(int s, double tau, double beta, int n,
                                const ModelParams& p, double log_scale) {
  p.validate();
  if (!(tau > 0.0)) throw InvalidParams("tau must be positive");
  if (!(beta > 0.0)) throw InvalidParams("beta must be positive");
  double sn = std::sqrt(static_cast<double>(n));
  double bs = beta * p.sigma;
  double arg =
      (log_scale + std::log(tau) - beta * p.a * n) / (bs * sn) - bs * s * sn;
  return log_level_count(n) + beta * p.a * n * s + 0.5 * bs * bs * n * s * s -
         s * log_scale + log_normal_cdf(arg);
}

double tail_sum(double x, double beta, int n, double log_scale) {
  if (!(x > 0.0)) throw InvalidParams("x must be positive");
  double sn = std::sqrt(static_cast<double>(n));
  double kappa = (log_scale + std::log(x)) / (beta * sn);
  return std::exp(log_level_count(n) + log_normal_sf(kappa));
}

Normalization centering(double beta, int n, const ModelParams& p,
                        const RegimeReport& regime) {
  p.validate();
  if (regime.boundary)
    throw NotCovered("boundary point: no limit theorem claimed");
  SystemConfig c = SystemConfig::make(beta, n);
  double log_m = std::log(static_cast<double>(c.m));
  double tol = 1e-12 * std::max(1.0, beta);

  Normalization out;
  if (regime.stable_applies) {
    bool shifted = regime.dominant == Component::Shifted;
    out.tag = shifted ? RegimeTag::StableShifted : RegimeTag::StableStandard;
    double beta_eff = shifted ? beta * p.sigma : beta;
    double alpha = regime.tail_index;

    if (regime.classical) {
      out.log_scale = log_gamma(beta, n);
      double log_mean = log_mean_partition(c, p);
      if (std::abs(beta - kSqrt2) <= tol) {
        out.log_center = log_mean - std::log(2.0);
      } else if (beta < kSqrt2) {
        out.log_center = log_mean;
      } else {
        out.log_center = kNegInf;
        out.drift = classical_drift(beta);
      }
      return out;
    }

    // Mixture: each component holds m/2 levels, which halves the limiting
    // Levy tail. The half is absorbed into the scale (2^{-1/alpha} factor)
    // so that the reported law keeps C = 1/sqrt(2 pi).
    double base = shifted ? log_gamma_shifted(beta, n, p) : log_gamma(beta, n);
    out.log_scale = base - std::log(2.0) / alpha;

    double log_mean_dom =
        log_m - std::log(2.0) +
        (shifted ? beta * p.a * n + 0.5 * beta_eff * beta_eff * n
                 : 0.5 * beta * beta * n);
    double log_mean_other =
        log_m - std::log(2.0) +
        (shifted ? 0.5 * beta * beta * n
                 : beta * p.a * n + 0.5 * beta * beta * p.sigma * p.sigma * n);

    double dom_center;
    if (std::abs(beta_eff - kSqrt2) <= tol) {
      dom_center = log_mean_dom - std::log(2.0);
    } else if (beta_eff < kSqrt2) {
      dom_center = log_mean_dom;
    } else {
      dom_center = kNegInf;
      out.drift = classical_drift(beta_eff);
    }
    out.log_center = log_sum_exp(dom_center, log_mean_other);
    return out;
  }

  if (regime.clt_applies || regime.at_clt_critical) {
    out.tag = RegimeTag::CLT;
    out.log_scale = 0.5 * log_var_partition(c, p);
    out.log_center = log_mean_partition(c, p);
    return out;
  }
  if (regime.lln_applies || regime.at_lln_critical) {
    out.tag = RegimeTag::LLN;
    out.log_scale = log_mean_partition(c, p);
    out.log_center = log_mean_partition(c, p);
    return out;
  }
  throw NotCovered("beta lies in a gap not covered by the limit theorems");
}

}  // namespace rem
