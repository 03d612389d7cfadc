#include "rem/stable.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "rem/errors.hpp"
#include "rem/numerics.hpp"

namespace rem {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr std::uint64_t kStableDomain = 0x5354424Cu;  // draw-purpose separator
}  // namespace

StandardStable standardize(const StableSpec& spec) {
  double a = spec.alpha, C = spec.levy_tail_constant;
  if (!(a > 0.0) || !(a < 2.0))
    throw UnsupportedAlpha("alpha must lie in (0, 2)");
  if (!(C > 0.0)) throw InvalidParams("Levy tail constant must be positive");

  StandardStable out;
  out.alpha = a;
  out.skew = 1.0;
  if (std::abs(a - 1.0) < 1e-12) {
    out.alpha = 1.0;
    out.scale = C * kPi / 2.0;
    out.location = spec.drift + C * (1.0 - kEulerGamma);
    return out;
  }
  // Scale making the Levy tail of S(alpha, 1, scale, 0) equal C x^{-alpha}:
  // scale^alpha = C Gamma(2-alpha) cos(pi alpha / 2) / (1 - alpha),
  // valid on both sides of alpha = 1.
  double sa = C * std::tgamma(2.0 - a) * std::cos(kPi * a / 2.0) / (1.0 - a);
  out.scale = std::pow(sa, 1.0 / a);
  if (a < 1.0) {
    // drift is the Levy-triplet drift under the 1_{x<=1} truncation;
    // remove the compensator integral int_0^1 x nu(dx) = alpha C/(1-alpha).
    out.location = spec.drift - a * C / (1.0 - a);
  } else {
    // regime centerings subtract the full mean, so drift shifts the mean
    out.location = spec.drift;
  }
  return out;
}

double sample_standard_stable(double alpha, const RngStream& stream,
                              std::uint64_t counter) {
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw UnsupportedAlpha("alpha must lie in (0, 2)");
  auto blk = philox_block(stream, counter, kStableDomain);
  std::uint64_t w0 = (static_cast<std::uint64_t>(blk[1]) << 32) | blk[0];
  std::uint64_t w1 = (static_cast<std::uint64_t>(blk[3]) << 32) | blk[2];
  double U = kPi * (u64_to_unit(w0) - 0.5);
  double W = -std::log(u64_to_unit_pos(w1));
  W = std::max(W, 1e-300);

  if (std::abs(alpha - 1.0) < 1e-12) {
    double half_pi = kPi / 2.0;
    return (2.0 / kPi) * ((half_pi + U) * std::tan(U) -
                          std::log((half_pi * W * std::cos(U)) / (half_pi + U)));
  }
  double t = std::tan(kPi * alpha / 2.0);
  double theta0 = std::atan(t) / alpha;
  double pref = std::pow(1.0 + t * t, 1.0 / (2.0 * alpha));
  double s = alpha * (U + theta0);
  return pref * std::sin(s) / std::pow(std::cos(U), 1.0 / alpha) *
         std::pow(std::cos(U - s) / W, (1.0 - alpha) / alpha);
}

double sample_stable(const StableSpec& spec, const RngStream& stream,
                     std::uint64_t counter) {
  StandardStable st = standardize(spec);
  double x = sample_standard_stable(st.alpha, stream, counter);
  if (st.alpha == 1.0)
    return st.scale * x + (2.0 / kPi) * st.scale * std::log(st.scale) +
           st.location;
  return st.scale * x + st.location;
}

namespace {

struct SpecKey {
  double alpha, c, drift;
  bool operator<(const SpecKey& o) const {
    return std::tie(alpha, c, drift) < std::tie(o.alpha, o.c, o.drift);
  }
};

std::mutex g_cache_mutex;
std::map<SpecKey, std::vector<double>> g_reference_cache;

constexpr std::size_t kReferenceSize = 10'000'000;
constexpr std::uint64_t kReferenceSeed = 0x52454D5245460001ULL;

}  // namespace

const std::vector<double>& reference_sample(const StableSpec& spec) {
  standardize(spec);  // validate early
  SpecKey key{spec.alpha, spec.levy_tail_constant, spec.drift};
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = g_reference_cache.find(key);
  if (it != g_reference_cache.end()) return it->second;

  RngStream stream{kReferenceSeed, 0};
  std::vector<double> sample(kReferenceSize);
  for (std::size_t i = 0; i < kReferenceSize; ++i)
    sample[i] = sample_stable(spec, stream, i);
  std::sort(sample.begin(), sample.end());
  return g_reference_cache.emplace(key, std::move(sample)).first->second;
}

std::vector<double> reference_quantiles(const StableSpec& spec,
                                        const std::vector<double>& probs) {
  const auto& sorted = reference_sample(spec);
  std::vector<double> out;
  out.reserve(probs.size());
  for (double p : probs) {
    if (!(p > 0.0) || !(p < 1.0))
      throw InvalidParams("quantile probabilities must lie in (0, 1)");
    double h = p * static_cast<double>(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(h);
    double frac = h - static_cast<double>(lo);
    double q = lo + 1 < sorted.size()
                   ? sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
                   : sorted[lo];
    out.push_back(q);
  }
  return out;
}

}  // namespace rem
