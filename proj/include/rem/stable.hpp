#ifndef REM_STABLE_HPP
#define REM_STABLE_HPP

#include <cstdint>
#include <vector>

#include "rem/norm.hpp"
#include "rem/rng.hpp"

// One-sided (spectrally positive) alpha-stable laws given by their Levy
// tail nu((x,inf)) = C x^{-alpha}: conversion to the standard S(alpha,
// beta=1, scale, location) parameterization, exact sampling via the
// Chambers-Mallows-Stuck transform, and simulation-based reference
// quantiles for goodness-of-fit checks.

namespace rem {

// Standard stable parameterization (Samorodnitsky-Taqqu "S1"):
// CF exp{ i location t - scale^alpha |t|^alpha (1 - i skew tan(pi alpha/2) sgn t) }
// for alpha != 1, with the usual logarithmic form at alpha = 1.
struct StandardStable {
  double alpha;
  double scale;
  double skew;      // always +1 here
  double location;
};

// Convert (alpha, C, mu). The drift mu is the Levy-triplet drift under the
// 1_{|x|<=1} truncation convention; the resulting location makes the S1 law
// carry exactly that triplet. For alpha in (1,2) the regime centerings
// subtract the full mean, so mu = 0 maps to a mean-zero law.
StandardStable standardize(const StableSpec& spec);

// One exact draw from the law described by `spec`, at the given counter.
double sample_stable(const StableSpec& spec, const RngStream& stream,
                     std::uint64_t counter);

// Draw from the standard S1 law (scale 1, location 0, skew +1).
double sample_standard_stable(double alpha, const RngStream& stream,
                              std::uint64_t counter);

// Quantiles interpolated from a cached, seeded 10^7-draw sorted sample of
// the law. Simulation-based by design; reproducible across runs.
std::vector<double> reference_quantiles(const StableSpec& spec,
                                        const std::vector<double>& probs);

// Access to the cached sorted reference sample (used by the KS checks).
const std::vector<double>& reference_sample(const StableSpec& spec);

}  // namespace rem

#endif
