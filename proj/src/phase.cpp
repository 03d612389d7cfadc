#include "rem/phase.hpp"

#include <algorithm>
#include <cmath>

#include "rem/numerics.hpp"

namespace rem {

const char* zone_name(Zone z) {
  switch (z) {
    case Zone::Z1: return "Z1";
    case Zone::Z2: return "Z2";
    case Zone::Z3: return "Z3";
    case Zone::Z4: return "Z4";
    case Zone::Z5: return "Z5";
    case Zone::Z6: return "Z6";
    case Zone::Boundary: return "Boundary";
  }
  return "?";
}

static BoundaryValues boundary_values(const ModelParams& p) {
  double s = p.sigma;
  return {(1.0 - s * s) / (kSqrt2 * s), kSqrt2 * (1.0 - s),
          (1.0 - s * s) / kSqrt2};
}

static double boundary_tol(const ModelParams& p) {
  return kBoundaryTol * std::max(1.0, std::abs(p.a));
}

ZoneReport classify_zone(const ModelParams& p) {
  p.validate();
  ZoneReport r;
  r.boundary_values = boundary_values(p);
  const auto& bv = r.boundary_values;
  double tol = boundary_tol(p);

  // beta+ per the LLN trichotomy; continuous across the separating curves,
  // so it is well defined on Boundary too.
  if (p.is_classical(kBoundaryTol)) {
    r.beta_plus = kSqrt2;  // middle-strip formula is 0/0 here
  } else if (p.a > bv.z1_cut) {
    r.beta_plus = kSqrt2 / p.sigma;
  } else if (p.a < bv.z4_cut) {
    r.beta_plus = kSqrt2;
  } else {
    r.beta_plus = 2.0 * p.a / (1.0 - p.sigma * p.sigma);
  }

  bool on_sigma1 = std::abs(p.sigma - 1.0) <= kBoundaryTol;
  if (std::abs(p.a - bv.z1_cut) <= tol || std::abs(p.a - bv.z4_cut) <= tol ||
      std::abs(p.a - bv.split) <= tol) {
    r.zone = Zone::Boundary;
    return r;
  }
  if (p.a > bv.z1_cut) {
    r.zone = Zone::Z1;
  } else if (p.a < bv.z4_cut) {
    r.zone = Zone::Z4;
  } else if (on_sigma1) {
    // the middle strip collapses at sigma = 1
    r.zone = Zone::Boundary;
  } else if (p.sigma > 1.0) {
    r.zone = (p.a > bv.split) ? Zone::Z2 : Zone::Z3;
  } else {
    r.zone = (p.a > bv.split) ? Zone::Z6 : Zone::Z5;
  }
  return r;
}

// Expanded discriminants: (sigma sqrt2 + a)^2 - 2 and (sqrt2 - a)^2 -
// 2 sigma^2 written term by term, so degenerate roots (classical point,
// a = 0) come out exactly zero instead of rounding noise under the sqrt.
static double star_disc(const ModelParams& p) {
  return 2.0 * p.sigma * p.sigma + 2.0 * kSqrt2 * p.sigma * p.a + p.a * p.a -
         2.0;
}

static double diamond_disc(const ModelParams& p) {
  return 2.0 - 2.0 * kSqrt2 * p.a + p.a * p.a - 2.0 * p.sigma * p.sigma;
}

double beta_star(const ModelParams& p) {
  p.validate();
  double t = p.sigma * kSqrt2 + p.a;
  double disc = star_disc(p);
  if (disc < 0.0)
    throw DiscriminantNegative("beta_star undefined: (sigma sqrt2 + a)^2 < 2");
  return t - std::sqrt(disc);
}

double beta_diamond(const ModelParams& p) {
  p.validate();
  double t = kSqrt2 - p.a;
  double disc = diamond_disc(p);
  if (disc < 0.0)
    throw DiscriminantNegative("beta_diamond undefined: (sqrt2 - a)^2 < 2 sigma^2");
  return (t - std::sqrt(disc)) / (p.sigma * p.sigma);
}

ZoneReport critical_betas(const ModelParams& p) {
  ZoneReport r = classify_zone(p);
  if (std::abs(p.sigma - 1.0) > kBoundaryTol) {
    double bc = 2.0 * p.a / (1.0 - p.sigma * p.sigma);
    if (bc > 0.0) r.beta_circ = bc;
  }
  {
    double t = p.sigma * kSqrt2 + p.a;
    if (star_disc(p) >= 0.0 && t > 0.0) r.beta_star = beta_star(p);
  }
  {
    double t = kSqrt2 - p.a;
    if (diamond_disc(p) >= 0.0 && t > 0.0) r.beta_diamond = beta_diamond(p);
  }
  return r;
}

double free_energy_standard(double beta) {
  return beta <= kSqrt2 ? 1.0 + 0.5 * beta * beta : kSqrt2 * beta;
}

double free_energy_shifted(double beta, const ModelParams& p) {
  double s = p.sigma;
  return beta <= kSqrt2 / s ? 1.0 + beta * p.a + 0.5 * beta * beta * s * s
                            : (s * kSqrt2 + p.a) * beta;
}

double free_energy(double beta, const ModelParams& p) {
  p.validate();
  if (!(beta > 0.0)) throw InvalidParams("beta must be positive");
  return std::max(free_energy_standard(beta), free_energy_shifted(beta, p));
}

RegimeReport regime(double beta, const ModelParams& p) {
  p.validate();
  if (!(beta > 0.0)) throw InvalidParams("beta must be positive");

  ZoneReport zr = critical_betas(p);
  RegimeReport r;
  r.beta = beta;
  r.lln_holds_below = zr.beta_plus;
  r.clt_holds_below = 0.5 * zr.beta_plus;

  double btol = 1e-12 * std::max(1.0, zr.beta_plus);

  if (p.is_classical(kBoundaryTol)) {
    r.classical = true;
    r.lln_holds_below = kSqrt2;
    r.clt_holds_below = 0.5 * kSqrt2;
    r.stable_holds_above = 0.5 * kSqrt2;
    r.tail_index = kSqrt2 / beta;
    r.dominant = Component::Standard;
  } else if (zr.zone == Zone::Boundary) {
    r.boundary = true;
    return r;
  } else {
    const auto& bv = zr.boundary_values;
    if (p.a < bv.split) {
      // Case (i): the standard component carries the heavy tail.
      r.dominant = Component::Standard;
      r.tail_index = kSqrt2 / beta;
      r.stable_holds_above = (p.sigma < 1.0 && p.a > bv.z4_cut)
                                 ? 0.5 * beta_diamond(p)
                                 : 0.5 * kSqrt2;
    } else {
      // Case (ii): the shifted component dominates.
      r.dominant = Component::Shifted;
      r.tail_index = kSqrt2 / (beta * p.sigma);
      r.stable_holds_above = (p.sigma > 1.0 && p.a < bv.z1_cut)
                                 ? 0.5 * beta_star(p)
                                 : 0.5 * kSqrt2 / p.sigma;
    }
  }

  r.at_lln_critical = std::abs(beta - r.lln_holds_below) <= btol;
  r.at_clt_critical = std::abs(beta - r.clt_holds_below) <= btol;
  r.lln_applies = beta < r.lln_holds_below - btol;
  r.clt_applies = beta < r.clt_holds_below - btol;
  r.stable_applies = beta > r.stable_holds_above + btol;

  if (r.stable_holds_above > r.clt_holds_below + btol)
    r.gaps.emplace_back(r.clt_holds_below, r.stable_holds_above);
  return r;
}

}  // namespace rem
