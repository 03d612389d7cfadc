#ifndef REM_PHASE_HPP
#define REM_PHASE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "rem/errors.hpp"
#include "rem/model.hpp"

// Closed-form phase geometry of the (a, sigma) plane: zone classification,
// critical inverse temperatures, free-energy curves, and the per-beta
// report of which limit theorems apply.

namespace rem {

enum class Zone { Z1, Z2, Z3, Z4, Z5, Z6, Boundary };

const char* zone_name(Zone z);

// The three separating quantities between zones.
struct BoundaryValues {
  double z1_cut;   // (1 - sigma^2) / (sqrt(2) sigma); above it: Zone 1
  double split;    // sqrt(2) (1 - sigma); separates Z2/Z3 and Z5/Z6
  double z4_cut;   // (1 - sigma^2) / sqrt(2); below it: Zone 4
};

struct ZoneReport {
  Zone zone = Zone::Boundary;
  std::optional<double> beta_circ;     // 2a / (1 - sigma^2)
  std::optional<double> beta_star;     // (sigma sqrt2 + a) - sqrt((sigma sqrt2 + a)^2 - 2)
  std::optional<double> beta_diamond;  // ((sqrt2 - a) - sqrt((sqrt2 - a)^2 - 2 sigma^2)) / sigma^2
  double beta_plus = 0.0;              // LLN threshold
  BoundaryValues boundary_values{};
};

enum class Component { Standard, Shifted };

// Which limit theorems apply at (a, sigma, beta).
struct RegimeReport {
  double beta = 0.0;
  bool boundary = false;   // non-classical boundary point: no theorem claimed
  bool classical = false;  // (a, sigma) = (0, 1)

  double lln_holds_below = 0.0;       // beta+
  double lln_critical_limit = 0.5;    // ratio limit at beta = beta+
  double clt_holds_below = 0.0;       // beta+ / 2
  double clt_critical_variance = 0.5; // limit variance at beta = beta+ / 2
  double stable_holds_above = 0.0;    // threshold from the case tables
  double tail_index = 0.0;            // sqrt2/beta or sqrt2/(beta sigma)
  Component dominant = Component::Standard;

  bool lln_applies = false;
  bool clt_applies = false;
  bool stable_applies = false;
  bool at_lln_critical = false;
  bool at_clt_critical = false;

  // Beta intervals where neither the CLT nor the stable convergence is
  // proven (reported honestly instead of extrapolated).
  std::vector<std::pair<double, double>> gaps;
};

// Relative tolerance used to call a point Boundary.
inline constexpr double kBoundaryTol = 1e-12;

ZoneReport classify_zone(const ModelParams& p);

// classify_zone plus all critical betas that are defined for the point.
ZoneReport critical_betas(const ModelParams& p);

// Throwing accessors for the roots that only exist in some zones.
double beta_star(const ModelParams& p);
double beta_diamond(const ModelParams& p);

double free_energy_standard(double beta);                        // P1
double free_energy_shifted(double beta, const ModelParams& p);   // P2
double free_energy(double beta, const ModelParams& p);           // max(P1, P2)

RegimeReport regime(double beta, const ModelParams& p);

}  // namespace rem

#endif
