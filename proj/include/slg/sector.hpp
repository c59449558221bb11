// Stokes-sector classification for a phase relative to the lines (2M+1)pi/beta.
#pragma once

#include "slg/precision.hpp"

#include <cmath>
#include <stdexcept>

namespace slg {

enum class RotationSide { upper, lower };

struct SectorLocation {
  long M = 0;
  bool on_line = false;
  RotationSide side = RotationSide::upper;

  friend bool operator==(const SectorLocation&, const SectorLocation&) = default;
};

/// Default on-line tolerance: 10^{-working/2}.
inline Real default_line_tolerance(const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  return pow10(-ctx.working_digits() / 2);
}

/// Sector M holds (2M-1)pi/beta < |theta| < (2M+1)pi/beta; the side records
/// the sign of theta.  A phase within tol of a line (2M+1)pi/beta reports that
/// line's M with on_line set.
inline SectorLocation sector_locate(const Real& theta, const Real& beta, const Real& tol) {
  if (!(beta > 0)) throw std::invalid_argument("sector_locate: beta must be positive");
  SectorLocation loc;
  loc.side = theta < 0 ? RotationSide::lower : RotationSide::upper;
  const Real unit = pi() / beta;
  const Real x = abs(theta) / unit;  // position in units of pi/beta
  // Nearest line index m: the line sits at x = 2m+1.
  long m = static_cast<long>(floor(x / 2));
  Real nearest = abs(theta) - (2 * m + 1) * unit;
  if (m > 0) {
    Real below = abs(theta) - (2 * m - 1) * unit;
    if (abs(below) < abs(nearest)) {
      --m;
      nearest = below;
    }
  }
  if (abs(nearest) <= tol) {
    loc.M = m;
    loc.on_line = true;
    return loc;
  }
  loc.M = static_cast<long>(floor((x + 1) / 2));
  return loc;
}

/// Distance in radians from theta to the nearest Stokes line +-(2m+1)pi/beta.
inline Real line_distance(const Real& theta, const Real& beta) {
  const Real unit = pi() / beta;
  const Real x = abs(theta) / unit;
  const Real m = floor(x / 2);
  Real d = abs(abs(theta) - (2 * m + 1) * unit);
  if (m > 0) d = std::min(d, abs(abs(theta) - (2 * m - 1) * unit));
  return d;
}

/// Sector forms within this distance of a line (10^{-5} pi rad) are
/// flagged and evaluated with doubled guard digits.
inline Real near_line_threshold() { return pi() * pow10(-5) * (1 + pow10(-12)); }

inline SectorLocation sector_locate(const Real& theta, const Real& beta, const PrecisionContext& ctx) {
  ScopedPrecision sp(ctx);
  return sector_locate(theta, beta, default_line_tolerance(ctx));
}

}  // namespace slg
