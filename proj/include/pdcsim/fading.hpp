#pragma once

// Small-scale fading power gains.

#include <cmath>

#include "pdcsim/errors.hpp"
#include "pdcsim/random.hpp"

namespace pdcsim {

// Power gain |h|^2 of a unit-mean Nakagami-m envelope: Gamma(m, 1/m).
inline double nakagami_power_gain(double m, RandomStream& rng) {
  if (!(m >= 0.5) || !std::isfinite(m)) throw InvalidArgument("Nakagami shape must be >= 0.5");
  return standard_gamma(m, rng) / m;
}

struct ShadowedRicianParams {
  double b0 = 0.126;    // half power of the scattered component
  double m_sr = 10.1;   // Nakagami shape of the LoS amplitude
  double omega = 0.835; // mean LoS power

  void validate() const {
    if (!(b0 > 0.0) || !(m_sr > 0.0) || !(omega >= 0.0) || !std::isfinite(b0) || !std::isfinite(m_sr) ||
        !std::isfinite(omega))
      throw InvalidArgument("shadowed Rician needs b0 > 0, m > 0, omega >= 0");
  }

  double mean() const noexcept { return 2.0 * b0 + omega; }

  friend bool operator==(const ShadowedRicianParams&, const ShadowedRicianParams&) = default;
};

// |A|^2 with A = sqrt(b0)(X + jY) + Z, X, Y ~ N(0,1) and |Z|^2 ~ Gamma(m, omega/m).
// The diffuse part is circularly symmetric, so the LoS phase is fixed at 0.
inline double shadowed_rician_power_gain(const ShadowedRicianParams& p, RandomStream& rng) {
  p.validate();
  const double los_power = p.omega > 0.0 ? standard_gamma(p.m_sr, rng) * (p.omega / p.m_sr) : 0.0;
  const double s = std::sqrt(p.b0);
  const double re = s * standard_normal(rng) + std::sqrt(los_power);
  const double im = s * standard_normal(rng);
  return re * re + im * im;
}

}  // namespace pdcsim
