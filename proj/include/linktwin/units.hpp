#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace linktwin {

/// Planck constant, J*s.
inline constexpr double kPlanckJs = 6.62607015e-34;
/// Speed of light in vacuum, m/s.
inline constexpr double kLightSpeedMps = 299792458.0;

/// Reported total power when a spectrum carries no energy at all.
inline constexpr double kTotalPowerFloorDbm = -100.0;
/// Reported OSNR when a channel carries no ASE at all.
inline constexpr double kOsnrCeilingDb = 60.0;
/// What an OCM reports for a dark channel.
inline constexpr double kOcmFloorDbm = -60.0;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

inline double mw_to_dbm(double mw) {
  if (!(mw > 0.0)) {
    throw std::invalid_argument("mw_to_dbm: power must be > 0 mW");
  }
  return 10.0 * std::log10(mw);
}

/// Attenuation coefficient dB/km -> field loss rate 1/km.
inline double alpha_db_to_per_km(double alpha_db_per_km) {
  return alpha_db_per_km * std::numbers::ln10 / 10.0;
}

}  // namespace linktwin
