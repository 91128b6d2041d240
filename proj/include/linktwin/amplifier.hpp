#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "linktwin/spectral.hpp"
#include "linktwin/units.hpp"

namespace linktwin {

/// Operator-settable EDFA state: gain set-point and linear tilt. Tilt is the
/// total edge-to-edge slope across the amplifier band, positive = more gain
/// at the high-frequency edge.
struct EdfaConfig {
  double gain_target_db = 20.0;
  double tilt_db = 0.0;

  bool operator==(const EdfaConfig&) const = default;
};

/// Per-band EDFA characterization: fixed ripple, frequency-dependent NF with
/// a linear penalty when driven below design gain. No input-power saturation;
/// gain is a set-point refined by calibration.
struct EdfaModel {
  Band band = Band::C;
  double band_lo_thz = 191.4;
  double band_hi_thz = 196.1;
  SpectralProfile ripple = SpectralProfile::constant(0.0);  // dB, mean ~0 over band
  SpectralProfile nf0 = SpectralProfile::constant(5.0);     // dB
  double gain_range_db[2] = {5.0, 35.0};
  double tilt_range_db[2] = {-3.0, 3.0};
  double nf_penalty_slope = 0.3;  // dB of NF per dB below design gain
  double design_gain_db = 20.0;

  double band_center_thz() const { return 0.5 * (band_lo_thz + band_hi_thz); }

  void validate() const {
    if (!(band_lo_thz < band_hi_thz)) throw std::invalid_argument("edfa: band_lo must be < band_hi");
    if (!(gain_range_db[0] <= gain_range_db[1]) || !(tilt_range_db[0] <= tilt_range_db[1])) {
      throw std::invalid_argument("edfa: empty gain or tilt range");
    }
    ripple.validate();
    nf0.validate();
    for (const ProfileKnot& k : nf0.knots) {
      if (!(k.value > 3.0)) throw std::invalid_argument("edfa: NF0 must be > 3 dB everywhere");
    }
    for (const ProfileKnot& k : ripple.knots) {
      if (k.frequency_thz < band_lo_thz - 1e-9 || k.frequency_thz > band_hi_thz + 1e-9) {
        throw std::invalid_argument("edfa: ripple knot outside the amplifier band");
      }
    }
  }

  void check_config(const EdfaConfig& cfg) const {
    if (cfg.gain_target_db < gain_range_db[0] || cfg.gain_target_db > gain_range_db[1]) {
      throw std::invalid_argument("edfa: gain target " + std::to_string(cfg.gain_target_db) +
                                  " dB outside [" + std::to_string(gain_range_db[0]) + ", " +
                                  std::to_string(gain_range_db[1]) + "]");
    }
    if (cfg.tilt_db < tilt_range_db[0] || cfg.tilt_db > tilt_range_db[1]) {
      throw std::invalid_argument("edfa: tilt " + std::to_string(cfg.tilt_db) + " dB outside [" +
                                  std::to_string(tilt_range_db[0]) + ", " +
                                  std::to_string(tilt_range_db[1]) + "]");
    }
  }

  bool operator==(const EdfaModel&) const = default;
};

/// Per-channel gain for channels in the model's band. Out-of-band entries
/// are NaN and must not be consumed.
inline std::vector<double> gain_profile(const EdfaModel& model, const EdfaConfig& config,
                                        const ChannelGrid& grid) {
  model.check_config(config);
  std::vector<double> g(grid.size(), std::nan(""));
  const double width = model.band_hi_thz - model.band_lo_thz;
  const double center = model.band_center_thz();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Channel& ch = grid.channels[i];
    if (ch.band != model.band) continue;
    g[i] = config.gain_target_db + config.tilt_db * (ch.center_frequency_thz - center) / width +
           model.ripple.value_at(ch.center_frequency_thz);
  }
  return g;
}

/// NF at f: base profile plus a linear penalty when running below design
/// gain, never negative.
inline double effective_nf_db(const EdfaModel& model, const EdfaConfig& config, double f_thz) {
  model.check_config(config);
  const double penalty =
      model.nf_penalty_slope * std::max(0.0, model.design_gain_db - config.gain_target_db);
  return model.nf0.value_at(f_thz) + penalty;
}

/// ASE added by one amplification stage, mW in the given bandwidth.
/// P = NF_lin * h * f * B * (G_lin - 1); exact zero at 0 dB gain.
inline double ase_added_mw(double gain_db, double nf_db, double f_thz, double bandwidth_ghz) {
  if (gain_db < 0.0) throw std::invalid_argument("ase_added: gain must be >= 0 dB");
  const double g_lin = db_to_linear(gain_db);
  const double nf_lin = db_to_linear(nf_db);
  const double p_w = nf_lin * kPlanckJs * (f_thz * 1e12) * (bandwidth_ghz * 1e9) * (g_lin - 1.0);
  return p_w * 1e3;
}

/// Amplify the channels in the model's band: signal and incoming ASE get the
/// per-channel linear gain; active channels accumulate fresh ASE in their
/// symbol-rate bandwidth. Everything outside the band is untouched.
inline PowerSpectrum amplify(const PowerSpectrum& input, const EdfaModel& model,
                             const EdfaConfig& config, const ChannelGrid& grid) {
  input.validate(grid.size());
  model.validate();
  const std::vector<double> gains_db = gain_profile(model, config, grid);
  PowerSpectrum out = input;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Channel& ch = grid.channels[i];
    if (ch.band != model.band) continue;
    const double g_lin = db_to_linear(gains_db[i]);
    out.signal_mw[i] *= g_lin;
    out.ase_mw[i] *= g_lin;
    if (out.active[i]) {
      const double nf = effective_nf_db(model, config, ch.center_frequency_thz);
      out.ase_mw[i] += ase_added_mw(std::max(0.0, gains_db[i]), nf, ch.center_frequency_thz,
                                    ch.symbol_rate_ghz);
    }
  }
  return out;
}

}  // namespace linktwin
