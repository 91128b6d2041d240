#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "linktwin/units.hpp"

namespace linktwin {

enum class Band { C, L };

inline const char* band_name(Band b) { return b == Band::C ? "C" : "L"; }

/// CUT = channel under test (carries a transponder signal we can read BER
/// from); DUMMY = ASE-filled filler channel.
enum class ChannelRole { CUT, DUMMY };

struct Channel {
  double center_frequency_thz = 0.0;
  double symbol_rate_ghz = 0.0;
  Band band = Band::C;
  ChannelRole role = ChannelRole::DUMMY;

  bool operator==(const Channel&) const = default;
};

/// The fixed C+L frequency comb every spectrum in the engine is aligned to.
struct ChannelGrid {
  std::vector<Channel> channels;
  double spacing_ghz = 0.0;

  std::size_t size() const { return channels.size(); }

  double frequency_thz(std::size_t i) const { return channels[i].center_frequency_thz; }

  std::vector<std::size_t> band_indices(Band b) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < channels.size(); ++i) {
      if (channels[i].band == b) out.push_back(i);
    }
    return out;
  }

  void validate() const {
    if (channels.empty()) throw std::invalid_argument("grid: no channels");
    if (!(spacing_ghz > 0.0)) throw std::invalid_argument("grid: spacing must be > 0");
    double prev_l = -1.0, first_c = -1.0;
    for (std::size_t i = 0; i < channels.size(); ++i) {
      const Channel& ch = channels[i];
      if (i > 0 && !(ch.center_frequency_thz > channels[i - 1].center_frequency_thz)) {
        throw std::invalid_argument("grid: center frequencies must be strictly increasing");
      }
      if (spacing_ghz < ch.symbol_rate_ghz) {
        throw std::invalid_argument("grid: spacing " + std::to_string(spacing_ghz) +
                                    " GHz < symbol rate " + std::to_string(ch.symbol_rate_ghz) +
                                    " GHz");
      }
      if (ch.band == Band::L) {
        prev_l = ch.center_frequency_thz;
        if (first_c >= 0.0) {
          throw std::invalid_argument("grid: L-band channel above a C-band channel; bands overlap");
        }
      } else if (first_c < 0.0) {
        first_c = ch.center_frequency_thz;
      }
    }
    if (prev_l >= 0.0 && first_c >= 0.0 && prev_l >= first_c) {
      throw std::invalid_argument("grid: bands overlap");
    }
  }

  bool operator==(const ChannelGrid&) const = default;
};

/// Per-channel signal and ASE powers riding on a grid. ASE is referenced to
/// each channel's symbol-rate bandwidth.
struct PowerSpectrum {
  std::vector<double> signal_mw;
  std::vector<double> ase_mw;
  std::vector<bool> active;

  static PowerSpectrum zeros(std::size_t n) {
    PowerSpectrum s;
    s.signal_mw.assign(n, 0.0);
    s.ase_mw.assign(n, 0.0);
    s.active.assign(n, false);
    return s;
  }

  std::size_t size() const { return signal_mw.size(); }

  void validate(std::size_t grid_size) const {
    if (signal_mw.size() != grid_size || ase_mw.size() != grid_size || active.size() != grid_size) {
      throw std::invalid_argument("spectrum: element count does not match grid");
    }
    for (std::size_t i = 0; i < signal_mw.size(); ++i) {
      if (signal_mw[i] < 0.0 || ase_mw[i] < 0.0) {
        throw std::invalid_argument("spectrum: negative power at channel " + std::to_string(i));
      }
      if (!active[i] && signal_mw[i] != 0.0) {
        throw std::invalid_argument("spectrum: inactive channel " + std::to_string(i) +
                                    " carries signal power");
      }
    }
  }

  bool operator==(const PowerSpectrum&) const = default;
};

/// Total power over the active comb, dBm. An empty or all-dark spectrum
/// reports the documented floor.
inline double total_power_dbm(const PowerSpectrum& s) {
  double sum_mw = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.active[i]) sum_mw += s.signal_mw[i] + s.ase_mw[i];
  }
  if (sum_mw <= 0.0) return kTotalPowerFloorDbm;
  return 10.0 * std::log10(sum_mw);
}

/// Piecewise-linear frequency profile (attenuation, ripple, NF, ...).
/// Evaluation clamps to the edge knots; no extrapolation.
struct ProfileKnot {
  double frequency_thz = 0.0;
  double value = 0.0;

  bool operator==(const ProfileKnot&) const = default;
};

struct SpectralProfile {
  std::vector<ProfileKnot> knots;

  static SpectralProfile constant(double value, double frequency_thz = 190.0) {
    return SpectralProfile{{{frequency_thz, value}}};
  }

  void validate() const {
    if (knots.empty()) throw std::invalid_argument("profile: needs at least one knot");
    for (std::size_t i = 1; i < knots.size(); ++i) {
      if (!(knots[i].frequency_thz > knots[i - 1].frequency_thz)) {
        throw std::invalid_argument("profile: knot frequencies must be strictly increasing");
      }
    }
  }

  double value_at(double f_thz) const {
    if (knots.empty()) throw std::invalid_argument("profile: empty");
    if (f_thz <= knots.front().frequency_thz) return knots.front().value;
    if (f_thz >= knots.back().frequency_thz) return knots.back().value;
    auto hi = std::lower_bound(knots.begin(), knots.end(), f_thz,
                               [](const ProfileKnot& k, double f) { return k.frequency_thz < f; });
    auto lo = hi - 1;
    const double t = (f_thz - lo->frequency_thz) / (hi->frequency_thz - lo->frequency_thz);
    return lo->value + t * (hi->value - lo->value);
  }

  double mean_over(const std::vector<double>& frequencies_thz) const {
    double sum = 0.0;
    for (double f : frequencies_thz) sum += value_at(f);
    return frequencies_thz.empty() ? 0.0 : sum / static_cast<double>(frequencies_thz.size());
  }

  bool operator==(const SpectralProfile&) const = default;
};

/// Evenly spaced knot frequencies used for fitted profiles (ripple, NF).
inline std::vector<double> even_knot_frequencies(double lo_thz, double hi_thz, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] =
        lo_thz + (hi_thz - lo_thz) * static_cast<double>(k) / static_cast<double>(count - 1);
  }
  return out;
}

namespace detail {

inline void append_band_channels(std::vector<Channel>& out, double lo_thz, double hi_thz,
                                 double spacing_ghz, double symbol_rate_ghz, Band band) {
  const double spacing_thz = spacing_ghz * 1e-3;
  const double span = hi_thz - lo_thz;
  const double steps = span / spacing_thz;
  const auto n = static_cast<long>(std::llround(steps));
  if (std::abs(span - static_cast<double>(n) * spacing_thz) > 1e-9) {
    throw std::invalid_argument(std::string("grid: ") + band_name(band) +
                                "-band range is not divisible by the channel spacing");
  }
  for (long k = 0; k <= n; ++k) {
    Channel ch;
    ch.center_frequency_thz = lo_thz + static_cast<double>(k) * spacing_thz;
    ch.symbol_rate_ghz = symbol_rate_ghz;
    ch.band = band;
    ch.role = ChannelRole::DUMMY;
    out.push_back(ch);
  }
}

}  // namespace detail

/// Build the C+L comb: channels at every spacing step, both band endpoints
/// included. L sits strictly below C.
inline ChannelGrid build_cl_grid(double l_lo_thz, double l_hi_thz, double c_lo_thz,
                                 double c_hi_thz, double spacing_ghz, double symbol_rate_ghz) {
  if (!(l_lo_thz <= l_hi_thz) || !(c_lo_thz <= c_hi_thz)) {
    throw std::invalid_argument("grid: band ranges must satisfy lo <= hi");
  }
  if (!(l_hi_thz < c_lo_thz)) {
    throw std::invalid_argument("grid: L band must end below the C band (bands overlap)");
  }
  if (spacing_ghz < symbol_rate_ghz) {
    throw std::invalid_argument("grid: spacing " + std::to_string(spacing_ghz) +
                                " GHz < symbol rate " + std::to_string(symbol_rate_ghz) + " GHz");
  }
  ChannelGrid grid;
  grid.spacing_ghz = spacing_ghz;
  detail::append_band_channels(grid.channels, l_lo_thz, l_hi_thz, spacing_ghz, symbol_rate_ghz,
                               Band::L);
  detail::append_band_channels(grid.channels, c_lo_thz, c_hi_thz, spacing_ghz, symbol_rate_ghz,
                               Band::C);
  grid.validate();
  return grid;
}

/// Returns a copy of the grid with the given channels marked as CUT.
inline ChannelGrid mark_cut_channels(ChannelGrid grid, const std::vector<std::size_t>& indices) {
  for (std::size_t i : indices) {
    if (i >= grid.channels.size()) throw std::invalid_argument("mark_cut_channels: index out of range");
    grid.channels[i].role = ChannelRole::CUT;
  }
  return grid;
}

}  // namespace linktwin
