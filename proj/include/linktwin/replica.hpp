#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "linktwin/link.hpp"

namespace linktwin {

/// Datasheet defaults for the six-span C48+L48 field link replica.
/// Individual span lengths are a documented reconstruction: the stated
/// 86.4 km maximum plus five equal spans totaling 469.3 km of G.652 SMF.
namespace replica_defaults {
inline constexpr double kLBandLoThz = 186.1;
inline constexpr double kLBandHiThz = 190.8;
inline constexpr double kCBandLoThz = 191.4;
inline constexpr double kCBandHiThz = 196.1;
inline constexpr double kSpacingGhz = 100.0;
inline constexpr double kSymbolRateGhz = 91.6;
inline constexpr double kMaxSpanKm = 86.4;
inline constexpr double kTotalKm = 469.3;
inline constexpr double kConnectorDb = 0.5;
inline constexpr double kRamanSlope = 0.028;
inline constexpr double kRoadmLossDb = 14.0;
inline constexpr std::size_t kRoadmSiteIndex = 1;
inline constexpr double kNf0CDb = 5.0;
inline constexpr double kNf0LDb = 5.5;
}  // namespace replica_defaults

inline ChannelGrid build_replica_grid() {
  using namespace replica_defaults;
  ChannelGrid grid = build_cl_grid(kLBandLoThz, kLBandHiThz, kCBandLoThz, kCBandHiThz,
                                   kSpacingGhz, kSymbolRateGhz);
  // Five channels under test: two on L, three on C, spread over each band.
  return mark_cut_channels(grid, {5, 42, 53, 72, 91});
}

/// Representative G.652 attenuation knots; replica defaults, not field data.
inline SpectralProfile replica_attenuation_profile() {
  return SpectralProfile{{{186.1, 0.210}, {191.0, 0.200}, {196.1, 0.191}}};
}

inline EdfaModel make_replica_edfa(Band band, double design_gain_db) {
  using namespace replica_defaults;
  EdfaModel m;
  m.band = band;
  m.band_lo_thz = band == Band::C ? kCBandLoThz : kLBandLoThz;
  m.band_hi_thz = band == Band::C ? kCBandHiThz : kLBandHiThz;
  m.ripple = SpectralProfile::constant(0.0, m.band_center_thz());
  m.nf0 = SpectralProfile::constant(band == Band::C ? kNf0CDb : kNf0LDb, m.band_center_thz());
  m.gain_range_db[0] = 5.0;
  m.gain_range_db[1] = 35.0;
  m.tilt_range_db[0] = -3.0;
  m.tilt_range_db[1] = 3.0;
  m.nf_penalty_slope = 0.3;
  m.design_gain_db = design_gain_db;
  return m;
}

/// Six-span replica topology. Amplifier gains are set to compensate the
/// datasheet span loss (band-mean attenuation plus nominal connectors plus
/// the ROADM at the second site); tilts start at zero.
inline LinkTopology build_replica_topology(double launch_power_dbm = 0.0,
                                           double dummy_power_dbm = 0.0) {
  using namespace replica_defaults;
  LinkTopology topo;
  topo.grid = build_replica_grid();
  topo.launch_power_dbm.assign(topo.grid.size(), dummy_power_dbm);
  for (std::size_t i = 0; i < topo.grid.size(); ++i) {
    if (topo.grid.channels[i].role == ChannelRole::CUT) {
      topo.launch_power_dbm[i] = launch_power_dbm;
    }
  }
  topo.roadm_site_index = kRoadmSiteIndex;
  topo.roadm_loss_db = kRoadmLossDb;

  const SpectralProfile att = replica_attenuation_profile();
  std::vector<double> c_freqs, l_freqs;
  for (const Channel& ch : topo.grid.channels) {
    (ch.band == Band::C ? c_freqs : l_freqs).push_back(ch.center_frequency_thz);
  }
  const double alpha_c = att.mean_over(c_freqs);
  const double alpha_l = att.mean_over(l_freqs);

  std::vector<double> lengths(6, (kTotalKm - kMaxSpanKm) / 5.0);
  lengths[0] = kMaxSpanKm;

  const char* cities[] = {"siteA", "siteB", "siteC", "siteD", "siteE", "siteRx"};
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    LinkElement e;
    e.span.length_km = lengths[k];
    e.span.attenuation = att;
    e.span.raman_slope = kRamanSlope;
    e.span.raman_clip_thz = 15.0;
    e.span.connector_in_db = kConnectorDb;
    e.span.connector_out_db = kConnectorDb;
    e.span.gamma_per_w_km = 1.3;
    e.span.dispersion_ps_nm_km = 17.0;

    const double extra = 2.0 * kConnectorDb + (k == kRoadmSiteIndex ? kRoadmLossDb : 0.0);
    const double gain_c = alpha_c * lengths[k] + extra;
    const double gain_l = alpha_l * lengths[k] + extra;

    e.site.name = cities[k];
    e.site.c_model = make_replica_edfa(Band::C, gain_c);
    e.site.l_model = make_replica_edfa(Band::L, gain_l);
    e.site.c_config = {gain_c, 0.0};
    e.site.l_config = {gain_l, 0.0};
    e.site.has_ocm = true;
    e.site.has_osnr_monitor = true;
    topo.elements.push_back(std::move(e));
  }
  topo.validate();
  return topo;
}

inline std::vector<bool> full_load_mask(const ChannelGrid& grid) {
  return std::vector<bool>(grid.size(), true);
}

}  // namespace linktwin
