#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linktwin/amplifier.hpp"
#include "linktwin/fiber.hpp"
#include "linktwin/qot.hpp"
#include "linktwin/spectral.hpp"
#include "linktwin/units.hpp"

namespace linktwin {

/// One amplifier site with separate C- and L-band EDFAs and its monitoring
/// capabilities.
struct AmpSite {
  std::string name;
  EdfaModel c_model;
  EdfaModel l_model;
  EdfaConfig c_config;
  EdfaConfig l_config;
  bool has_ocm = true;
  bool has_osnr_monitor = true;

  const EdfaModel& model(Band b) const { return b == Band::C ? c_model : l_model; }
  EdfaModel& model(Band b) { return b == Band::C ? c_model : l_model; }
  const EdfaConfig& config(Band b) const { return b == Band::C ? c_config : l_config; }
  EdfaConfig& config(Band b) { return b == Band::C ? c_config : l_config; }

  void validate() const {
    c_model.validate();
    l_model.validate();
    if (c_model.band != Band::C || l_model.band != Band::L) {
      throw std::invalid_argument("site " + name + ": band models assigned to wrong bands");
    }
    if (l_model.band_hi_thz >= c_model.band_lo_thz) {
      throw std::invalid_argument("site " + name + ": band models overlap");
    }
    c_model.check_config(c_config);
    l_model.check_config(l_config);
  }

  bool operator==(const AmpSite&) const = default;
};

struct LinkElement {
  FiberSpan span;
  AmpSite site;

  bool operator==(const LinkElement&) const = default;
};

/// Ordered spans and amplifier sites plus the launch plan. The optional
/// ROADM sits between its span's output and that site's amplifier input,
/// modeled as a flat insertion loss.
struct LinkTopology {
  ChannelGrid grid;
  std::vector<double> launch_power_dbm;  // per channel
  std::vector<LinkElement> elements;
  std::optional<std::size_t> roadm_site_index;
  double roadm_loss_db = 14.0;

  void validate() const {
    grid.validate();
    if (elements.empty()) throw std::invalid_argument("topology: needs at least one element");
    if (launch_power_dbm.size() != grid.size()) {
      throw std::invalid_argument("topology: launch power count does not match grid");
    }
    if (roadm_site_index && *roadm_site_index >= elements.size()) {
      throw std::invalid_argument("topology: roadm_site_index out of range");
    }
    if (roadm_loss_db < 0.0) throw std::invalid_argument("topology: roadm loss must be >= 0");
    for (const LinkElement& e : elements) {
      e.span.validate();
      e.site.validate();
    }
  }

  std::size_t site_index(const std::string& name) const {
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (elements[i].site.name == name) return i;
    }
    throw std::invalid_argument("topology: no site named " + name);
  }

  /// Launch spectrum for a loading mask: active channels at their configured
  /// power, no ASE at the transmitter.
  PowerSpectrum launch_spectrum(const std::vector<bool>& active_mask) const {
    if (active_mask.size() != grid.size()) {
      throw std::invalid_argument("topology: loading mask does not match grid");
    }
    PowerSpectrum s = PowerSpectrum::zeros(grid.size());
    s.active = active_mask;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (active_mask[i]) s.signal_mw[i] = dbm_to_mw(launch_power_dbm[i]);
    }
    return s;
  }

  bool operator==(const LinkTopology&) const = default;
};

struct PropagationOptions {
  double step_km = 0.05;
  bool with_nli = true;

  bool operator==(const PropagationOptions&) const = default;
};

/// Per-element probe spectra. span_output is the spectrum presented to the
/// amplifier (after connector_out, and after the ROADM when this is the
/// ROADM site), matching where the OCM at the EDFA front sits.
struct ElementTrace {
  PowerSpectrum span_input;   // after connector_in, i.e. fiber launch
  PowerSpectrum span_output;  // amplifier input
  PowerSpectrum amp_output;
  NliResult span_nli;         // referenced to span_input powers
  bool step_exceeded_length = false;
  bool clamped_negative = false;
};

struct ReceiverState {
  std::vector<double> p_sig_mw;
  std::vector<double> p_ase_mw;
  std::vector<double> p_nli_mw;  // accumulated, carried to the receiver
  std::vector<double> gsnr_db;   // symbol-rate bandwidth; ceiling when noiseless
  std::vector<double> osnr_db;   // 12.5 GHz reference
};

struct PropagationTrace {
  std::vector<ElementTrace> elements;
  ReceiverState receiver;
  bool has_nli = false;
};

/// Propagate a launch spectrum through the whole link. Deterministic:
/// identical inputs produce bit-identical traces.
inline PropagationTrace propagate_link(const LinkTopology& topology, const PowerSpectrum& launch,
                                       const PropagationOptions& options = {}) {
  topology.validate();
  launch.validate(topology.grid.size());
  const std::size_t n = topology.grid.size();

  PropagationTrace trace;
  trace.has_nli = options.with_nli;
  trace.elements.reserve(topology.elements.size());
  PowerSpectrum current = launch;

  for (std::size_t k = 0; k < topology.elements.size(); ++k) {
    const LinkElement& element = topology.elements[k];
    try {
      ElementTrace et;
      et.span_input = current;
      detail::scale_spectrum(et.span_input, db_to_linear(-element.span.connector_in_db));
      if (options.with_nli) {
        et.span_nli = nli_span(et.span_input, element.span, topology.grid);
      } else {
        et.span_nli.p_nli_mw.assign(n, 0.0);
      }

      SpanResult sr = propagate_span(current, element.span, topology.grid, options.step_km);
      et.step_exceeded_length = sr.step_exceeded_length;
      et.clamped_negative = sr.clamped_negative;
      et.span_output = std::move(sr.output);
      if (topology.roadm_site_index && *topology.roadm_site_index == k) {
        detail::scale_spectrum(et.span_output, db_to_linear(-topology.roadm_loss_db));
      }

      et.amp_output = amplify(et.span_output, element.site.c_model, element.site.c_config,
                              topology.grid);
      et.amp_output = amplify(et.amp_output, element.site.l_model, element.site.l_config,
                              topology.grid);
      current = et.amp_output;
      trace.elements.push_back(std::move(et));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("element " + std::to_string(k) + " (" + element.site.name +
                                  "): " + e.what());
    }
  }

  ReceiverState& rx = trace.receiver;
  rx.p_sig_mw = current.signal_mw;
  rx.p_ase_mw = current.ase_mw;
  rx.p_nli_mw.assign(n, 0.0);
  // Each span's NLI rides to the receiver with the same net gain its signal
  // sees from the span launch point onward.
  for (const ElementTrace& et : trace.elements) {
    for (std::size_t i = 0; i < n; ++i) {
      const double launch_mw = et.span_input.signal_mw[i];
      if (launch_mw > 0.0 && et.span_nli.p_nli_mw[i] > 0.0) {
        rx.p_nli_mw[i] += et.span_nli.p_nli_mw[i] * (rx.p_sig_mw[i] / launch_mw);
      }
    }
  }
  rx.gsnr_db.assign(n, 0.0);
  rx.osnr_db.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!current.active[i] || rx.p_sig_mw[i] <= 0.0) continue;
    const double denom = rx.p_ase_mw[i] + rx.p_nli_mw[i];
    rx.gsnr_db[i] = denom > 0.0 ? gsnr_db(rx.p_sig_mw[i], rx.p_ase_mw[i], rx.p_nli_mw[i])
                                : kOsnrCeilingDb;
    rx.osnr_db[i] = osnr_ref_db(rx.p_sig_mw[i], rx.p_ase_mw[i],
                                topology.grid.channels[i].symbol_rate_ghz);
  }
  return trace;
}

/// Receiver-side per-channel report. BER is predicted for CUT channels by
/// the transponder curve; GSNR outside the curve hull is clamped and flagged.
struct ChannelMetrics {
  double frequency_thz = 0.0;
  Band band = Band::C;
  ChannelRole role = ChannelRole::DUMMY;
  bool active = false;
  double power_dbm = 0.0;
  double osnr_db = 0.0;
  double gsnr_db = 0.0;
  double ber = 0.0;             // CUT channels only
  bool ber_valid = false;
  bool gsnr_hull_clamped = false;
};

struct ReceiverReport {
  std::vector<ChannelMetrics> channels;
};

inline ReceiverReport receiver_metrics(const PropagationTrace& trace, const ChannelGrid& grid,
                                       const TransponderCurve& curve) {
  if (trace.receiver.p_sig_mw.size() != grid.size()) {
    throw std::invalid_argument("receiver_metrics: trace does not match grid");
  }
  ReceiverReport report;
  report.channels.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ChannelMetrics& m = report.channels[i];
    const Channel& ch = grid.channels[i];
    m.frequency_thz = ch.center_frequency_thz;
    m.band = ch.band;
    m.role = ch.role;
    m.active = trace.receiver.p_sig_mw[i] > 0.0;
    if (!m.active) continue;
    m.power_dbm = mw_to_dbm(trace.receiver.p_sig_mw[i] + trace.receiver.p_ase_mw[i]);
    m.osnr_db = trace.receiver.osnr_db[i];
    m.gsnr_db = trace.receiver.gsnr_db[i];
    if (ch.role == ChannelRole::CUT) {
      double q = m.gsnr_db;
      if (q < curve.snr_min_db()) {
        q = curve.snr_min_db();
        m.gsnr_hull_clamped = true;
      } else if (q > curve.snr_max_db()) {
        q = curve.snr_max_db();
        m.gsnr_hull_clamped = true;
      }
      m.ber = curve.snr_to_ber(q);
      m.ber_valid = true;
    }
  }
  return report;
}

}  // namespace linktwin
