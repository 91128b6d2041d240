#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "linktwin/spectral.hpp"
#include "linktwin/units.hpp"

namespace linktwin {

/// One fiber section between amplifier sites, with lumped connector losses
/// at both ends.
struct FiberSpan {
  double length_km = 0.0;
  SpectralProfile attenuation;      // dB/km over the band hull
  double raman_slope = 0.028;       // Cr, 1/(W*km*THz)
  double raman_clip_thz = 15.0;     // coupling cutoff |f_i - f_j|
  double connector_in_db = 0.5;
  double connector_out_db = 0.5;
  double gamma_per_w_km = 1.3;      // nonlinear coefficient
  double dispersion_ps_nm_km = 17.0;

  void validate() const {
    if (!(length_km > 0.0)) throw std::invalid_argument("span: length must be > 0");
    if (raman_slope < 0.0) throw std::invalid_argument("span: Cr must be >= 0");
    if (!(raman_clip_thz > 0.0)) throw std::invalid_argument("span: raman clip must be > 0");
    if (connector_in_db < 0.0 || connector_out_db < 0.0) {
      throw std::invalid_argument("span: connector losses must be >= 0");
    }
    attenuation.validate();
    for (const ProfileKnot& k : attenuation.knots) {
      if (!(k.value > 0.0)) {
        throw std::invalid_argument("span: attenuation must be > 0 across the band");
      }
    }
  }

  bool operator==(const FiberSpan&) const = default;
};

/// (1 - e^{-aL})/a with a the field loss rate for `alpha_db_per_km`.
inline double effective_length_km(double alpha_db_per_km, double length_km) {
  if (!(alpha_db_per_km > 0.0)) throw std::invalid_argument("effective_length: alpha must be > 0");
  if (!(length_km > 0.0)) throw std::invalid_argument("effective_length: length must be > 0");
  const double a = alpha_db_to_per_km(alpha_db_per_km);
  return (1.0 - std::exp(-a * length_km)) / a;
}

/// Triangular Raman coupling g(i<-j), 1/(W*km): positive when channel j
/// pumps channel i (f_j > f_i), zero beyond the clip, antisymmetric exactly.
inline double srs_coupling(double f_i_thz, double f_j_thz, double raman_slope,
                           double raman_clip_thz) {
  const double delta = f_j_thz - f_i_thz;
  if (delta == 0.0 || std::abs(delta) > raman_clip_thz) return 0.0;
  return raman_slope * delta;
}

struct SpanResult {
  PowerSpectrum output;
  std::vector<double> net_change_db;  // total (signal+ASE) out/in per channel; 0 for dark channels
  bool step_exceeded_length = false;  // requested step > span length; single-step fallback used
  bool clamped_negative = false;      // integrator produced a negative power (step too large)
};

namespace detail {

/// dP_i/dz = P_i (-a_i + C_i), C_i = 1e-3 * sum_j g(i<-j) (S_j + A_j).
/// When the comb fits inside the Raman clip the coupling reduces to two
/// moments of the total-power vector, which keeps the inner loop O(N).
class SrsDerivative {
 public:
  SrsDerivative(const FiberSpan& span, const ChannelGrid& grid) {
    const std::size_t n = grid.size();
    freq_.resize(n);
    loss_rate_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      freq_[i] = grid.frequency_thz(i);
      loss_rate_[i] = alpha_db_to_per_km(span.attenuation.value_at(freq_[i]));
    }
    cr_ = span.raman_slope;
    clip_ = span.raman_clip_thz;
    moment_form_ = (freq_.back() - freq_.front()) <= clip_;
    if (!moment_form_) {
      coupling_.assign(n * n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          coupling_[i * n + j] = srs_coupling(freq_[i], freq_[j], cr_, clip_);
        }
      }
    }
  }

  std::size_t size() const { return freq_.size(); }

  /// y = [signal_0..signal_{n-1}, ase_0..ase_{n-1}] in mW; writes dy.
  void operator()(const std::vector<double>& y, std::vector<double>& dy) const {
    const std::size_t n = freq_.size();
    if (moment_form_) {
      double total = 0.0, weighted = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double t = y[j] + y[n + j];
        total += t;
        weighted += freq_[j] * t;
      }
      for (std::size_t i = 0; i < n; ++i) {
        const double rate = -loss_rate_[i] + cr_ * 1e-3 * (weighted - freq_[i] * total);
        dy[i] = y[i] * rate;
        dy[n + i] = y[n + i] * rate;
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        double c = 0.0;
        const double* row = &coupling_[i * n];
        for (std::size_t j = 0; j < n; ++j) c += row[j] * (y[j] + y[n + j]);
        const double rate = -loss_rate_[i] + 1e-3 * c;
        dy[i] = y[i] * rate;
        dy[n + i] = y[n + i] * rate;
      }
    }
  }

 private:
  std::vector<double> freq_;
  std::vector<double> loss_rate_;
  std::vector<double> coupling_;
  double cr_ = 0.0;
  double clip_ = 0.0;
  bool moment_form_ = false;
};

inline void scale_spectrum(PowerSpectrum& s, double factor) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    s.signal_mw[i] *= factor;
    s.ase_mw[i] *= factor;
  }
}

}  // namespace detail

/// Propagate the comb through one span: connector_in, fixed-step RK4 over
/// attenuation + SRS (ASE co-propagates with the same coupling), connector_out.
inline SpanResult propagate_span(const PowerSpectrum& input, const FiberSpan& span,
                                 const ChannelGrid& grid, double step_km = 0.05) {
  if (!(step_km > 0.0)) throw std::invalid_argument("propagate_span: step must be > 0");
  span.validate();
  input.validate(grid.size());
  const std::size_t n = grid.size();

  SpanResult result;
  result.output = input;
  detail::scale_spectrum(result.output, db_to_linear(-span.connector_in_db));

  if (step_km > span.length_km) result.step_exceeded_length = true;
  const auto steps = static_cast<std::size_t>(
      std::max<long>(1, static_cast<long>(std::ceil(span.length_km / step_km - 1e-12))));
  const double h = span.length_km / static_cast<double>(steps);

  const detail::SrsDerivative deriv(span, grid);
  std::vector<double> y(2 * n), k1(2 * n), k2(2 * n), k3(2 * n), k4(2 * n), tmp(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = result.output.signal_mw[i];
    y[n + i] = result.output.ase_mw[i];
  }

  for (std::size_t s = 0; s < steps; ++s) {
    deriv(y, k1);
    for (std::size_t i = 0; i < 2 * n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    deriv(tmp, k2);
    for (std::size_t i = 0; i < 2 * n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    deriv(tmp, k3);
    for (std::size_t i = 0; i < 2 * n; ++i) tmp[i] = y[i] + h * k3[i];
    deriv(tmp, k4);
    for (std::size_t i = 0; i < 2 * n; ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (y[i] < 0.0) {
        y[i] = 0.0;
        result.clamped_negative = true;
      }
    }
  }

  const double out_factor = db_to_linear(-span.connector_out_db);
  for (std::size_t i = 0; i < n; ++i) {
    result.output.signal_mw[i] = y[i] * out_factor;
    result.output.ase_mw[i] = y[n + i] * out_factor;
  }

  result.net_change_db.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double in_total = input.signal_mw[i] + input.ase_mw[i];
    const double out_total = result.output.signal_mw[i] + result.output.ase_mw[i];
    if (in_total > 0.0 && out_total > 0.0) {
      result.net_change_db[i] = 10.0 * std::log10(out_total / in_total);
    }
  }
  return result;
}

}  // namespace linktwin
