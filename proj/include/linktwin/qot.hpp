#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "linktwin/fiber.hpp"
#include "linktwin/spectral.hpp"
#include "linktwin/units.hpp"

namespace linktwin {

/// Back-to-back transponder characterization. Interpolation runs in
/// (snr_dB, log10 ber) space, which makes the curve log-linear between knots.
struct TransponderCurve {
  struct Point {
    double snr_db = 0.0;
    double ber = 0.0;
    bool operator==(const Point&) const = default;
  };
  std::vector<Point> points;

  void validate() const {
    if (points.size() < 2) throw std::invalid_argument("curve: needs at least two points");
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!(points[i].ber > 0.0 && points[i].ber < 0.5)) {
        throw std::invalid_argument("curve: ber must be in (0, 0.5)");
      }
      if (i > 0) {
        if (!(points[i].snr_db > points[i - 1].snr_db)) {
          throw std::invalid_argument("curve: snr must be strictly increasing");
        }
        if (!(points[i].ber < points[i - 1].ber)) {
          throw std::invalid_argument("curve: ber must be strictly decreasing");
        }
      }
    }
  }

  double snr_to_ber(double snr_db) const {
    validate_query(snr_db, points.front().snr_db, points.back().snr_db, "snr_db");
    std::size_t hi = 1;
    while (hi + 1 < points.size() && points[hi].snr_db < snr_db) ++hi;
    const Point& a = points[hi - 1];
    const Point& b = points[hi];
    const double t = (snr_db - a.snr_db) / (b.snr_db - a.snr_db);
    return std::pow(10.0, std::log10(a.ber) + t * (std::log10(b.ber) - std::log10(a.ber)));
  }

  double ber_to_snr(double ber) const {
    validate_query(ber, points.back().ber, points.front().ber, "ber");
    std::size_t hi = 1;
    while (hi + 1 < points.size() && points[hi].ber > ber) ++hi;
    const Point& a = points[hi - 1];
    const Point& b = points[hi];
    const double t = (std::log10(ber) - std::log10(a.ber)) / (std::log10(b.ber) - std::log10(a.ber));
    return a.snr_db + t * (b.snr_db - a.snr_db);
  }

  double snr_min_db() const { return points.front().snr_db; }
  double snr_max_db() const { return points.back().snr_db; }

  bool operator==(const TransponderCurve&) const = default;

 private:
  static void validate_query(double q, double lo, double hi, const char* what) {
    if (q < lo || q > hi) {
      std::ostringstream os;
      os << "curve: " << what << " " << q << " outside hull [" << lo << ", " << hi << "]";
      throw std::invalid_argument(os.str());
    }
  }
};

/// The shipped PCS-16QAM-like curve: BER = 0.5 erfc(sqrt(SNR_lin)/sqrt(2) * c),
/// c fixed so BER(17 dB) = 2e-2. Generated once; treated as measured data.
inline TransponderCurve default_transponder_curve() {
  constexpr double c_mod = 0.29009974434955327;
  TransponderCurve curve;
  for (double snr = 8.0; snr <= 30.0 + 1e-9; snr += 0.25) {
    const double ber = 0.5 * std::erfc(std::sqrt(db_to_linear(snr)) / std::sqrt(2.0) * c_mod);
    curve.points.push_back({snr, ber});
  }
  curve.validate();
  return curve;
}

inline TransponderCurve load_transponder_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("curve: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("curve: " + path + " is empty");
  if (line.find("snr") == std::string::npos) {
    throw std::invalid_argument("curve: " + path + " missing header line");
  }
  TransponderCurve curve;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a, b;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b)) {
      throw std::invalid_argument("curve: " + path + ":" + std::to_string(lineno) +
                                  ": expected snr_db,ber");
    }
    curve.points.push_back({std::stod(a), std::stod(b)});
  }
  curve.validate();
  return curve;
}

inline void save_transponder_curve_csv(const TransponderCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("curve: cannot write " + path);
  out << "snr_db,ber\n";
  char buf[64];
  for (const auto& p : curve.points) {
    std::snprintf(buf, sizeof(buf), "%.9f,%.12e\n", p.snr_db, p.ber);
    out << buf;
  }
}

/// Per-channel nonlinear interference power, mW in each channel's
/// symbol-rate bandwidth, referenced to the span launch point.
struct NliResult {
  std::vector<double> p_nli_mw;
};

/// Incoherent GN estimate for one span: SPM closed form plus pairwise XPM
/// terms, evaluated from the post-connector launch powers. Signal only acts
/// as pump.
inline NliResult nli_span(const PowerSpectrum& launch, const FiberSpan& span,
                          const ChannelGrid& grid) {
  launch.validate(grid.size());
  const std::size_t n = grid.size();
  NliResult result;
  result.p_nli_mw.assign(n, 0.0);

  const double gamma = span.gamma_per_w_km * 1e-3;  // 1/(W*m)
  std::vector<double> freq_hz(n), beta2(n), leff_m(n), leffa_m(n), bw_hz(n), p_w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f_thz = grid.frequency_thz(i);
    freq_hz[i] = f_thz * 1e12;
    const double lambda_m = kLightSpeedMps / freq_hz[i];
    // beta2 = -D lambda^2 / (2 pi c), D in s/m^2; magnitude used below.
    const double d_si = span.dispersion_ps_nm_km * 1e-6;
    beta2[i] = d_si * lambda_m * lambda_m / (2.0 * std::numbers::pi * kLightSpeedMps);
    if (beta2[i] == 0.0) throw std::invalid_argument("nli: beta2 = 0 is a model singularity");
    const double alpha_db = span.attenuation.value_at(f_thz);
    leff_m[i] = effective_length_km(alpha_db, span.length_km) * 1e3;
    leffa_m[i] = 1e3 / alpha_db_to_per_km(alpha_db);
    bw_hz[i] = grid.channels[i].symbol_rate_ghz * 1e9;
    p_w[i] = launch.signal_mw[i] * 1e-3;
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!launch.active[i]) continue;
    const double g2l2 = gamma * gamma * leff_m[i] * leff_m[i];
    const double phase_i = beta2[i] * leffa_m[i] * bw_hz[i] * bw_hz[i];
    const double eta_spm = (8.0 / 27.0) * g2l2 *
                           std::asinh(0.5 * std::numbers::pi * std::numbers::pi * phase_i) /
                           (std::numbers::pi * phase_i);
    double p_nli_w = eta_spm * p_w[i] * p_w[i] * p_w[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !launch.active[j] || p_w[j] == 0.0) continue;
      const double df_hz = std::abs(freq_hz[i] - freq_hz[j]);
      if (df_hz <= 0.5 * bw_hz[j]) {
        throw std::invalid_argument("nli: channels " + std::to_string(i) + " and " +
                                    std::to_string(j) + " overlap spectrally");
      }
      const double eta_xpm =
          (16.0 / 27.0) * g2l2 /
          (2.0 * std::numbers::pi * beta2[i] * leffa_m[i] * bw_hz[j] * bw_hz[j]) *
          std::log((df_hz + 0.5 * bw_hz[j]) / (df_hz - 0.5 * bw_hz[j]));
      p_nli_w += eta_xpm * p_w[i] * p_w[j] * p_w[j];
    }
    result.p_nli_mw[i] = p_nli_w * 1e3;
  }
  return result;
}

/// Generalized SNR, all three powers referenced to the same bandwidth.
inline double gsnr_db(double p_sig_mw, double p_ase_mw, double p_nli_mw) {
  if (!(p_sig_mw > 0.0)) throw std::invalid_argument("gsnr: signal power must be > 0");
  const double denom = p_ase_mw + p_nli_mw;
  if (!(denom > 0.0)) throw std::invalid_argument("gsnr: ASE + NLI must be > 0");
  return 10.0 * std::log10(p_sig_mw / denom);
}

/// OSNR in the 12.5 GHz (0.1 nm) reference bandwidth, given ASE in the
/// channel's own bandwidth. Zero ASE reports the documented ceiling.
inline double osnr_ref_db(double p_sig_mw, double p_ase_in_bi_mw, double b_i_ghz) {
  if (!(p_sig_mw > 0.0)) throw std::invalid_argument("osnr: signal power must be > 0");
  if (!(b_i_ghz > 0.0)) throw std::invalid_argument("osnr: bandwidth must be > 0");
  if (p_ase_in_bi_mw <= 0.0) return kOsnrCeilingDb;
  return 10.0 * std::log10(p_sig_mw / (p_ase_in_bi_mw * (12.5 / b_i_ghz)));
}

}  // namespace linktwin
