#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "linktwin/qot.hpp"
#include "linktwin/replica.hpp"
#include "oracles.hpp"

using namespace linktwin;
using Catch::Approx;

namespace {

FiberSpan nli_test_span() {
  FiberSpan s;
  s.length_km = 80.0;
  s.attenuation = SpectralProfile::constant(0.2);
  s.gamma_per_w_km = 1.3;
  s.dispersion_ps_nm_km = 17.0;
  s.connector_in_db = 0.0;
  s.connector_out_db = 0.0;
  return s;
}

}  // namespace

TEST_CASE("single-channel SPM matches the independent formula", "[qot][oracle]") {
  ChannelGrid g;
  g.spacing_ghz = 100.0;
  g.channels = {{193.5, 91.6, Band::C, ChannelRole::DUMMY}};
  PowerSpectrum launch = PowerSpectrum::zeros(1);
  launch.active = {true};
  launch.signal_mw = {1.0};

  const NliResult r = nli_span(launch, nli_test_span(), g);
  // Frozen from the scratch evaluation of the closed form.
  CHECK(r.p_nli_mw[0] == Approx(6.629018659578856e-5).epsilon(1e-9));
  CHECK(r.p_nli_mw[0] ==
        Approx(oracles::gn_spm_nli_mw(1.0, 1.3, 17.0, 0.2, 80.0, 91.6, 193.5)).epsilon(1e-12));
}

TEST_CASE("XPM term matches the independent formula", "[qot][oracle]") {
  ChannelGrid g;
  g.spacing_ghz = 100.0;
  g.channels = {{193.5, 91.6, Band::C, ChannelRole::DUMMY},
                {193.6, 91.6, Band::C, ChannelRole::DUMMY}};
  PowerSpectrum launch = PowerSpectrum::zeros(2);
  launch.active = {true, true};
  launch.signal_mw = {1.0, 2.0};

  const NliResult r = nli_span(launch, nli_test_span(), g);
  const double spm = oracles::gn_spm_nli_mw(1.0, 1.3, 17.0, 0.2, 80.0, 91.6, 193.5);
  const double eta_xpm = oracles::gn_xpm_eta_per_w2(1.3, 17.0, 0.2, 80.0, 0.1, 91.6, 193.5);
  const double xpm_mw = eta_xpm * 1e-3 * (2e-3) * (2e-3) * 1e3;
  CHECK(r.p_nli_mw[0] == Approx(spm + xpm_mw).epsilon(1e-9));
}

TEST_CASE("NLI cubic homogeneity", "[qot][property]") {
  const ChannelGrid grid = build_replica_grid();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> pw(0.2, 2.0);
  for (int trial = 0; trial < 5; ++trial) {
    PowerSpectrum launch = PowerSpectrum::zeros(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      launch.active[i] = (rng() % 4) != 0;
      if (launch.active[i]) launch.signal_mw[i] = pw(rng);
    }
    PowerSpectrum scaled = launch;
    for (auto& p : scaled.signal_mw) p *= 10.0;

    const NliResult base = nli_span(launch, nli_test_span(), grid);
    const NliResult big = nli_span(scaled, nli_test_span(), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (base.p_nli_mw[i] > 0.0) {
        CHECK(big.p_nli_mw[i] == Approx(1000.0 * base.p_nli_mw[i]).epsilon(1e-12));
      } else {
        CHECK(big.p_nli_mw[i] == 0.0);
      }
    }
  }
}

TEST_CASE("NLI monotonicity in gamma, length, and pump power", "[qot][property]") {
  ChannelGrid g;
  g.spacing_ghz = 100.0;
  g.channels = {{193.5, 91.6, Band::C, ChannelRole::DUMMY},
                {193.6, 91.6, Band::C, ChannelRole::DUMMY}};
  PowerSpectrum launch = PowerSpectrum::zeros(2);
  launch.active = {true, true};
  launch.signal_mw = {1.0, 1.0};

  FiberSpan base = nli_test_span();
  const double p0 = nli_span(launch, base, g).p_nli_mw[0];

  FiberSpan hot = base;
  hot.gamma_per_w_km = 1.5;
  CHECK(nli_span(launch, hot, g).p_nli_mw[0] > p0);

  FiberSpan longer = base;
  longer.length_km = 120.0;
  CHECK(nli_span(launch, longer, g).p_nli_mw[0] > p0);

  PowerSpectrum pumped = launch;
  pumped.signal_mw[1] = 2.0;
  CHECK(nli_span(pumped, base, g).p_nli_mw[0] > p0);
}

TEST_CASE("NLI rejects overlap and zero dispersion", "[qot]") {
  ChannelGrid g;
  g.spacing_ghz = 100.0;
  g.channels = {{193.5, 91.6, Band::C, ChannelRole::DUMMY},
                {193.54, 91.6, Band::C, ChannelRole::DUMMY}};  // 40 GHz < B/2
  PowerSpectrum launch = PowerSpectrum::zeros(2);
  launch.active = {true, true};
  launch.signal_mw = {1.0, 1.0};
  CHECK_THROWS_AS(nli_span(launch, nli_test_span(), g), std::invalid_argument);

  ChannelGrid lone;
  lone.spacing_ghz = 100.0;
  lone.channels = {{193.5, 91.6, Band::C, ChannelRole::DUMMY}};
  PowerSpectrum one = PowerSpectrum::zeros(1);
  one.active = {true};
  one.signal_mw = {1.0};
  FiberSpan flat = nli_test_span();
  flat.dispersion_ps_nm_km = 0.0;
  CHECK_THROWS_AS(nli_span(one, flat, lone), std::invalid_argument);
}

TEST_CASE("inactive channels get zero NLI", "[qot]") {
  ChannelGrid g;
  g.spacing_ghz = 100.0;
  g.channels = {{193.5, 91.6, Band::C, ChannelRole::DUMMY},
                {193.6, 91.6, Band::C, ChannelRole::DUMMY}};
  PowerSpectrum launch = PowerSpectrum::zeros(2);
  launch.active = {true, false};
  launch.signal_mw = {1.0, 0.0};
  const NliResult r = nli_span(launch, nli_test_span(), g);
  CHECK(r.p_nli_mw[1] == 0.0);
}

TEST_CASE("GSNR arithmetic", "[qot]") {
  CHECK(linktwin::gsnr_db(1.0, 0.01, 0.01) == Approx(16.98970004336019).margin(1e-9));
  CHECK(linktwin::gsnr_db(1.0, 0.01, 0.0) == Approx(20.0).margin(1e-12));
  CHECK_THROWS_AS(linktwin::gsnr_db(1.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(linktwin::gsnr_db(0.0, 0.01, 0.0), std::invalid_argument);
}

TEST_CASE("GSNR harmonic identity", "[qot][property]") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dist(1e-6, 10.0);
  for (int k = 0; k < 1000; ++k) {
    const double sig = dist(rng), ase = dist(rng), nli = dist(rng);
    const double gsnr_lin = db_to_linear(linktwin::gsnr_db(sig, ase, nli));
    const double osnr_lin = sig / ase;
    const double snr_nl_lin = sig / nli;
    const double combined = 1.0 / (1.0 / osnr_lin + 1.0 / snr_nl_lin);
    CHECK(std::abs(1.0 / gsnr_lin - 1.0 / combined) <= 1e-12 * (1.0 / combined));
  }
}

TEST_CASE("OSNR reference bandwidth conversion", "[qot]") {
  CHECK(osnr_ref_db(1.0, 0.01, 12.5) == Approx(20.0).margin(1e-12));
  // Frozen: 20 + 10 log10(91.6/12.5).
  CHECK(osnr_ref_db(1.0, 0.01, 91.6) == Approx(28.64985460659794).margin(1e-9));
  CHECK(osnr_ref_db(1.0, 0.0, 91.6) == Approx(kOsnrCeilingDb));
}

TEST_CASE("transponder curve translation", "[qot]") {
  TransponderCurve curve;
  curve.points = {{15.0, 1e-2}, {17.0, 1e-4}, {19.0, 1e-6}};
  curve.validate();

  CHECK(curve.snr_to_ber(15.0) == Approx(1e-2).epsilon(1e-12));
  CHECK(curve.snr_to_ber(16.0) == Approx(1e-3).epsilon(1e-9));
  CHECK(curve.ber_to_snr(1e-3) == Approx(16.0).margin(1e-9));

  // Inverse pair inside the hull.
  for (double snr = 15.0; snr <= 19.0; snr += 0.1) {
    CHECK(curve.ber_to_snr(curve.snr_to_ber(snr)) == Approx(snr).margin(1e-9));
  }
  // Monotone: higher snr, lower ber.
  double prev = 1.0;
  for (double snr = 15.0; snr <= 19.0; snr += 0.05) {
    const double ber = curve.snr_to_ber(snr);
    CHECK(ber < prev);
    prev = ber;
  }

  CHECK_THROWS_AS(curve.snr_to_ber(14.9), std::invalid_argument);
  CHECK_THROWS_AS(curve.ber_to_snr(1e-8), std::invalid_argument);
  try {
    curve.snr_to_ber(30.0);
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("hull") != std::string::npos);
  }
}

TEST_CASE("curve invariants rejected when violated", "[qot]") {
  TransponderCurve bad;
  bad.points = {{15.0, 1e-2}, {14.0, 1e-4}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.points = {{15.0, 1e-4}, {17.0, 1e-2}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.points = {{15.0, 0.6}, {17.0, 1e-2}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("default curve pins BER(17 dB) = 2e-2", "[qot]") {
  const TransponderCurve curve = default_transponder_curve();
  CHECK(curve.snr_to_ber(17.0) == Approx(2e-2).epsilon(1e-6));
  CHECK(curve.snr_min_db() == Approx(8.0));
  CHECK(curve.snr_max_db() >= 29.9);
}
