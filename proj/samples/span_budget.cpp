// Minimal usage example: one amplified span, receiver metrics printed per
// channel.
#include <cstdio>

#include "linktwin/link.hpp"
#include "linktwin/replica.hpp"

int main() {
  using namespace linktwin;

  LinkTopology topo = build_replica_topology(0.0);
  topo.elements.resize(1);
  topo.roadm_site_index.reset();

  const PowerSpectrum launch = topo.launch_spectrum(full_load_mask(topo.grid));
  const PropagationTrace trace = propagate_link(topo, launch);
  const ReceiverReport report = receiver_metrics(trace, topo.grid, default_transponder_curve());

  std::printf("%-12s %-5s %-10s %-9s %-9s\n", "f (THz)", "band", "P (dBm)", "OSNR", "GSNR");
  for (const ChannelMetrics& m : report.channels) {
    if (!m.active) continue;
    std::printf("%-12.4f %-5s %-10.3f %-9.3f %-9.3f\n", m.frequency_thz, band_name(m.band),
                m.power_dbm, m.osnr_db, m.gsnr_db);
  }
  return 0;
}
