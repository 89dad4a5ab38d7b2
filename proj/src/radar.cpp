#include "afdm/radar.hpp"

#include <algorithm>
#include <cmath>

#include "afdm/baselines.hpp"
#include "afdm/rng.hpp"

namespace afdm {

std::string to_string(PilotKind kind) { return kind == PilotKind::afdm ? "afdm" : "otfs"; }

PilotKind pilot_kind_from_string(const std::string& name) {
  if (name == "afdm") return PilotKind::afdm;
  if (name == "otfs") return PilotKind::otfs;
  throw ValidationError("unknown radar pilot '" + name + "' (expected afdm or otfs)");
}

TimeSignal radar_frame(PilotKind kind, const WaveformParams& params) {
  if (kind == PilotKind::otfs) return otfs_modulate(OtfsGrid::pilot_for(params), params);
  return add_cpp(radar_pilot(params), params);
}

ChannelSpec RadarScenario::channel() const {
  if (targets.empty()) throw ValidationError("radar scenario needs at least one target");
  ChannelSpec spec;
  for (const auto& t : targets) spec.taps.push_back(discretize_target(t, params));
  spec.validate(params);
  return spec;
}

namespace {

RadarFrame run_frame(const RadarScenario& sc, const ChannelSpec& spec, const TimeSignal& tx, double snr_db,
                     std::uint64_t seed) {
  TimeSignal rx = apply_channel(tx, spec, sc.params);
  if (!(std::isinf(snr_db) && snr_db > 0)) rx = add_awgn(rx, snr_db, seed);
  RadarFrame out;
  if (sc.filter == MatchedFilter::linear) {
    out.profile = matched_filter_linear(rx, tx, sc.params);
  } else {
    out.profile = matched_filter(sc.filter, remove_cpp(rx, sc.params), remove_cpp(tx, sc.params), sc.params);
  }
  out.report = ca_cfar(out.profile, sc.cfar);
  return out;
}

}  // namespace

RadarFrame simulate_radar_frame(const RadarScenario& scenario, double snr_db, std::uint64_t seed) {
  scenario.cfar.validate();
  const ChannelSpec spec = scenario.channel();
  return run_frame(scenario, spec, radar_frame(scenario.pilot, scenario.params), snr_db, seed);
}

DetectionStats detection_rate(const RadarScenario& scenario, double snr_db, int trials, std::uint64_t seed) {
  if (trials < 1) throw ValidationError("detection_rate needs at least one trial");
  scenario.cfar.validate();
  const ChannelSpec spec = scenario.channel();
  const TimeSignal tx = radar_frame(scenario.pilot, scenario.params);
  std::vector<int> expected;
  for (const auto& tap : spec.taps) expected.push_back(tap.delay_bins);

  int hits = 0, false_alarms = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : hits, false_alarms)
  for (int t = 0; t < trials; ++t) {
    const RadarFrame frame = run_frame(scenario, spec, tx, snr_db, mix_seed(seed, static_cast<std::uint64_t>(t)));
    const auto bins = frame.report.bins();
    const bool all = std::all_of(expected.begin(), expected.end(),
                                 [&](int b) { return std::find(bins.begin(), bins.end(), b) != bins.end(); });
    hits += all ? 1 : 0;
    for (int b : bins) false_alarms += std::find(expected.begin(), expected.end(), b) == expected.end() ? 1 : 0;
  }
  return DetectionStats{trials, hits, false_alarms};
}

}  // namespace afdm
