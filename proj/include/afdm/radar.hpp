#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "afdm/channel.hpp"
#include "afdm/estimator.hpp"
#include "afdm/types.hpp"
#include "afdm/waveform.hpp"

namespace afdm {

enum class PilotKind { afdm, otfs };

std::string to_string(PilotKind kind);
PilotKind pilot_kind_from_string(const std::string& name);

// All-ones pilot as a prefixed frame. OTFS gets its delay-Doppler pilot grid
// and a plain cyclic prefix.
TimeSignal radar_frame(PilotKind kind, const WaveformParams& params);

struct RadarScenario {
  WaveformParams params;
  PilotKind pilot = PilotKind::afdm;
  std::vector<TargetGeometry> targets;
  CfarConfig cfar;
  MatchedFilter filter = MatchedFilter::fft;

  // Throws ValidationError when there are no targets or a target does not
  // fit the frame.
  ChannelSpec channel() const;
};

struct RadarFrame {
  RangeProfile profile;
  DetectionReport report;
};

// pilot -> channel -> AWGN at the measured receive power -> prefix removal ->
// matched filter -> CA-CFAR. snr_db = +inf runs noiseless.
RadarFrame simulate_radar_frame(const RadarScenario& scenario, double snr_db, std::uint64_t seed);

struct DetectionStats {
  int trials = 0;
  int all_detected = 0;     // trials where every target bin was declared
  int false_alarms = 0;     // declarations away from every target bin, summed
  double rate() const { return trials ? static_cast<double>(all_detected) / trials : 0.0; }
};

// Trial t uses noise seed mix_seed(seed, t); independent of the thread count.
DetectionStats detection_rate(const RadarScenario& scenario, double snr_db, int trials, std::uint64_t seed);

}  // namespace afdm
