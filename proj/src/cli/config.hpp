#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "afdm/comm.hpp"
#include "afdm/estimator.hpp"
#include "afdm/radar.hpp"
#include "afdm/waveform.hpp"

namespace afdm::cli {

enum class ExperimentKind { ambiguity_cut, ambiguity_surface, range_profile, ber, complexity };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

enum class CutAxis { zero_doppler, zero_delay };

struct WaveformSection {
  int nc = 256;
  double subcarrier_spacing_hz = 39063.0;
  int k_max = 1;
  int cp_len = 32;
  double carrier_hz = 24e9;
  Geometry geometry = Geometry::monostatic;
  std::vector<WaveformFamily> families{WaveformFamily::afdm};
  // Kept as written so the echo reproduces "1/Nc^2" rather than its value.
  std::vector<std::string> c2{"0"};
};

struct TargetSection {
  double range_tx_m = 0.0;
  double range_rx_m = 0.0;
  double velocity_mps = 0.0;
  double gain = 1.0;
};

struct RadarSection {
  std::vector<double> snr_db{std::numeric_limits<double>::infinity()};
  MatchedFilter filter = MatchedFilter::fft;
  int trials = 0;
};

struct AmbiguitySection {
  CutAxis cut = CutAxis::zero_doppler;
  int doppler_oversample = 4;
  int lag_min = -32;
  int lag_max = 32;
};

struct BerSection {
  BerChannelModel channel = BerChannelModel::rayleigh;
  int paths = 3;
  std::vector<double> snr_db{0.0, 5.0, 10.0, 15.0, 20.0};
  std::uint64_t max_bits = 1'000'000;
  std::uint64_t max_errors = 200;
  int batch = 8;
};

struct ComplexitySection {
  std::vector<int> sizes{64, 128, 256, 512, 1024, 2048, 4096};
  double cp_fraction = 0.125;
  std::vector<MatchedFilter> filters{MatchedFilter::linear, MatchedFilter::circular, MatchedFilter::fft};
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::ambiguity_cut;
  std::string name = "run";
  std::uint64_t seed = 1;
  WaveformSection waveform;
  std::vector<TargetSection> targets;
  RadarSection radar;
  CfarConfig cfar;
  AmbiguitySection ambiguity;
  BerSection ber;
  ComplexitySection complexity;

  // Parameters for one c2 entry; OFDM/OTFS callers pass the first entry.
  WaveformParams params(const std::string& c2_text) const;
  std::vector<TargetGeometry> target_geometry() const;

  // Checks every precondition the selected experiment depends on.
  void validate() const;
};

ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

// Full echo with every key spelled out; parse_config(echo_config(c)) == c.
std::string echo_config(const ExperimentConfig& config);

}  // namespace afdm::cli
