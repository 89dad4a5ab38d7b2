#pragma once

#include <cstdint>
#include <vector>

#include "afdm/types.hpp"
#include "afdm/waveform.hpp"

namespace afdm {

// Physical scatterer. In monostatic mode r_tx_m == r_rx_m.
struct TargetGeometry {
  double r_tx_m = 0.0;
  double r_rx_m = 0.0;
  double velocity_mps = 0.0;  // closing speed, positive when approaching
  Complex gain{1.0, 0.0};

  static TargetGeometry monostatic(double range_m, double velocity_mps, Complex gain = {1.0, 0.0}) {
    return {range_m, range_m, velocity_mps, gain};
  }
};

// One delay-Doppler path: integer delay l, Doppler k + kappa in units of 1/T.
struct DiscreteTap {
  int delay_bins = 0;
  int doppler_int = 0;
  double doppler_frac = 0.0;
  Complex gain{1.0, 0.0};

  double doppler_bins() const { return doppler_int + doppler_frac; }
  // f_p = (k_p + kappa_p) / Nc, cycles per sample
  double norm_doppler(int nc) const { return doppler_bins() / nc; }

  static DiscreteTap from_doppler(int delay_bins, double doppler_bins, Complex gain);
};

struct ChannelSpec {
  std::vector<DiscreteTap> taps;

  // P >= 1, 0 <= l_p <= L_CP, |k_p| <= k_max, kappa in [-0.5, 0.5].
  void validate(const WaveformParams& params) const;
};

struct NoiseSpec {
  double n0 = 0.0;
  std::uint64_t seed = 0;
};

DiscreteTap discretize_target(const TargetGeometry& target, const WaveformParams& params);

// r[n] = sum_p h_p exp(-j2pi f_p n) s[n - l_p], n = -L_CP .. Nc-1. Samples
// before the frame start are zero.
TimeSignal apply_channel(const TimeSignal& tx, const ChannelSpec& spec, const WaveformParams& params);

// r[n] = sum_p h_p exp(-j2pi f_p n) s[(n - l_p) mod Nc], n = 0 .. Nc-1.
TimeSignal apply_channel_circular(const TimeSignal& signal, const ChannelSpec& spec, const WaveformParams& params);

// Mean |x|^2 / 10^(snr/10); zero for +inf.
double noise_variance_for(const TimeSignal& signal, double snr_db);

// Adds CN(0, N0) with N0 set from the measured signal power.
TimeSignal add_awgn(const TimeSignal& signal, double snr_db, std::uint64_t seed);
TimeSignal add_noise(const TimeSignal& signal, const NoiseSpec& noise);

// P paths, h_p ~ CN(0, 1/P), l_p uniform on {0..L_CP}, k_p + kappa_p uniform
// on [-k_max, k_max].
ChannelSpec rayleigh_channel(int paths, const WaveformParams& params, std::uint64_t seed);

}  // namespace afdm
