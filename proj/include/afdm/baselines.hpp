#pragma once

#include "afdm/channel.hpp"
#include "afdm/linear_channel.hpp"
#include "afdm/types.hpp"
#include "afdm/waveform.hpp"

namespace afdm {

// OFDM as the chirp-free member of the family: c1 = c2 = 0, so the transform
// is the unitary DFT and the prefix a plain cyclic copy.
WaveformParams ofdm_params(const WaveformParams& params);

// Delay-Doppler grid of M delay bins by N Doppler bins; data[k*M + l] holds
// delay l, Doppler k.
struct OtfsGrid {
  int delay_bins = 0;
  int doppler_bins = 0;
  CVector data;

  Complex& at(int delay, int doppler) { return data[static_cast<std::size_t>(doppler * delay_bins + delay)]; }
  const Complex& at(int delay, int doppler) const {
    return data[static_cast<std::size_t>(doppler * delay_bins + delay)];
  }

  // M = N = sqrt(Nc), zero-filled.
  static OtfsGrid square_for(const WaveformParams& params);
  // Same shape as square_for(), every bin set to one (radar pilot).
  static OtfsGrid pilot_for(const WaveformParams& params);
};

// Time-frequency grid (m subcarrier, n symbol) at data[n*M + m].
struct TfGrid {
  int subcarriers = 0;
  int symbols = 0;
  CVector data;
};

TfGrid otfs_isfft(const OtfsGrid& grid);
OtfsGrid otfs_sfft(const TfGrid& tf);

// ISFFT, rectangular-pulse multicarrier synthesis, then a single reduced
// cyclic prefix of L_CP samples for the whole frame.
TimeSignal otfs_modulate(const OtfsGrid& grid, const WaveformParams& params);
// Inverse chain; accepts the frame with or without its prefix.
OtfsGrid otfs_demodulate(const TimeSignal& received, const WaveformParams& params);

EffectiveChannel otfs_effective_channel(const ChannelSpec& spec, const WaveformParams& params);

}  // namespace afdm
