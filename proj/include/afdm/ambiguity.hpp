#pragma once

#include <span>
#include <vector>

#include "afdm/types.hpp"
#include "afdm/waveform.hpp"

namespace afdm {

// chi(l, nu) sampled on integer lags x a Doppler grid in Hz, normalised so
// that chi(0, 0) = 1. Stored Doppler-major: values[i_doppler * lags + (l - first_lag)].
struct AmbiguitySurface {
  int first_lag = 0;
  int lag_count = 0;
  std::vector<double> doppler_hz;
  CVector values;

  Complex at(std::size_t doppler_index, int lag) const {
    return values[doppler_index * static_cast<std::size_t>(lag_count) + static_cast<std::size_t>(lag - first_lag)];
  }
};

struct AbfMetrics {
  int mainlobe_width_bins = 1;  // contiguous bins within -3 dB of the peak
  double pslr_db = 0.0;         // peak over the largest sidelobe, +inf if none
  double islr_db = 0.0;         // sidelobe energy over mainlobe energy, -inf if none
  double max_offpeak_db = 0.0;  // largest |chi| anywhere but the peak bin
};

// Aperiodic chi[l] = sum_n s*[n] s[n+l] / sum |s|^2, l = -(N-1) .. N-1.
// Element l + N - 1 holds lag l.
CVector zero_doppler_cut(const TimeSignal& signal);

// chi(0, nu) = sum_n |s[n]|^2 exp(j2pi nu n / fs) / sum |s|^2
CVector zero_delay_cut(const TimeSignal& signal, std::span<const double> doppler_hz);

AmbiguitySurface ambiguity_surface(const TimeSignal& signal, int lag_min, int lag_max,
                                   std::span<const double> doppler_hz);

// Uniform grid over [-(k_max+1), k_max+1] / T with `oversample` points per 1/T.
std::vector<double> default_doppler_grid(const WaveformParams& params, int oversample = 4);

// Metrics of a cut; the peak is located by magnitude.
AbfMetrics abf_metrics(std::span<const Complex> cut);

// 20 log10 of the largest |chi| away from the peak bin, relative to the peak.
double max_offpeak_db(std::span<const Complex> cut);

}  // namespace afdm
