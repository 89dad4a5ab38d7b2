#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "afdm/arith.hpp"
#include "afdm/types.hpp"
#include "afdm/waveform.hpp"

namespace afdm {

// Matched-filter output g[n] for bins first_bin .. first_bin + size - 1.
struct RangeProfile {
  int first_bin = 0;
  CVector response;
  double bin_to_meters = 0.0;

  std::size_t size() const { return response.size(); }
  std::vector<double> magnitude() const;
};

struct Detection {
  int bin = 0;
  double range_m = 0.0;
  double magnitude = 0.0;
  double threshold = 0.0;  // same units as magnitude
};

struct DetectionReport {
  std::vector<Detection> detections;
  double pfa = 0.0;

  std::vector<int> bins() const;
};

struct CfarConfig {
  int guard = 2;
  int train = 8;  // per side
  double pfa = 1e-3;
  // A detection must be the largest cell within +-peak_radius. 0 disables
  // pruning, which is what lets one-bin-separated targets both survive noise.
  int peak_radius = 0;
  // Cells this far below the profile peak are never declared; keeps rounding
  // residue in noiseless runs from feeding the detector.
  double floor_db = -200.0;

  void validate() const;
};

enum class MatchedFilter { linear, circular, fft };

std::string to_string(MatchedFilter variant);
MatchedFilter matched_filter_from_string(const std::string& name);

// Range-bin spacing in meters: V_c/(2 Nc df) monostatic, V_c/(Nc df) for the
// bistatic sum range.
double bin_to_meters(const WaveformParams& params);

// Direct-form pulse compression of the prefixed frames: an (Nc+L_CP)-tap FIR
// matched filter run over the zero-padded receive frame, lags -L_CP .. Nc-1.
// g[l] = sum_k r[k] s*[k - l]. Costs (Nc+L_CP)^2 complex multiplies.
RangeProfile matched_filter_linear(const TimeSignal& received, const TimeSignal& reference,
                                   const WaveformParams& params, OpCount* ops = nullptr);

// g[l] = sum_n r[n] s*[(n - l) mod Nc] on prefix-free signals; Nc^2 multiplies.
RangeProfile matched_filter_circular(const TimeSignal& received, const TimeSignal& reference,
                                     const WaveformParams& params, OpCount* ops = nullptr);

// IFFT(FFT(r) . conj(FFT(s))) / Nc; same output as the circular variant.
RangeProfile matched_filter_fft(const TimeSignal& received, const TimeSignal& reference,
                                const WaveformParams& params, OpCount* ops = nullptr);

RangeProfile matched_filter(MatchedFilter variant, const TimeSignal& received, const TimeSignal& reference,
                            const WaveformParams& params, OpCount* ops = nullptr);

// Cell-averaging CFAR over |g|^2 with a circular window of `train` cells on
// each side beyond `guard` cells. alpha = 2T (pfa^(-1/2T) - 1).
DetectionReport ca_cfar(const RangeProfile& profile, const CfarConfig& config);

double cfar_alpha(int train, double pfa);

// Per-cell detection threshold in magnitude units, same window as ca_cfar().
std::vector<double> cfar_thresholds(const RangeProfile& profile, const CfarConfig& config);

std::vector<double> bins_to_range(const DetectionReport& report, const WaveformParams& params);

struct ComplexityRow {
  MatchedFilter variant = MatchedFilter::fft;
  int nc = 0;
  int cp_len = 0;
  OpCount ops;
};

// Runs `variant` with counting arithmetic for every size; the prefix used by
// the linear variant is round(cp_fraction * Nc).
std::vector<ComplexityRow> complexity_probe(MatchedFilter variant, std::span<const int> sizes, double cp_fraction,
                                            std::uint64_t seed);

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;  // natural log
};

// Least-squares fit of log(y) = slope log(x) + intercept.
PowerLawFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace afdm
