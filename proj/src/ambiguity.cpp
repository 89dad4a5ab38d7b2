#include "afdm/ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace afdm {

namespace {

void require_body(const TimeSignal& s, const char* what) {
  if (s.samples.empty()) throw ValidationError(std::string(what) + ": empty signal");
  if (s.has_prefix()) throw ValidationError(std::string(what) + ": remove the prefix first");
}

double energy_or_throw(const TimeSignal& s, const char* what) {
  const double e = s.energy();
  if (!(e > 0.0)) throw ValidationError(std::string(what) + ": signal has zero energy");
  return e;
}

}  // namespace

CVector zero_doppler_cut(const TimeSignal& signal) {
  require_body(signal, "zero_doppler_cut");
  const double inv = 1.0 / energy_or_throw(signal, "zero_doppler_cut");
  const auto n = static_cast<std::ptrdiff_t>(signal.samples.size());
  const auto& s = signal.samples;
  CVector cut(static_cast<std::size_t>(2 * n - 1));

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t l = -(n - 1); l < n; ++l) {
    Complex acc{};
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, -l);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n, n - l);
    for (std::ptrdiff_t k = lo; k < hi; ++k) acc += cmul_conj(s[k + l], s[k]);
    cut[l + n - 1] = acc * inv;
  }
  return cut;
}

CVector zero_delay_cut(const TimeSignal& signal, std::span<const double> doppler_hz) {
  require_body(signal, "zero_delay_cut");
  if (doppler_hz.empty()) throw ValidationError("zero_delay_cut: empty Doppler grid");
  const double inv = 1.0 / energy_or_throw(signal, "zero_delay_cut");
  const double fs = signal.sample_rate_hz;
  if (!(fs > 0.0)) throw ValidationError("zero_delay_cut: sample rate must be positive");
  const auto& s = signal.samples;
  CVector cut(doppler_hz.size());

#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < doppler_hz.size(); ++i) {
    const double f = doppler_hz[i] / fs;
    Complex acc{};
    for (std::size_t n = 0; n < s.size(); ++n) acc += std::norm(s[n]) * unit_phasor(f * static_cast<double>(n));
    cut[i] = acc * inv;
  }
  return cut;
}

AmbiguitySurface ambiguity_surface(const TimeSignal& signal, int lag_min, int lag_max,
                                   std::span<const double> doppler_hz) {
  require_body(signal, "ambiguity_surface");
  if (doppler_hz.empty() || lag_max < lag_min) throw ValidationError("ambiguity_surface: empty grid");
  const double inv = 1.0 / energy_or_throw(signal, "ambiguity_surface");
  const double fs = signal.sample_rate_hz;
  if (!(fs > 0.0)) throw ValidationError("ambiguity_surface: sample rate must be positive");
  const auto n = static_cast<std::ptrdiff_t>(signal.samples.size());
  const auto& s = signal.samples;

  AmbiguitySurface surf;
  surf.first_lag = lag_min;
  surf.lag_count = lag_max - lag_min + 1;
  surf.doppler_hz.assign(doppler_hz.begin(), doppler_hz.end());
  surf.values.assign(doppler_hz.size() * static_cast<std::size_t>(surf.lag_count), Complex{});

  const auto rows = static_cast<std::ptrdiff_t>(doppler_hz.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const double f = doppler_hz[static_cast<std::size_t>(r)] / fs;
    CVector ramp(static_cast<std::size_t>(n));
    for (std::ptrdiff_t k = 0; k < n; ++k) ramp[k] = unit_phasor(f * static_cast<double>(k));
    for (int l = lag_min; l <= lag_max; ++l) {
      Complex acc{};
      const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, -l);
      const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n, n - l);
      for (std::ptrdiff_t k = lo; k < hi; ++k) acc += cmul(cmul_conj(s[k + l], s[k]), ramp[k]);
      surf.values[static_cast<std::size_t>(r) * surf.lag_count + (l - lag_min)] = acc * inv;
    }
  }
  return surf;
}

std::vector<double> default_doppler_grid(const WaveformParams& params, int oversample) {
  if (oversample < 1) throw ValidationError("Doppler oversampling must be >= 1");
  const int span = params.k_max + 1;
  const int points = 2 * span * oversample + 1;
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    grid[i] = (static_cast<double>(i) / oversample - span) * params.subcarrier_spacing_hz;
  return grid;
}

double max_offpeak_db(std::span<const Complex> cut) {
  if (cut.empty()) throw ValidationError("empty cut");
  std::size_t peak = 0;
  for (std::size_t i = 1; i < cut.size(); ++i)
    if (std::abs(cut[i]) > std::abs(cut[peak])) peak = i;
  const double p = std::abs(cut[peak]);
  if (!(p > 0.0)) throw ValidationError("cut is identically zero");
  double side = 0.0;
  for (std::size_t i = 0; i < cut.size(); ++i)
    if (i != peak) side = std::max(side, std::abs(cut[i]));
  if (side == 0.0) return -std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(side / p);
}

AbfMetrics abf_metrics(std::span<const Complex> cut) {
  if (cut.empty()) throw ValidationError("abf_metrics: empty cut");
  std::vector<double> mag(cut.size());
  for (std::size_t i = 0; i < cut.size(); ++i) mag[i] = std::abs(cut[i]);
  const auto peak_it = std::max_element(mag.begin(), mag.end());
  const double peak = *peak_it;
  if (!(peak > 0.0)) throw ValidationError("abf_metrics: cut is identically zero");
  const auto peak_idx = static_cast<std::size_t>(peak_it - mag.begin());
  for (auto& v : mag) v /= peak;

  AbfMetrics m;
  constexpr double kHalfPower = 0.70710678118654752440;
  std::size_t lo = peak_idx, hi = peak_idx;
  while (lo > 0 && mag[lo - 1] >= kHalfPower) --lo;
  while (hi + 1 < mag.size() && mag[hi + 1] >= kHalfPower) ++hi;
  m.mainlobe_width_bins = static_cast<int>(hi - lo + 1);

  // Mainlobe extends down to the first local minimum on each side.
  std::size_t ml_lo = peak_idx, ml_hi = peak_idx;
  while (ml_lo > 0 && mag[ml_lo - 1] <= mag[ml_lo]) --ml_lo;
  while (ml_hi + 1 < mag.size() && mag[ml_hi + 1] <= mag[ml_hi]) ++ml_hi;

  constexpr double kNegligible = 1e-12;
  double side_max = 0.0, side_energy = 0.0, main_energy = 0.0;
  for (std::size_t i = 0; i < mag.size(); ++i) {
    const double e = mag[i] * mag[i];
    if (i >= ml_lo && i <= ml_hi) {
      main_energy += e;
    } else {
      side_energy += e;
      side_max = std::max(side_max, mag[i]);
    }
  }
  const double inf = std::numeric_limits<double>::infinity();
  m.pslr_db = side_max < kNegligible ? inf : -20.0 * std::log10(side_max);
  m.islr_db = side_max < kNegligible ? -inf : 10.0 * std::log10(side_energy / main_energy);
  m.max_offpeak_db = max_offpeak_db(cut);
  return m;
}

}  // namespace afdm
