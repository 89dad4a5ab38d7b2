#include "afdm/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "afdm/rng.hpp"
#include "kernels.hpp"

namespace afdm {

namespace {

void require_same_body(const TimeSignal& r, const TimeSignal& s, const WaveformParams& params, const char* what) {
  if (r.has_prefix() || s.has_prefix())
    throw ValidationError(std::string(what) + ": signals must have the prefix removed");
  if (static_cast<int>(r.samples.size()) != params.nc || static_cast<int>(s.samples.size()) != params.nc)
    throw ValidationError(std::string(what) + ": both signals must have Nc = " + std::to_string(params.nc) +
                          " samples");
}

}  // namespace

std::vector<double> RangeProfile::magnitude() const {
  std::vector<double> m(response.size());
  for (std::size_t i = 0; i < response.size(); ++i) m[i] = std::abs(response[i]);
  return m;
}

std::vector<int> DetectionReport::bins() const {
  std::vector<int> b;
  b.reserve(detections.size());
  for (const auto& d : detections) b.push_back(d.bin);
  return b;
}

void CfarConfig::validate() const {
  if (train < 1) throw ValidationError("CFAR needs at least one training cell per side");
  if (guard < 0) throw ValidationError("CFAR guard cells must be nonnegative");
  if (!(pfa > 0.0 && pfa < 1.0)) throw ValidationError("CFAR false-alarm probability must be in (0, 1)");
  if (peak_radius < 0) throw ValidationError("CFAR peak radius must be nonnegative");
}

std::string to_string(MatchedFilter variant) {
  switch (variant) {
    case MatchedFilter::linear: return "linear";
    case MatchedFilter::circular: return "circular";
    case MatchedFilter::fft: return "fft";
  }
  return "?";
}

MatchedFilter matched_filter_from_string(const std::string& name) {
  if (name == "linear") return MatchedFilter::linear;
  if (name == "circular") return MatchedFilter::circular;
  if (name == "fft") return MatchedFilter::fft;
  throw ValidationError("unknown matched filter '" + name + "' (expected linear, circular or fft)");
}

double bin_to_meters(const WaveformParams& params) {
  const double per_bin = params.speed_of_light / params.bandwidth_hz();
  return params.geometry == Geometry::monostatic ? per_bin / 2.0 : per_bin;
}

RangeProfile matched_filter_linear(const TimeSignal& received, const TimeSignal& reference,
                                   const WaveformParams& params, OpCount* ops) {
  const auto frame = static_cast<std::size_t>(params.nc + params.cp_len);
  const auto lead = static_cast<std::size_t>(params.cp_len);
  for (const TimeSignal* sig : {&received, &reference}) {
    if (sig->samples.size() != frame || sig->prefix_len != lead)
      throw ValidationError("matched_filter_linear: both frames must carry the " + std::to_string(params.cp_len) +
                            "-sample prefix (" + std::to_string(frame) + " samples)");
  }
  CVector padded(2 * frame - 1, Complex{});
  std::copy(received.samples.begin(), received.samples.end(), padded.begin() + static_cast<std::ptrdiff_t>(lead));

  RangeProfile out;
  out.first_bin = -params.cp_len;
  out.response.assign(frame, Complex{});
  out.bin_to_meters = bin_to_meters(params);
  if (ops) {
    kernels::fir_correlate(std::span<const Complex>(padded), reference.samples, out.response, CountingArith(*ops));
  } else {
    kernels::fir_correlate(std::span<const Complex>(padded), reference.samples, out.response, PlainArith{});
  }
  return out;
}

RangeProfile matched_filter_circular(const TimeSignal& received, const TimeSignal& reference,
                                     const WaveformParams& params, OpCount* ops) {
  require_same_body(received, reference, params, "matched_filter_circular");
  RangeProfile out;
  out.response.assign(static_cast<std::size_t>(params.nc), Complex{});
  out.bin_to_meters = bin_to_meters(params);
  if (ops) {
    kernels::circular_correlate(received.samples, reference.samples, out.response, CountingArith(*ops));
  } else {
    kernels::circular_correlate(received.samples, reference.samples, out.response, PlainArith{});
  }
  return out;
}

RangeProfile matched_filter_fft(const TimeSignal& received, const TimeSignal& reference,
                                const WaveformParams& params, OpCount* ops) {
  require_same_body(received, reference, params, "matched_filter_fft");
  RangeProfile out;
  out.bin_to_meters = bin_to_meters(params);
  if (ops) {
    out.response = kernels::fft_correlate(received.samples, reference.samples, CountingArith(*ops));
  } else {
    out.response = kernels::fft_correlate(received.samples, reference.samples, PlainArith{});
  }
  return out;
}

RangeProfile matched_filter(MatchedFilter variant, const TimeSignal& received, const TimeSignal& reference,
                            const WaveformParams& params, OpCount* ops) {
  switch (variant) {
    case MatchedFilter::linear: return matched_filter_linear(received, reference, params, ops);
    case MatchedFilter::circular: return matched_filter_circular(received, reference, params, ops);
    case MatchedFilter::fft: return matched_filter_fft(received, reference, params, ops);
  }
  throw ValidationError("unknown matched filter");
}

double cfar_alpha(int train, double pfa) {
  const double cells = 2.0 * train;
  return cells * (std::pow(pfa, -1.0 / cells) - 1.0);
}

namespace {

struct CfarScan {
  std::vector<double> power;
  std::vector<double> threshold;  // power units
};

CfarScan cfar_scan(const RangeProfile& profile, const CfarConfig& config) {
  config.validate();
  const auto n = static_cast<std::ptrdiff_t>(profile.size());
  const std::ptrdiff_t reach = config.guard + config.train;
  if (2 * reach + 1 > n)
    throw ValidationError("CFAR window of " + std::to_string(2 * reach + 1) + " cells exceeds the profile length " +
                          std::to_string(n));
  CfarScan scan;
  scan.power.resize(static_cast<std::size_t>(n));
  scan.threshold.resize(static_cast<std::size_t>(n));
  for (std::ptrdiff_t i = 0; i < n; ++i) scan.power[i] = std::norm(profile.response[i]);
  const double alpha = cfar_alpha(config.train, config.pfa);
  const double inv_cells = 1.0 / (2.0 * config.train);
  auto wrap = [n](std::ptrdiff_t i) { return ((i % n) + n) % n; };
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double noise = 0.0;
    for (std::ptrdiff_t d = config.guard + 1; d <= reach; ++d)
      noise += scan.power[wrap(i - d)] + scan.power[wrap(i + d)];
    scan.threshold[i] = alpha * noise * inv_cells;
  }
  return scan;
}

}  // namespace

std::vector<double> cfar_thresholds(const RangeProfile& profile, const CfarConfig& config) {
  auto t = cfar_scan(profile, config).threshold;
  for (auto& v : t) v = std::sqrt(v);
  return t;
}

DetectionReport ca_cfar(const RangeProfile& profile, const CfarConfig& config) {
  const CfarScan scan = cfar_scan(profile, config);
  const auto& power = scan.power;
  const auto n = static_cast<std::ptrdiff_t>(power.size());
  const double peak = *std::max_element(power.begin(), power.end());
  const double floor = peak * std::pow(10.0, config.floor_db / 10.0);
  auto wrap = [n](std::ptrdiff_t i) { return ((i % n) + n) % n; };

  DetectionReport report;
  report.pfa = config.pfa;
  if (!(peak > 0.0)) return report;

  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (power[i] <= floor || !(power[i] > scan.threshold[i])) continue;
    bool is_peak = true;
    for (std::ptrdiff_t d = 1; d <= config.peak_radius && is_peak; ++d)
      is_peak = power[i] >= power[wrap(i - d)] && power[i] >= power[wrap(i + d)];
    if (!is_peak) continue;
    const int bin = profile.first_bin + static_cast<int>(i);
    report.detections.push_back({bin, bin * profile.bin_to_meters, std::sqrt(power[i]), std::sqrt(scan.threshold[i])});
  }
  return report;
}

std::vector<double> bins_to_range(const DetectionReport& report, const WaveformParams& params) {
  const double scale = bin_to_meters(params);
  std::vector<double> r;
  r.reserve(report.detections.size());
  for (const auto& d : report.detections) r.push_back(d.bin * scale);
  return r;
}

std::vector<ComplexityRow> complexity_probe(MatchedFilter variant, std::span<const int> sizes, double cp_fraction,
                                            std::uint64_t seed) {
  if (!(cp_fraction >= 0.0 && cp_fraction < 1.0)) throw ValidationError("prefix fraction must be in [0, 1)");
  std::vector<ComplexityRow> rows;
  for (int nc : sizes) {
    WaveformParams params;
    params.nc = nc;
    params.cp_len = static_cast<int>(std::lround(cp_fraction * nc));
    params.k_max = 0;
    params.c1 = ChirpRate::from_doppler_rule(0, nc);
    params.validate();

    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(nc)));
    const std::size_t len = variant == MatchedFilter::linear ? static_cast<std::size_t>(nc + params.cp_len)
                                                             : static_cast<std::size_t>(nc);
    const std::size_t prefix = variant == MatchedFilter::linear ? static_cast<std::size_t>(params.cp_len) : 0;
    TimeSignal r{CVector(len), prefix, params.sample_rate_hz()};
    TimeSignal s{CVector(len), prefix, params.sample_rate_hz()};
    for (auto& v : r.samples) v = rng.complex_normal(1.0);
    for (auto& v : s.samples) v = rng.complex_normal(1.0);

    ComplexityRow row;
    row.variant = variant;
    row.nc = nc;
    row.cp_len = params.cp_len;
    matched_filter(variant, r, s, params, &row.ops);
    rows.push_back(row);
  }
  return rows;
}

PowerLawFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("fit_loglog: need at least two points");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  PowerLawFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

}  // namespace afdm
