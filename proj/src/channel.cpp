#include "afdm/channel.hpp"

#include <cmath>
#include <string>

#include "afdm/rng.hpp"

namespace afdm {

namespace {

// exp(-j2pi f n) for every n in [first, first + count)
CVector doppler_ramp(double f, std::ptrdiff_t first, std::size_t count) {
  CVector ramp(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double n = static_cast<double>(first + static_cast<std::ptrdiff_t>(i));
    ramp[i] = unit_phasor(-f * n);
  }
  return ramp;
}

}  // namespace

DiscreteTap DiscreteTap::from_doppler(int delay_bins, double doppler_bins, Complex gain) {
  DiscreteTap t;
  t.delay_bins = delay_bins;
  t.doppler_int = static_cast<int>(std::lround(doppler_bins));
  t.doppler_frac = doppler_bins - t.doppler_int;
  t.gain = gain;
  return t;
}

void ChannelSpec::validate(const WaveformParams& params) const {
  if (taps.empty()) throw ValidationError("channel needs at least one path");
  for (std::size_t i = 0; i < taps.size(); ++i) {
    const auto& t = taps[i];
    const std::string which = "path " + std::to_string(i) + ": ";
    if (t.delay_bins < 0 || t.delay_bins >= params.nc)
      throw ValidationError(which + "delay index must satisfy 0 <= l < Nc");
    if (t.delay_bins > params.cp_len)
      throw ValidationError(which + "delay index " + std::to_string(t.delay_bins) + " exceeds the prefix length " +
                            std::to_string(params.cp_len) + "; inter-symbol leakage is not modelled");
    if (std::abs(t.doppler_int) > params.k_max)
      throw ValidationError(which + "integer Doppler index " + std::to_string(t.doppler_int) + " exceeds k_max=" +
                            std::to_string(params.k_max));
    if (!(std::abs(t.doppler_frac) <= 0.5))
      throw ValidationError(which + "fractional Doppler must lie in [-0.5, 0.5]");
    if (!std::isfinite(t.gain.real()) || !std::isfinite(t.gain.imag()))
      throw ValidationError(which + "gain must be finite");
  }
}

DiscreteTap discretize_target(const TargetGeometry& target, const WaveformParams& params) {
  if (target.r_tx_m < 0.0 || target.r_rx_m < 0.0) throw ValidationError("target ranges must be nonnegative");
  if (params.geometry == Geometry::monostatic && target.r_tx_m != target.r_rx_m)
    throw ValidationError("monostatic target must have equal transmit and receive ranges");
  const double c = params.speed_of_light;
  const double delay_s = (target.r_tx_m + target.r_rx_m) / c;
  const double doppler_hz = 2.0 * target.velocity_mps * params.carrier_hz / c;
  const double delay_bins = params.bandwidth_hz() * delay_s;
  const long l = std::lround(delay_bins);
  if (l >= params.nc)
    throw ValidationError("target delay of " + std::to_string(delay_bins) +
                          " bins is beyond the unambiguous range (l_max < Nc = " + std::to_string(params.nc) + ")");
  return DiscreteTap::from_doppler(static_cast<int>(l), params.duration_s() * doppler_hz, target.gain);
}

TimeSignal apply_channel(const TimeSignal& tx, const ChannelSpec& spec, const WaveformParams& params) {
  spec.validate(params);
  const auto frame = static_cast<std::size_t>(params.nc + params.cp_len);
  if (tx.samples.size() != frame || tx.prefix_len != static_cast<std::size_t>(params.cp_len))
    throw ValidationError("apply_channel: transmit frame must carry its " + std::to_string(params.cp_len) +
                          "-sample prefix");
  const std::ptrdiff_t first = -static_cast<std::ptrdiff_t>(params.cp_len);
  const auto len = static_cast<std::ptrdiff_t>(frame);

  TimeSignal rx{CVector(frame), tx.prefix_len, tx.sample_rate_hz};
  for (const auto& tap : spec.taps) {
    const CVector ramp = doppler_ramp(tap.norm_doppler(params.nc), first, frame);
    const std::ptrdiff_t l = tap.delay_bins;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = l; i < len; ++i) {
      rx.samples[i] += cmul(tap.gain, cmul(ramp[i], tx.samples[i - l]));
    }
  }
  return rx;
}

TimeSignal apply_channel_circular(const TimeSignal& signal, const ChannelSpec& spec, const WaveformParams& params) {
  if (signal.has_prefix()) throw ValidationError("apply_channel_circular: prefix must be removed");
  if (static_cast<int>(signal.samples.size()) != params.nc)
    throw ValidationError("apply_channel_circular: expected " + std::to_string(params.nc) + " samples");
  if (spec.taps.empty()) throw ValidationError("channel needs at least one path");
  const int nc = params.nc;
  TimeSignal rx{CVector(nc), 0, signal.sample_rate_hz};
  for (const auto& tap : spec.taps) {
    if (tap.delay_bins < 0 || tap.delay_bins >= nc) throw ValidationError("delay index must satisfy 0 <= l < Nc");
    const CVector ramp = doppler_ramp(tap.norm_doppler(nc), 0, static_cast<std::size_t>(nc));
    const int l = tap.delay_bins;
#pragma omp parallel for schedule(static)
    for (int n = 0; n < nc; ++n) {
      const int src = n >= l ? n - l : n - l + nc;
      rx.samples[n] += cmul(tap.gain, cmul(ramp[n], signal.samples[src]));
    }
  }
  return rx;
}

double noise_variance_for(const TimeSignal& signal, double snr_db) {
  if (std::isinf(snr_db) && snr_db > 0) return 0.0;
  if (!std::isfinite(snr_db)) throw ValidationError("SNR must be finite or +inf");
  if (signal.samples.empty()) return 0.0;
  const double power = signal.energy() / static_cast<double>(signal.samples.size());
  return power / std::pow(10.0, snr_db / 10.0);
}

TimeSignal add_noise(const TimeSignal& signal, const NoiseSpec& noise) {
  if (!(noise.n0 >= 0.0)) throw ValidationError("noise variance must be nonnegative");
  TimeSignal out = signal;
  if (noise.n0 == 0.0) return out;
  Rng rng(noise.seed);
  for (auto& v : out.samples) v += rng.complex_normal(noise.n0);
  return out;
}

TimeSignal add_awgn(const TimeSignal& signal, double snr_db, std::uint64_t seed) {
  return add_noise(signal, NoiseSpec{noise_variance_for(signal, snr_db), seed});
}

ChannelSpec rayleigh_channel(int paths, const WaveformParams& params, std::uint64_t seed) {
  if (paths < 1) throw ValidationError("Rayleigh channel needs at least one path");
  Rng rng(seed);
  ChannelSpec spec;
  spec.taps.reserve(static_cast<std::size_t>(paths));
  const double var = 1.0 / paths;
  for (int p = 0; p < paths; ++p) {
    const Complex h = rng.complex_normal(var);
    const int l = static_cast<int>(rng.uniform_int(0, params.cp_len));
    const double nu = rng.uniform(-static_cast<double>(params.k_max), static_cast<double>(params.k_max));
    spec.taps.push_back(DiscreteTap::from_doppler(l, nu, h));
  }
  return spec;
}

}  // namespace afdm
