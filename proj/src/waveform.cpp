#include "afdm/waveform.hpp"

#include <cmath>
#include <string>

namespace afdm {

bool WaveformParams::cpp_is_plain_cp() const {
  if (nc % 2 != 0) return false;
  if (c1.is_rational()) {
    __extension__ using Wide = __int128;
    const Wide scaled = static_cast<Wide>(2) * nc * c1.numerator();
    return scaled % c1.denominator() == 0;
  }
  const double x = 2.0 * nc * c1.value();
  return std::floor(x) == x;
}

void WaveformParams::validate() const {
  if (nc < 2) throw ValidationError("Nc must be at least 2 (got " + std::to_string(nc) + ")");
  if (nc % 2 != 0)
    throw ValidationError("Nc must be even for the chirp-periodic prefix to degenerate to a cyclic prefix (got " +
                          std::to_string(nc) + ")");
  if (!(subcarrier_spacing_hz > 0.0) || !std::isfinite(subcarrier_spacing_hz))
    throw ValidationError("subcarrier spacing must be positive");
  if (k_max < 0) throw ValidationError("k_max must be nonnegative");
  if (cp_len < 0 || cp_len >= nc)
    throw ValidationError("prefix length must satisfy 0 <= L_CP < Nc (got L_CP=" + std::to_string(cp_len) +
                          ", Nc=" + std::to_string(nc) + ")");
  if (!(carrier_hz >= 0.0) || !std::isfinite(carrier_hz)) throw ValidationError("carrier frequency must be >= 0");
  if (!(speed_of_light > 0.0)) throw ValidationError("speed of light must be positive");
}

WaveformParams make_params(int nc, double subcarrier_spacing_hz, int k_max, ChirpRate c2, int cp_len,
                           double carrier_hz, Geometry geometry) {
  WaveformParams p;
  p.nc = nc;
  p.subcarrier_spacing_hz = subcarrier_spacing_hz;
  p.k_max = k_max;
  p.c2 = c2;
  p.cp_len = cp_len;
  p.carrier_hz = carrier_hz;
  p.geometry = geometry;
  p.validate();
  p.c1 = ChirpRate::from_doppler_rule(k_max, nc);
  return p;
}

AffineTransform::AffineTransform(const WaveformParams& params)
    : nc_(params.nc), fft_(static_cast<std::size_t>(params.nc)), chirp_time_(params.nc), chirp_freq_(params.nc) {
  for (int i = 0; i < nc_; ++i) {
    const std::int64_t sq = static_cast<std::int64_t>(i) * i;
    chirp_time_[i] = params.c1.phasor(sq);
    chirp_freq_[i] = params.c2.phasor(sq);
  }
}

CVector AffineTransform::inverse(std::span<const Complex> symbols) const {
  if (static_cast<int>(symbols.size()) != nc_)
    throw ValidationError("idaft: expected " + std::to_string(nc_) + " symbols, got " +
                          std::to_string(symbols.size()));
  CVector out(nc_);
  for (int m = 0; m < nc_; ++m) out[m] = cmul(symbols[m], chirp_freq_[m]);
  fft_.inverse(out);
  const double scale = 1.0 / std::sqrt(static_cast<double>(nc_));
  for (int n = 0; n < nc_; ++n) out[n] = cmul(out[n], chirp_time_[n]) * scale;
  return out;
}

CVector AffineTransform::forward(std::span<const Complex> samples) const {
  if (static_cast<int>(samples.size()) != nc_)
    throw ValidationError("daft: expected " + std::to_string(nc_) + " samples, got " +
                          std::to_string(samples.size()));
  CVector out(nc_);
  for (int n = 0; n < nc_; ++n) out[n] = cmul_conj(samples[n], chirp_time_[n]);
  fft_.forward(out);
  const double scale = 1.0 / std::sqrt(static_cast<double>(nc_));
  for (int m = 0; m < nc_; ++m) out[m] = cmul_conj(out[m], chirp_freq_[m]) * scale;
  return out;
}

TimeSignal idaft(std::span<const Complex> symbols, const WaveformParams& params) {
  AffineTransform t(params);
  return TimeSignal{t.inverse(symbols), 0, params.sample_rate_hz()};
}

CVector daft(const TimeSignal& signal, const WaveformParams& params) {
  if (signal.has_prefix()) throw ValidationError("daft: remove the prefix before demodulating");
  AffineTransform t(params);
  return t.forward(signal.samples);
}

Complex cpp_phase(const WaveformParams& params, std::int64_t n) {
  const std::int64_t nc = params.nc;
  return params.c1.phasor(-(nc * nc + 2 * nc * n));
}

TimeSignal add_cpp(const TimeSignal& signal, const WaveformParams& params) {
  if (signal.has_prefix()) throw ValidationError("add_cpp: signal already carries a prefix");
  if (static_cast<int>(signal.samples.size()) != params.nc)
    throw ValidationError("add_cpp: expected " + std::to_string(params.nc) + " samples");
  const int nc = params.nc;
  const int len = params.cp_len;
  TimeSignal out;
  out.prefix_len = static_cast<std::size_t>(len);
  out.sample_rate_hz = signal.sample_rate_hz;
  out.samples.resize(static_cast<std::size_t>(nc + len));
  for (int n = -len; n < 0; ++n) {
    const Complex ph = cpp_phase(params, n);
    const Complex src = signal.samples[static_cast<std::size_t>(n + nc)];
    out.at(n) = (ph == Complex{1.0, 0.0}) ? src : cmul(ph, src);
  }
  std::copy(signal.samples.begin(), signal.samples.end(), out.samples.begin() + len);
  return out;
}

TimeSignal remove_cpp(const TimeSignal& signal, const WaveformParams& params) {
  const auto expected = static_cast<std::size_t>(params.nc + params.cp_len);
  if (signal.samples.size() != expected || signal.prefix_len != static_cast<std::size_t>(params.cp_len))
    throw ValidationError("remove_cpp: expected " + std::to_string(expected) + " samples with a " +
                          std::to_string(params.cp_len) + "-sample prefix, got " +
                          std::to_string(signal.samples.size()) + " with " + std::to_string(signal.prefix_len));
  TimeSignal out;
  out.sample_rate_hz = signal.sample_rate_hz;
  out.samples.assign(signal.samples.begin() + params.cp_len, signal.samples.end());
  return out;
}

TimeSignal radar_pilot(const WaveformParams& params) {
  params.validate();
  const int nc = params.nc;
  const double c1 = params.c1.value();
  const double c2 = params.c2.value();
  const double scale = 1.0 / std::sqrt(static_cast<double>(nc));
  TimeSignal out;
  out.sample_rate_hz = params.sample_rate_hz();
  out.samples.resize(nc);

#pragma omp parallel for schedule(static)
  for (int n = 0; n < nc; ++n) {
    const std::int64_t n2 = static_cast<std::int64_t>(n) * n;
    Complex acc{};
    for (int m = 0; m < nc; ++m) {
      const std::int64_t m2 = static_cast<std::int64_t>(m) * m;
      const std::int64_t nm = static_cast<std::int64_t>(n) * m;
      if (params.c2.resolves(m2) && params.c1.resolves(n2)) {
        const double cyc = params.c1.cycles(n2) + params.c2.cycles(m2) +
                           static_cast<double>(nm % nc) / static_cast<double>(nc);
        acc += unit_phasor(cyc);
      } else {
        const double t = c1 * static_cast<double>(n2) + c2 * static_cast<double>(m2) +
                         static_cast<double>(nm) / static_cast<double>(nc);
        acc += std::polar(1.0, kTwoPi * t);
      }
    }
    out.samples[n] = acc * scale;
  }
  return out;
}

CVector qpsk_map(std::span<const std::uint8_t> bits) {
  if (bits.size() % 2 != 0) throw ValidationError("qpsk_map: bit count must be even");
  const double a = 1.0 / std::sqrt(2.0);
  CVector out(bits.size() / 2);
  // (b0 b1): b1 sets the sign of the real part, b0 the imaginary part.
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = {bits[2 * i + 1] ? -a : a, bits[2 * i] ? -a : a};
  return out;
}

std::vector<std::uint8_t> qpsk_demap(std::span<const Complex> symbols) {
  std::vector<std::uint8_t> bits(2 * symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    bits[2 * i] = symbols[i].imag() < 0.0 ? 1 : 0;
    bits[2 * i + 1] = symbols[i].real() < 0.0 ? 1 : 0;
  }
  return bits;
}

}  // namespace afdm
