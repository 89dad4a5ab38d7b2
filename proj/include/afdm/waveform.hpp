#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "afdm/chirp_rate.hpp"
#include "afdm/fft.hpp"
#include "afdm/types.hpp"

namespace afdm {

enum class Geometry { monostatic, bistatic };

// AFDM built-in parameters. Construct through make_params() unless a test
// needs c1 off the Doppler rule.
struct WaveformParams {
  int nc = 256;
  double subcarrier_spacing_hz = 39063.0;
  int k_max = 1;
  ChirpRate c1 = ChirpRate::from_doppler_rule(1, 256);
  ChirpRate c2;
  int cp_len = 32;
  double carrier_hz = 24e9;
  Geometry geometry = Geometry::monostatic;
  double speed_of_light = kSpeedOfLight;

  double duration_s() const { return 1.0 / subcarrier_spacing_hz; }
  double bandwidth_hz() const { return nc * subcarrier_spacing_hz; }
  double sample_rate_hz() const { return bandwidth_hz(); }

  // 2 Nc c1 is an integer and Nc is even: the chirp-periodic prefix is then a
  // plain cyclic copy.
  bool cpp_is_plain_cp() const;

  // Throws ValidationError naming the violated constraint.
  void validate() const;
};

WaveformParams make_params(int nc, double subcarrier_spacing_hz, int k_max, ChirpRate c2, int cp_len,
                           double carrier_hz, Geometry geometry = Geometry::monostatic);

// Forward/inverse discrete affine Fourier transform for one parameter set.
// Factored as chirp(c1) . DFT . chirp(c2) with 1/sqrt(Nc) on both sides, so
// both directions are unitary.
class AffineTransform {
 public:
  explicit AffineTransform(const WaveformParams& params);

  int size() const { return nc_; }

  // s[n] = 1/sqrt(Nc) sum_m x[m] exp(j2pi(c1 n^2 + c2 m^2 + nm/Nc))
  CVector inverse(std::span<const Complex> symbols) const;
  // x[m] = 1/sqrt(Nc) sum_n s[n] exp(-j2pi(c1 n^2 + c2 m^2 + nm/Nc))
  CVector forward(std::span<const Complex> samples) const;

 private:
  int nc_;
  Fft fft_;
  CVector chirp_time_;  // exp(j2pi c1 n^2)
  CVector chirp_freq_;  // exp(j2pi c2 m^2)
};

TimeSignal idaft(std::span<const Complex> symbols, const WaveformParams& params);
CVector daft(const TimeSignal& signal, const WaveformParams& params);

// Prepends L_CP samples s[n] = exp(-j2pi c1 (Nc^2 + 2 Nc n)) s[n + Nc].
TimeSignal add_cpp(const TimeSignal& signal, const WaveformParams& params);
TimeSignal remove_cpp(const TimeSignal& signal, const WaveformParams& params);

// exp(-j2pi c1 (Nc^2 + 2 Nc n)) for prefix index n < 0.
Complex cpp_phase(const WaveformParams& params, std::int64_t n);

// The all-ones radar pilot evaluated term by term from the modulation kernel,
// without the FFT factorization. Phases that resolve are reduced exactly and
// agree with idaft(all-ones) to rounding. When c2 m^2 has no fractional
// resolution left, the kernel exponent is summed in double precision as a
// direct implementation would, and that term swamps the other two.
TimeSignal radar_pilot(const WaveformParams& params);

// Gray QPSK, unit energy: 00 -> (1+j), 01 -> (-1+j), 11 -> (-1-j), 10 -> (1-j), all / sqrt(2).
CVector qpsk_map(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> qpsk_demap(std::span<const Complex> symbols);

}  // namespace afdm
