#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "afdm/baselines.hpp"
#include "afdm/channel.hpp"
#include "afdm/linear_channel.hpp"
#include "afdm/types.hpp"
#include "afdm/waveform.hpp"

namespace afdm {

enum class WaveformFamily { afdm, ofdm, otfs };

std::string to_string(WaveformFamily family);
WaveformFamily waveform_family_from_string(const std::string& name);

// Symbols <-> prefixed time frame for one waveform family. OFDM goes through
// the AFDM code path with c1 = c2 = 0.
class Modem {
 public:
  Modem(WaveformFamily family, const WaveformParams& params);

  WaveformFamily family() const { return family_; }
  const WaveformParams& params() const { return params_; }

  CVector modulate(std::span<const Complex> symbols) const;   // Nc prefix-free samples
  CVector demodulate(std::span<const Complex> samples) const;  // Nc samples -> Nc symbols
  TimeSignal transmit(std::span<const Complex> symbols) const;
  CVector receive(const TimeSignal& frame) const;
  EffectiveChannel effective_channel(const ChannelSpec& spec) const;

 private:
  WaveformFamily family_;
  WaveformParams params_;
  std::optional<AffineTransform> transform_;
  int side_ = 0;
};

// DAFT . circular channel . IDAFT as a dense Nc x Nc matrix.
EffectiveChannel effective_channel_matrix(const ChannelSpec& spec, const WaveformParams& params);

// x = H^H (H H^H + n0 I)^-1 y, factored once and reusable across frames.
// n0 = 0 falls back to solving H x = y and throws SingularSystemError when H
// is numerically singular.
class LmmseEqualizer {
 public:
  LmmseEqualizer(const EffectiveChannel& channel, double n0);

  CVector apply(std::span<const Complex> y) const;

 private:
  double n0_;
  Eigen::MatrixXcd h_;
  Eigen::LLT<Eigen::MatrixXcd> llt_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
};

CVector lmmse_equalize(std::span<const Complex> y, const EffectiveChannel& channel, double n0);

enum class BerChannelModel { awgn, rayleigh };

std::string to_string(BerChannelModel model);
BerChannelModel ber_channel_from_string(const std::string& name);

struct BerSetup {
  WaveformParams params;
  WaveformFamily family = WaveformFamily::afdm;
  BerChannelModel channel = BerChannelModel::rayleigh;
  int paths = 3;
};

struct BerBudget {
  std::uint64_t max_bits = 1'000'000;
  std::uint64_t max_errors = 200;
  // Trials are simulated in fixed batches so the stopping point does not
  // depend on the thread count.
  int batch = 8;
};

struct BerCounts {
  std::uint64_t errors = 0;
  std::uint64_t bits = 0;
};

struct BerPoint {
  double snr_db = 0.0;
  std::uint64_t bit_errors = 0;
  std::uint64_t bits = 0;
  double ber() const { return bits ? static_cast<double>(bit_errors) / static_cast<double>(bits) : 0.0; }
};

struct BerCurve {
  WaveformFamily family = WaveformFamily::afdm;
  ChirpRate c2;
  std::uint64_t seed = 0;
  std::vector<BerPoint> points;
};

// Noise variance per complex sample for unit-energy QPSK at the given Eb/N0.
double qpsk_noise_variance(double ebn0_db);

// Gray QPSK over AWGN: Q(sqrt(2 Eb/N0)).
double qpsk_awgn_ber(double ebn0_db);

// One frame: bits -> QPSK -> modulate -> prefix -> channel draw -> AWGN ->
// receiver -> LMMSE with perfect CSI -> hard decisions. snr_db is Eb/N0.
// The seed fixes bits, channel and noise, independently of the waveform.
BerCounts ber_trial(const BerSetup& setup, double snr_db, std::uint64_t seed);

// Trial t of every SNR point uses seed mix_seed(seed, t), so curves for
// different waveforms see identical channels and noise.
BerCurve ber_curve(const BerSetup& setup, std::span<const double> snr_db, const BerBudget& budget,
                   std::uint64_t seed);

// SNR (dB) where log10(BER) crosses log10(target), interpolated linearly
// between bracketing points; nullopt when the curve never brackets it. A
// bracketing point with no errors is returned as is, an upper bound.
std::optional<double> snr_at_ber(const BerCurve& curve, double target);

}  // namespace afdm
