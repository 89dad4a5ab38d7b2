#include "afdm/comm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "afdm/rng.hpp"

namespace afdm {

std::string to_string(WaveformFamily family) {
  switch (family) {
    case WaveformFamily::afdm: return "afdm";
    case WaveformFamily::ofdm: return "ofdm";
    case WaveformFamily::otfs: return "otfs";
  }
  return "?";
}

WaveformFamily waveform_family_from_string(const std::string& name) {
  if (name == "afdm") return WaveformFamily::afdm;
  if (name == "ofdm") return WaveformFamily::ofdm;
  if (name == "otfs") return WaveformFamily::otfs;
  throw ValidationError("unknown waveform family '" + name + "' (expected afdm, ofdm or otfs)");
}

std::string to_string(BerChannelModel model) {
  return model == BerChannelModel::awgn ? "awgn" : "rayleigh";
}

BerChannelModel ber_channel_from_string(const std::string& name) {
  if (name == "awgn") return BerChannelModel::awgn;
  if (name == "rayleigh") return BerChannelModel::rayleigh;
  throw ValidationError("unknown BER channel '" + name + "' (expected awgn or rayleigh)");
}

Modem::Modem(WaveformFamily family, const WaveformParams& params)
    : family_(family), params_(family == WaveformFamily::ofdm ? ofdm_params(params) : params) {
  params_.validate();
  if (family_ == WaveformFamily::otfs) {
    side_ = OtfsGrid::square_for(params_).delay_bins;
  } else {
    transform_.emplace(params_);
  }
}

CVector Modem::modulate(std::span<const Complex> symbols) const {
  if (transform_) return transform_->inverse(symbols);
  TimeSignal frame = otfs_modulate(OtfsGrid{side_, side_, CVector(symbols.begin(), symbols.end())}, params_);
  return CVector(frame.samples.begin() + params_.cp_len, frame.samples.end());
}

CVector Modem::demodulate(std::span<const Complex> samples) const {
  if (transform_) return transform_->forward(samples);
  return otfs_demodulate(TimeSignal{CVector(samples.begin(), samples.end()), 0, params_.sample_rate_hz()}, params_)
      .data;
}

TimeSignal Modem::transmit(std::span<const Complex> symbols) const {
  if (!transform_) return otfs_modulate(OtfsGrid{side_, side_, CVector(symbols.begin(), symbols.end())}, params_);
  return add_cpp(TimeSignal{transform_->inverse(symbols), 0, params_.sample_rate_hz()}, params_);
}

CVector Modem::receive(const TimeSignal& frame) const {
  const TimeSignal body = remove_cpp(frame, params_);
  return demodulate(body.samples);
}

EffectiveChannel Modem::effective_channel(const ChannelSpec& spec) const {
  return build_effective_channel([this](std::span<const Complex> x) { return modulate(x); },
                                 [this](std::span<const Complex> r) { return demodulate(r); }, spec, params_);
}

EffectiveChannel effective_channel_matrix(const ChannelSpec& spec, const WaveformParams& params) {
  return Modem(WaveformFamily::afdm, params).effective_channel(spec);
}

LmmseEqualizer::LmmseEqualizer(const EffectiveChannel& channel, double n0) : n0_(n0), h_(channel.matrix) {
  if (!(n0 >= 0.0) || !std::isfinite(n0)) throw ValidationError("LMMSE noise variance must be finite and >= 0");
  if (h_.rows() != h_.cols() || h_.rows() == 0) throw ValidationError("LMMSE needs a square, nonempty channel");
  if (n0 == 0.0) {
    lu_.compute(h_);
    if (!(lu_.rcond() > 1e-13)) throw SingularSystemError("zero-forcing system is singular (rcond " +
                                                          std::to_string(lu_.rcond()) + ")");
    return;
  }
  const auto n = h_.rows();
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Identity(n, n) * n0;
  gram.selfadjointView<Eigen::Lower>().rankUpdate(h_);
  llt_.compute(gram);
  if (llt_.info() != Eigen::Success) throw SingularSystemError("LMMSE system is not positive definite");
}

CVector LmmseEqualizer::apply(std::span<const Complex> y) const {
  if (static_cast<Eigen::Index>(y.size()) != h_.rows()) throw ValidationError("LMMSE: observation size mismatch");
  Eigen::Map<const Eigen::VectorXcd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
  Eigen::VectorXcd x = n0_ == 0.0 ? Eigen::VectorXcd(lu_.solve(yv)) : Eigen::VectorXcd(h_.adjoint() * llt_.solve(yv));
  return CVector(x.data(), x.data() + x.size());
}

CVector lmmse_equalize(std::span<const Complex> y, const EffectiveChannel& channel, double n0) {
  return LmmseEqualizer(channel, n0).apply(y);
}

double qpsk_noise_variance(double ebn0_db) {
  if (std::isinf(ebn0_db) && ebn0_db > 0) return 0.0;
  if (!std::isfinite(ebn0_db)) throw ValidationError("SNR must be finite or +inf");
  return 1.0 / (2.0 * std::pow(10.0, ebn0_db / 10.0));
}

double qpsk_awgn_ber(double ebn0_db) {
  const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
  return 0.5 * std::erfc(std::sqrt(ebn0));
}

namespace {

ChannelSpec unit_tap() { return ChannelSpec{{DiscreteTap{0, 0, 0.0, {1.0, 0.0}}}}; }

// Keeps the modem and, for the static AWGN channel, the factored equalizer
// across frames.
class FrameSimulator {
 public:
  FrameSimulator(const BerSetup& setup, double snr_db)
      : setup_(setup), modem_(setup.family, setup.params), n0_(qpsk_noise_variance(snr_db)) {
    if (setup.channel == BerChannelModel::awgn) static_eq_.emplace(make_equalizer(modem_.effective_channel(unit_tap())));
  }

  BerCounts run(std::uint64_t seed) const {
    const auto& params = modem_.params();
    const auto nbits = static_cast<std::size_t>(2 * params.nc);
    Rng bit_rng(mix_seed(seed, 1));
    std::vector<std::uint8_t> bits(nbits);
    for (auto& b : bits) b = static_cast<std::uint8_t>(bit_rng.next_u64() >> 63);

    const ChannelSpec spec = setup_.channel == BerChannelModel::awgn
                                 ? unit_tap()
                                 : rayleigh_channel(setup_.paths, params, mix_seed(seed, 2));
    const TimeSignal tx = modem_.transmit(qpsk_map(bits));
    const TimeSignal rx = add_noise(apply_channel(tx, spec, params), NoiseSpec{n0_, mix_seed(seed, 3)});
    const CVector y = modem_.receive(rx);

    CVector xhat;
    if (static_eq_) {
      xhat = static_eq_->apply(y);
    } else {
      xhat = make_equalizer(modem_.effective_channel(spec)).apply(y);
    }
    const auto decided = qpsk_demap(xhat);
    BerCounts c;
    c.bits = nbits;
    for (std::size_t i = 0; i < nbits; ++i) c.errors += decided[i] != bits[i];
    return c;
  }

 private:
  LmmseEqualizer make_equalizer(const EffectiveChannel& h) const {
    if (n0_ > 0.0) return LmmseEqualizer(h, n0_);
    try {
      return LmmseEqualizer(h, 0.0);
    } catch (const SingularSystemError&) {
      return LmmseEqualizer(h, 1e-12);
    }
  }

  BerSetup setup_;
  Modem modem_;
  double n0_;
  std::optional<LmmseEqualizer> static_eq_;
};

}  // namespace

BerCounts ber_trial(const BerSetup& setup, double snr_db, std::uint64_t seed) {
  return FrameSimulator(setup, snr_db).run(seed);
}

BerCurve ber_curve(const BerSetup& setup, std::span<const double> snr_db, const BerBudget& budget,
                   std::uint64_t seed) {
  if (snr_db.empty()) throw ValidationError("BER sweep needs at least one SNR point");
  if (budget.max_bits == 0) throw ValidationError("BER bit budget must be positive");
  if (budget.batch < 1) throw ValidationError("BER batch size must be positive");
  BerCurve curve;
  curve.family = setup.family;
  curve.c2 = setup.family == WaveformFamily::afdm ? setup.params.c2 : ChirpRate::zero();
  curve.seed = seed;

  const auto bits_per_frame = static_cast<std::uint64_t>(2 * setup.params.nc);
  const std::uint64_t max_frames = (budget.max_bits + bits_per_frame - 1) / bits_per_frame;
  for (double snr : snr_db) {
    const FrameSimulator sim(setup, snr);
    BerPoint point;
    point.snr_db = snr;
    std::uint64_t next = 0;
    while (next < max_frames && point.bit_errors < budget.max_errors) {
      const auto count = static_cast<std::int64_t>(std::min<std::uint64_t>(budget.batch, max_frames - next));
      std::uint64_t errors = 0, bits = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : errors, bits)
      for (std::int64_t i = 0; i < count; ++i) {
        const BerCounts c = sim.run(mix_seed(seed, next + static_cast<std::uint64_t>(i)));
        errors += c.errors;
        bits += c.bits;
      }
      point.bit_errors += errors;
      point.bits += bits;
      next += static_cast<std::uint64_t>(count);
    }
    curve.points.push_back(point);
  }
  return curve;
}

std::optional<double> snr_at_ber(const BerCurve& curve, double target) {
  const double lt = std::log10(target);
  for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
    const auto& a = curve.points[i];
    const auto& b = curve.points[i + 1];
    const double ba = a.ber(), bb = b.ber();
    if (ba >= target && bb <= target && ba > 0.0) {
      if (bb <= 0.0) return b.snr_db;
      const double la = std::log10(ba), lb = std::log10(bb);
      if (la == lb) return a.snr_db;
      return a.snr_db + (lt - la) * (b.snr_db - a.snr_db) / (lb - la);
    }
  }
  return std::nullopt;
}

}  // namespace afdm
