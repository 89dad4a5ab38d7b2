#include "doctest.h"

#include <cmath>

#include "afdm/baselines.hpp"
#include "afdm/comm.hpp"
#include "afdm/rng.hpp"
#include "oracles.hpp"

using namespace afdm;

namespace {

CVector random_symbols(int n, std::uint64_t seed) {
  Rng rng(seed);
  CVector x(static_cast<std::size_t>(n));
  for (auto& v : x) v = rng.complex_normal(1.0);
  return x;
}

}  // namespace

TEST_CASE("OFDM is the chirp-free transform") {
  const auto p = ofdm_params(make_params(16, 1000.0, 1, ChirpRate::rational(1, 512), 4, 1e9));
  CHECK(p.c1.is_zero());
  CHECK(p.c2.is_zero());

  CVector e(16, Complex{});
  e[0] = 1.0;
  const TimeSignal s = idaft(e, p);
  for (const auto& v : s.samples) CHECK(std::abs(v - Complex{0.25, 0.0}) < 1e-15);

  for (int n = -4; n < 0; ++n) CHECK(cpp_phase(p, n) == Complex{1.0, 0.0});

  // A pure delay is diagonal in the DFT domain.
  const ChannelSpec tap{{DiscreteTap{3, 0, 0.0, {0.5, 0.5}}}};
  const EffectiveChannel h = effective_channel_matrix(tap, p);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      if (i != j) CHECK(std::abs(h.matrix(i, j)) < 1e-12);
  const CVector x = random_symbols(16, 2);
  const CVector y = h.apply(x);
  for (int i = 0; i < 16; ++i) CHECK(std::abs(y[i] / h.matrix(i, i) - x[i]) < 1e-12);
}

TEST_CASE("OFDM equals AFDM with zero chirps bit for bit") {
  const auto base = make_params(16, 1000.0, 1, ChirpRate::rational(1, 512), 4, 1e9);
  WaveformParams zero = base;
  zero.c1 = ChirpRate::zero();
  zero.c2 = ChirpRate::zero();
  const CVector x = random_symbols(16, 3);
  const Modem ofdm(WaveformFamily::ofdm, base);
  CHECK(ofdm.transmit(x).samples == add_cpp(idaft(x, zero), zero).samples);
}

TEST_CASE("OTFS round trip") {
  const auto p = make_params(64, 1000.0, 1, ChirpRate::zero(), 8, 1e9);
  OtfsGrid g = OtfsGrid::square_for(p);
  CHECK(g.delay_bins == 8);
  CHECK(g.doppler_bins == 8);
  Rng rng(5);
  for (auto& v : g.data) v = rng.complex_normal(1.0);
  const TimeSignal frame = otfs_modulate(g, p);
  CHECK(frame.samples.size() == 72);
  CHECK(oracle::max_abs_diff(otfs_demodulate(frame, p).data, g.data) < 1e-12);
  CHECK(oracle::max_abs_diff(otfs_demodulate(remove_cpp(frame, p), p).data, g.data) < 1e-12);
  CHECK(oracle::max_abs_diff(otfs_sfft(otfs_isfft(g)).data, g.data) < 1e-12);

  double energy = 0.0, grid_energy = 0.0;
  for (std::size_t i = 8; i < frame.samples.size(); ++i) energy += std::norm(frame.samples[i]);
  for (const auto& v : g.data) grid_energy += std::norm(v);
  CHECK(energy == doctest::Approx(grid_energy).epsilon(1e-12));
}

TEST_CASE("OTFS delay-Doppler impulse") {
  const auto p = make_params(64, 1000.0, 1, ChirpRate::zero(), 8, 1e9);
  OtfsGrid g = OtfsGrid::square_for(p);
  g.at(0, 0) = 1.0;
  const TfGrid tf = otfs_isfft(g);
  for (const auto& v : tf.data) CHECK(std::abs(v - Complex{0.125, 0.0}) < 1e-15);

  const TimeSignal s = remove_cpp(otfs_modulate(g, p), p);
  const double amp = 1.0 / std::sqrt(8.0);
  for (int n = 0; n < 64; ++n) {
    const Complex expected = (n % 8 == 0) ? Complex{amp, 0.0} : Complex{};
    CHECK(std::abs(s.samples[static_cast<std::size_t>(n)] - expected) < 1e-15);
  }

  // Delay l, Doppler k: time-domain phase ramp exp(j2pi k b / N) on block b, sample l.
  OtfsGrid g2 = OtfsGrid::square_for(p);
  g2.at(3, 2) = 1.0;
  const TimeSignal s2 = remove_cpp(otfs_modulate(g2, p), p);
  for (int b = 0; b < 8; ++b)
    CHECK(std::abs(s2.samples[static_cast<std::size_t>(8 * b + 3)] - amp * oracle::expj(2.0L * b / 8.0L)) < 1e-14);
}

TEST_CASE("OTFS effective channel") {
  const auto p = make_params(16, 1000.0, 1, ChirpRate::zero(), 4, 1e9);
  Rng rng(11);
  const ChannelSpec spec{{DiscreteTap::from_doppler(1, 0.5, rng.complex_normal(1.0)),
                          DiscreteTap::from_doppler(3, -0.25, rng.complex_normal(1.0))}};
  const EffectiveChannel h = otfs_effective_channel(spec, p);
  CHECK(h.size() == 16);
  for (int t = 0; t < 5; ++t) {
    OtfsGrid g = OtfsGrid::square_for(p);
    g.data = random_symbols(16, 20 + static_cast<std::uint64_t>(t));
    const TimeSignal rx = apply_channel(otfs_modulate(g, p), spec, p);
    CHECK(oracle::max_abs_diff(otfs_demodulate(rx, p).data, h.apply(g.data)) < 1e-12);
  }
}

TEST_CASE("OTFS shape checks") {
  const auto p = make_params(18, 1000.0, 1, ChirpRate::zero(), 4, 1e9);
  CHECK_THROWS_AS(OtfsGrid::square_for(p), ValidationError);
  const auto q = make_params(16, 1000.0, 1, ChirpRate::zero(), 4, 1e9);
  OtfsGrid g{2, 4, CVector(8)};
  CHECK_THROWS_AS(otfs_modulate(g, q), ValidationError);
}
