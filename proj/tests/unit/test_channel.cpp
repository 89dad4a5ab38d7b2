#include "doctest.h"

#include <cmath>

#include "afdm/channel.hpp"
#include "afdm/rng.hpp"
#include "oracles.hpp"

using namespace afdm;

namespace {

WaveformParams scenario() { return make_params(256, 39063.0, 1, ChirpRate::zero(), 32, 24e9); }

WaveformParams small(int nc, int cp, int k_max = 1) {
  return make_params(nc, 1000.0, k_max, ChirpRate::zero(), cp, 1e9);
}

TimeSignal random_frame(const WaveformParams& p, std::uint64_t seed) {
  Rng rng(seed);
  TimeSignal s{CVector(static_cast<std::size_t>(p.nc)), 0, p.sample_rate_hz()};
  for (auto& v : s.samples) v = rng.complex_normal(1.0);
  return add_cpp(s, p);
}

ChannelSpec random_spec(const WaveformParams& p, Rng& rng, int paths) {
  ChannelSpec spec;
  for (int i = 0; i < paths; ++i) {
    const int l = static_cast<int>(rng.uniform_int(0, p.cp_len));
    spec.taps.push_back(DiscreteTap::from_doppler(l, rng.uniform(-p.k_max, p.k_max), rng.complex_normal(1.0)));
  }
  return spec;
}

std::vector<oracle::Tap> oracle_taps(const ChannelSpec& spec) {
  std::vector<oracle::Tap> t;
  for (const auto& tap : spec.taps) t.push_back({tap.delay_bins, tap.doppler_bins(), tap.gain});
  return t;
}

}  // namespace

TEST_CASE("discretizing the three scenario targets") {
  const auto p = scenario();
  const auto t1 = discretize_target(TargetGeometry::monostatic(300.0, 24.4), p);
  CHECK(t1.delay_bins == 20);
  CHECK(t1.doppler_int == 0);
  // 2 v fc / c = 3.9067 kHz; T nu = 0.1000 (0.09994 with c = 3e8)
  CHECK(t1.doppler_bins() == doctest::Approx(0.09994).epsilon(1e-3));
  CHECK(t1.doppler_bins() * p.subcarrier_spacing_hz == doctest::Approx(3904.0).epsilon(1e-3));

  const auto t2 = discretize_target(TargetGeometry::monostatic(360.0, 48.8), p);
  CHECK(t2.delay_bins == 24);
  CHECK(t2.doppler_bins() * p.subcarrier_spacing_hz == doctest::Approx(7808.0).epsilon(1e-3));

  const auto t3 = discretize_target(TargetGeometry::monostatic(375.0, 122.0), p);
  CHECK(t3.delay_bins == 25);
  CHECK(t3.doppler_bins() * p.subcarrier_spacing_hz == doctest::Approx(19520.0).epsilon(1e-3));
  CHECK(t3.doppler_int == 1);
  CHECK(std::abs(t3.doppler_frac) <= 0.5);

  const auto zero = discretize_target(TargetGeometry::monostatic(0.0, 0.0), p);
  CHECK(zero.delay_bins == 0);
  CHECK(zero.doppler_int == 0);
  CHECK(zero.doppler_frac == 0.0);
}

TEST_CASE("discretization edge cases") {
  auto p = scenario();
  // bin 256 is one full frame away
  CHECK_THROWS_AS(discretize_target(TargetGeometry::monostatic(3840.0, 0.0), p), ValidationError);
  CHECK_THROWS_AS(discretize_target(TargetGeometry{100.0, 200.0, 0.0, {1.0, 0.0}}, p), ValidationError);
  CHECK_THROWS_AS(discretize_target(TargetGeometry::monostatic(-1.0, 0.0), p), ValidationError);
  p.geometry = Geometry::bistatic;
  const auto b = discretize_target(TargetGeometry{200.0, 400.0, 24.4, {1.0, 0.0}}, p);
  CHECK(b.delay_bins == 20);  // (200 + 400) m of path is one 300 m monostatic round trip
}

TEST_CASE("identity and pure-delay channels") {
  const auto p = small(8, 4);
  const TimeSignal tx = random_frame(p, 1);
  const ChannelSpec id{{DiscreteTap{0, 0, 0.0, {1.0, 0.0}}}};
  CHECK(apply_channel(tx, id, p).samples == tx.samples);

  const ChannelSpec delay{{DiscreteTap{3, 0, 0.0, {1.0, 0.0}}}};
  const TimeSignal rx = apply_channel(tx, delay, p);
  for (int n = -4; n < 8; ++n) {
    const Complex expected = n - 3 >= -4 ? tx.at(n - 3) : Complex{};
    CHECK(std::abs(rx.at(n) - expected) < 1e-15);
  }

  const TimeSignal body = remove_cpp(tx, p);
  CHECK(apply_channel_circular(body, id, p).samples == body.samples);
}

TEST_CASE("apply_channel matches the double sum") {
  const auto p = small(8, 4);
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const TimeSignal tx = random_frame(p, 100 + static_cast<std::uint64_t>(trial));
    const ChannelSpec spec = random_spec(p, rng, 2);
    const CVector expected = oracle::channel_double_sum(tx.samples, p.cp_len, p.nc, oracle_taps(spec));
    CHECK(oracle::max_abs_diff(apply_channel(tx, spec, p).samples, expected) < 1e-12);
  }
}

TEST_CASE("circular channel matches its definition, including full wrap") {
  const auto p = small(8, 7);
  Rng rng(3);
  const TimeSignal s = remove_cpp(random_frame(p, 4), p);
  const ChannelSpec wrap{{DiscreteTap{7, 0, 0.0, {1.0, 0.0}}}};
  const TimeSignal r = apply_channel_circular(s, wrap, p);
  // delay Nc - 1 is a rotation by one sample towards the front
  for (int n = 0; n < 8; ++n) CHECK(r.samples[static_cast<std::size_t>(n)] == s.samples[static_cast<std::size_t>((n + 1) % 8)]);
  for (int trial = 0; trial < 20; ++trial) {
    const ChannelSpec spec = random_spec(p, rng, 3);
    CHECK(oracle::max_abs_diff(apply_channel_circular(s, spec, p).samples,
                               oracle::channel_circular(s.samples, oracle_taps(spec))) < 1e-12);
  }
}

TEST_CASE("prefix removal turns the linear channel circular") {
  Rng rng(5);
  for (const auto& p : {small(8, 4), small(16, 5, 2), scenario()}) {
    for (int trial = 0; trial < 100; ++trial) {
      const TimeSignal tx = random_frame(p, rng.next_u64());
      const ChannelSpec spec = random_spec(p, rng, 1 + trial % 4);
      const TimeSignal lin = remove_cpp(apply_channel(tx, spec, p), p);
      const TimeSignal circ = apply_channel_circular(remove_cpp(tx, p), spec, p);
      REQUIRE(oracle::max_abs_diff(lin.samples, circ.samples) < 1e-10);
    }
  }
}

TEST_CASE("delay-only taps commute and Doppler preserves energy") {
  const auto p = small(16, 6);
  const TimeSignal tx = random_frame(p, 9);
  const ChannelSpec ab{{DiscreteTap{2, 0, 0.0, {1.0, 0.0}}}};
  const ChannelSpec cd{{DiscreteTap{5, 0, 0.0, {1.0, 0.0}}}};
  const TimeSignal s = remove_cpp(tx, p);
  const auto one = apply_channel_circular(apply_channel_circular(s, ab, p), cd, p);
  const auto two = apply_channel_circular(apply_channel_circular(s, cd, p), ab, p);
  CHECK(oracle::max_abs_diff(one.samples, two.samples) < 1e-14);

  const ChannelSpec dop{{DiscreteTap::from_doppler(0, 0.73, {1.0, 0.0})}};
  CHECK(apply_channel(tx, dop, p).energy() == doctest::Approx(tx.energy()).epsilon(1e-13));
}

TEST_CASE("channel validation") {
  const auto p = small(8, 2);
  const TimeSignal tx = random_frame(p, 1);
  CHECK_THROWS_AS(apply_channel(tx, ChannelSpec{}, p), ValidationError);
  CHECK_THROWS_AS(apply_channel(tx, ChannelSpec{{DiscreteTap{3, 0, 0.0, {1.0, 0.0}}}}, p), ValidationError);
  CHECK_THROWS_AS(apply_channel(tx, ChannelSpec{{DiscreteTap{0, 2, 0.0, {1.0, 0.0}}}}, p), ValidationError);
  CHECK_THROWS_AS(apply_channel(tx, ChannelSpec{{DiscreteTap{0, 0, 0.7, {1.0, 0.0}}}}, p), ValidationError);
  CHECK_THROWS_AS(apply_channel(remove_cpp(tx, p), ChannelSpec{{DiscreteTap{}}}, p), ValidationError);
  CHECK_THROWS_AS(apply_channel_circular(tx, ChannelSpec{{DiscreteTap{}}}, p), ValidationError);
}

TEST_CASE("AWGN variance and determinism") {
  TimeSignal s{CVector(1'000'000, Complex{2.0, 0.0}), 0, 1.0};
  const double n0 = noise_variance_for(s, 10.0);
  CHECK(n0 == doctest::Approx(0.4));
  const TimeSignal noisy = add_awgn(s, 10.0, 77);
  double var = 0.0;
  for (std::size_t i = 0; i < s.samples.size(); ++i) var += std::norm(noisy.samples[i] - s.samples[i]);
  var /= static_cast<double>(s.samples.size());
  CHECK(std::abs(var / n0 - 1.0) < 0.01);
  CHECK(add_awgn(s, 10.0, 77).samples == noisy.samples);
  CHECK(add_awgn(s, 10.0, 78).samples != noisy.samples);
  CHECK(add_awgn(s, INFINITY, 1).samples == s.samples);
  CHECK_THROWS_AS(add_awgn(s, NAN, 1), ValidationError);
  CHECK_THROWS_AS(add_noise(s, NoiseSpec{-1.0, 0}), ValidationError);
}

TEST_CASE("Rayleigh channel draws") {
  const auto p = scenario();
  double total = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const auto spec = rayleigh_channel(3, p, static_cast<std::uint64_t>(i));
    REQUIRE(spec.taps.size() == 3);
    for (const auto& t : spec.taps) {
      REQUIRE(t.delay_bins >= 0);
      REQUIRE(t.delay_bins <= p.cp_len);
      REQUIRE(std::abs(t.doppler_bins()) <= p.k_max);
      total += std::norm(t.gain);
    }
    spec.validate(p);
  }
  CHECK(std::abs(total / draws - 1.0) < 0.02);
  const auto a = rayleigh_channel(1, p, 5), b = rayleigh_channel(1, p, 5);
  CHECK(a.taps[0].gain == b.taps[0].gain);
  CHECK(a.taps[0].delay_bins == b.taps[0].delay_bins);
  CHECK_THROWS_AS(rayleigh_channel(0, p, 1), ValidationError);
}
