#include "doctest.h"

#include <cmath>

#include "afdm/ambiguity.hpp"
#include "afdm/rng.hpp"
#include "afdm/waveform.hpp"
#include "oracles.hpp"

using namespace afdm;

namespace {

WaveformParams params(int nc, ChirpRate c2, int k_max = 1) {
  return make_params(nc, 39063.0, k_max, c2, nc / 8, 24e9);
}

TimeSignal pilot(const WaveformParams& p) { return idaft(CVector(static_cast<std::size_t>(p.nc), 1.0), p); }

CVector magnitudes(const CVector& v) {
  CVector m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m[i] = std::abs(v[i]);
  return m;
}

TimeSignal random_signal(int n, std::uint64_t seed) {
  Rng rng(seed);
  TimeSignal s{CVector(static_cast<std::size_t>(n)), 0, 1e6};
  for (auto& v : s.samples) v = rng.complex_normal(1.0);
  return s;
}

}  // namespace

TEST_CASE("c2 = 0 pilot has an impulse zero-Doppler cut") {
  for (int nc : {8, 64, 256}) {
    const CVector cut = zero_doppler_cut(radar_pilot(params(nc, ChirpRate::zero())));
    CHECK(std::abs(std::abs(cut[static_cast<std::size_t>(nc - 1)]) - 1.0) < 1e-12);
    double side = 0.0;
    for (std::size_t i = 0; i < cut.size(); ++i)
      if (i != static_cast<std::size_t>(nc - 1)) side = std::max(side, std::abs(cut[i]));
    CHECK(side < 1e-10);
  }
}

TEST_CASE("c2 = 1/Nc^2 has moderate sidelobes") {
  const CVector cut = zero_doppler_cut(radar_pilot(params(256, ChirpRate::rational(1, 65536))));
  const double side = max_offpeak_db(cut);
  CHECK(side > -300.0);
  CHECK(side < -3.0);
}

TEST_CASE("zero-Doppler cut equals the triple sum over subcarrier pairs") {
  for (const auto& c2 : {ChirpRate::zero(), ChirpRate::rational(1, 64), ChirpRate::real(0.3)}) {
    const auto p = params(8, c2);
    const CVector cut = zero_doppler_cut(pilot(p));
    for (int l = -7; l <= 7; ++l) {
      const Complex expected = oracle::pilot_chi_triple_sum(8, p.c1.value(), c2.value(), l);
      CHECK(std::abs(cut[static_cast<std::size_t>(l + 7)] - expected) < 1e-12);
    }
  }
}

TEST_CASE("cut symmetry and peak") {
  const TimeSignal s = random_signal(32, 4);
  const CVector cut = zero_doppler_cut(s);
  CHECK(std::abs(cut[31] - Complex(1.0, 0.0)) < 1e-12);
  for (int l = 1; l < 32; ++l) {
    CHECK(std::abs(cut[static_cast<std::size_t>(31 - l)] - std::conj(cut[static_cast<std::size_t>(31 + l)])) < 1e-12);
    CHECK(std::abs(cut[static_cast<std::size_t>(31 + l)]) <= 1.0 + 1e-12);
  }
  CHECK_THROWS_AS(zero_doppler_cut(TimeSignal{}), ValidationError);
  CHECK_THROWS_AS(zero_doppler_cut(TimeSignal{CVector(4), 0, 1.0}), ValidationError);
  CHECK_THROWS_AS(zero_doppler_cut(TimeSignal{CVector(6, 1.0), 2, 1.0}), ValidationError);
}

TEST_CASE("|chi| depends on c1 only through the chirp term when c2 = 0") {
  auto a = params(64, ChirpRate::zero(), 1);
  auto b = params(64, ChirpRate::zero(), 2);
  CHECK(oracle::max_abs_diff(magnitudes(zero_doppler_cut(pilot(a))), magnitudes(zero_doppler_cut(pilot(b)))) < 1e-10);
  // With c2 != 0 the n-dependent part of the c1 phase does not cancel.
  a.c2 = b.c2 = ChirpRate::rational(1, 4096);
  CHECK(oracle::max_abs_diff(magnitudes(zero_doppler_cut(pilot(a))), magnitudes(zero_doppler_cut(pilot(b)))) > 1e-3);
}

TEST_CASE("zero-delay cut") {
  const auto p = params(256, ChirpRate::zero());
  const auto grid = default_doppler_grid(p);
  CHECK(grid.size() == 17);
  CHECK(grid.front() == doctest::Approx(-2 * p.subcarrier_spacing_hz));
  CHECK(grid.back() == doctest::Approx(2 * p.subcarrier_spacing_hz));
  const CVector flat = zero_delay_cut(radar_pilot(p), grid);
  for (const auto& v : flat) CHECK(std::abs(std::abs(v) - 1.0) < 1e-10);

  auto q = params(8, ChirpRate::zero());
  q.c1 = ChirpRate::zero();
  const TimeSignal s = random_signal(8, 3);
  const std::vector<double> nus{0.0, 1234.5, -5e5, 3e5};
  const CVector cut = zero_delay_cut(s, nus);
  CHECK(std::abs(cut[0] - Complex(1.0, 0.0)) < 1e-12);
  for (std::size_t i = 0; i < nus.size(); ++i) {
    Complex acc{};
    for (int n = 0; n < 8; ++n)
      acc += std::norm(s.samples[static_cast<std::size_t>(n)]) * oracle::expj(static_cast<long double>(nus[i]) * n / 1e6L);
    CHECK(std::abs(cut[i] - acc / s.energy()) < 1e-12);
  }
  CHECK_THROWS_AS(zero_delay_cut(s, std::vector<double>{}), ValidationError);
}

TEST_CASE("surface agrees with both cuts") {
  const auto p = params(64, ChirpRate::rational(1, 4096));
  const TimeSignal s = pilot(p);
  const auto grid = default_doppler_grid(p);
  const AmbiguitySurface surf = ambiguity_surface(s, -63, 63, grid);
  const CVector delay_cut = zero_doppler_cut(s);
  const CVector doppler_cut = zero_delay_cut(s, grid);
  const std::size_t zero_row = grid.size() / 2;
  REQUIRE(grid[zero_row] == 0.0);
  for (int l = -63; l <= 63; ++l)
    CHECK(std::abs(surf.at(zero_row, l) - delay_cut[static_cast<std::size_t>(l + 63)]) < 1e-12);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(surf.at(i, 0) - doppler_cut[i]) < 1e-12);
  CHECK(std::abs(surf.at(zero_row, 0) - Complex(1.0, 0.0)) < 1e-12);
  CHECK_THROWS_AS(ambiguity_surface(s, 3, 2, grid), ValidationError);
}

TEST_CASE("surface volume over the full grid does not depend on c2") {
  // Sum of |chi|^2 over every lag and Doppler k/N equals N for any signal.
  for (const auto& c2 : {ChirpRate::zero(), ChirpRate::rational(1, 64), ChirpRate::real(0.37)}) {
    const auto p = params(8, c2);
    const TimeSignal s = pilot(p);
    std::vector<double> grid;
    for (int k = 0; k < 8; ++k) grid.push_back(k * s.sample_rate_hz / 8);
    const AmbiguitySurface surf = ambiguity_surface(s, -7, 7, grid);
    double volume = 0.0;
    for (const auto& v : surf.values) volume += std::norm(v);
    CHECK(volume == doctest::Approx(8.0).epsilon(1e-12));
  }
}

TEST_CASE("metrics of simple cuts") {
  CVector impulse(31, Complex{});
  impulse[15] = 1.0;
  const AbfMetrics im = abf_metrics(impulse);
  CHECK(im.mainlobe_width_bins == 1);
  CHECK(std::isinf(im.pslr_db));
  CHECK(im.pslr_db > 0);
  CHECK(std::isinf(im.islr_db));
  CHECK(im.islr_db < 0);

  // Rectangular pulse: chi[l] = (N - |l|) / N
  for (int n : {4, 16, 33}) {
    const CVector tri = zero_doppler_cut(TimeSignal{CVector(static_cast<std::size_t>(n), 1.0), 0, 1.0});
    const int half = static_cast<int>(std::floor(n * (1.0 - 1.0 / std::sqrt(2.0))));
    CHECK(abf_metrics(tri).mainlobe_width_bins == 2 * half + 1);
  }

  const CVector c2cut = zero_doppler_cut(radar_pilot(params(256, ChirpRate::rational(1, 65536))));
  const AbfMetrics m = abf_metrics(c2cut);
  CHECK(m.pslr_db == doctest::Approx(11.469441752294667).epsilon(1e-9));
  CHECK(std::isfinite(m.islr_db));
  CHECK(m.max_offpeak_db == doctest::Approx(-m.pslr_db).epsilon(1e-9));

  CHECK_THROWS_AS(abf_metrics(CVector{}), ValidationError);
  CHECK_THROWS_AS(abf_metrics(CVector(5)), ValidationError);
}
