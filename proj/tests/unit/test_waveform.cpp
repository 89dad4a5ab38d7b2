#include "doctest.h"

#include <cmath>

#include "afdm/rng.hpp"
#include "afdm/waveform.hpp"
#include "oracles.hpp"

using namespace afdm;

namespace {

WaveformParams small(int nc, ChirpRate c2 = {}, int cp = 2, int k_max = 1) {
  return make_params(nc, 1000.0, k_max, c2, cp, 1e9);
}

CVector random_symbols(int n, std::uint64_t seed) {
  Rng rng(seed);
  CVector x(static_cast<std::size_t>(n));
  for (auto& v : x) v = rng.complex_normal(1.0);
  return x;
}

// s[n] from the modulation kernel at any integer n, including n < 0 and n >= Nc.
Complex kernel_sample(const CVector& x, long double c1, long double c2, long long n) {
  const auto nc = static_cast<long long>(x.size());
  Complex acc{};
  for (long long m = 0; m < nc; ++m) {
    const long double ph = oracle::frac(c1, 1.0L * n * n) + oracle::frac(c2, 1.0L * m * m) +
                           static_cast<long double>(((n * m) % nc + nc) % nc) / nc;
    acc += x[static_cast<std::size_t>(m)] * oracle::expj(ph);
  }
  return acc / std::sqrt(static_cast<double>(nc));
}

}  // namespace

TEST_CASE("make_params applies the c1 rule") {
  const auto p = make_params(256, 39063.0, 1, ChirpRate::zero(), 32, 24e9);
  CHECK(p.c1 == ChirpRate::rational(3, 512));
  CHECK(p.duration_s() == doctest::Approx(25.6e-6).epsilon(1e-4));
  CHECK(p.bandwidth_hz() == doctest::Approx(10e6).epsilon(1e-3));
  CHECK(p.sample_rate_hz() == p.bandwidth_hz());
  CHECK(p.cpp_is_plain_cp());

  const auto tiny = make_params(2, 1.0, 0, ChirpRate::zero(), 0, 0.0);
  CHECK(tiny.c1 == ChirpRate::rational(1, 4));
  CHECK(tiny.cpp_is_plain_cp());
}

TEST_CASE("make_params rejects invalid parameters") {
  CHECK_THROWS_AS(make_params(255, 39063.0, 1, ChirpRate::zero(), 32, 24e9), ValidationError);
  CHECK_THROWS_AS(make_params(0, 39063.0, 1, ChirpRate::zero(), 0, 24e9), ValidationError);
  CHECK_THROWS_AS(make_params(8, 1.0, 1, ChirpRate::zero(), 8, 0.0), ValidationError);
  CHECK_THROWS_AS(make_params(8, 1.0, 1, ChirpRate::zero(), -1, 0.0), ValidationError);
  CHECK_THROWS_AS(make_params(8, 0.0, 1, ChirpRate::zero(), 2, 0.0), ValidationError);
  CHECK_THROWS_AS(make_params(8, 1.0, -1, ChirpRate::zero(), 2, 0.0), ValidationError);
}

TEST_CASE("plain-CP degeneracy needs 2 Nc c1 integral") {
  auto p = small(8);
  CHECK(p.cpp_is_plain_cp());
  p.c1 = ChirpRate::rational(1, 32);  // 1/(4 Nc)
  CHECK_FALSE(p.cpp_is_plain_cp());
}

TEST_CASE("transforms match the explicit matrix at Nc = 8") {
  const int nc = 8;
  for (const auto& c2 : {ChirpRate::zero(), ChirpRate::rational(1, 64), ChirpRate::real(0.3)}) {
    for (const auto& c1 : {ChirpRate::rational(3, 16), ChirpRate::rational(1, 32), ChirpRate::zero()}) {
      auto p = small(nc, c2);
      p.c1 = c1;
      const auto a = oracle::idaft_matrix(nc, c1.value(), c2.value());
      const CVector x = random_symbols(nc, 11);
      CHECK(oracle::max_abs_diff(idaft(x, p).samples, oracle::apply(a, x)) < 1e-12);
      const CVector s = random_symbols(nc, 12);
      CHECK(oracle::max_abs_diff(daft(TimeSignal{s, 0, 1.0}, p), oracle::apply(oracle::conj_transpose(a), s)) <
            1e-12);
    }
  }
}

TEST_CASE("round trip and unitarity") {
  Rng rng(3);
  for (const auto& c2 : {ChirpRate::zero(), ChirpRate::rational(1, 65536), ChirpRate::real(3e100)}) {
    const auto p = make_params(256, 39063.0, 1, c2, 32, 24e9);
    CVector x(256);
    for (auto& v : x) v = Complex(rng.uniform() < 0.5 ? -1 : 1, rng.uniform() < 0.5 ? -1 : 1) / std::sqrt(2.0);
    const TimeSignal s = idaft(x, p);
    CHECK(std::abs(s.energy() - 256.0 * 1.0) < 1e-9);
    CHECK(oracle::max_abs_diff(daft(s, p), x) < 1e-10);
  }
}

TEST_CASE("simple transform pairs") {
  SUBCASE("all-ones with c2 = 0 is an impulse for any c1") {
    for (const auto& c1 : {ChirpRate::rational(3, 16), ChirpRate::zero(), ChirpRate::rational(5, 16)}) {
      auto p = small(8);
      p.c1 = c1;
      const TimeSignal s = idaft(CVector(8, Complex{1.0, 0.0}), p);
      CHECK(std::abs(s.samples[0] - Complex(std::sqrt(8.0), 0.0)) < 1e-12);
      for (int n = 1; n < 8; ++n) CHECK(std::abs(s.samples[static_cast<std::size_t>(n)]) < 1e-12);
    }
  }
  SUBCASE("single bin at Nc = 4 with c1 = c2 = 0 is flat") {
    auto p = small(4, {}, 0, 0);
    p.c1 = ChirpRate::zero();
    const TimeSignal s = idaft(CVector{1.0, 0.0, 0.0, 0.0}, p);
    for (const auto& v : s.samples) CHECK(std::abs(v - Complex(0.5, 0.0)) < 1e-15);
  }
  SUBCASE("impulse demodulates to all-ones with c1 = c2 = 0") {
    auto p = small(8);
    p.c1 = ChirpRate::zero();
    CVector s(8);
    s[0] = std::sqrt(8.0);
    const CVector x = daft(TimeSignal{s, 0, 1.0}, p);
    for (const auto& v : x) CHECK(std::abs(v - Complex(1.0, 0.0)) < 1e-12);
  }
  SUBCASE("pilot at Nc = 256 is an impulse") {
    const auto p = make_params(256, 39063.0, 1, ChirpRate::zero(), 32, 24e9);
    const TimeSignal s = idaft(CVector(256, Complex{1.0, 0.0}), p);
    CHECK(std::abs(std::abs(s.samples[0]) - 16.0) < 1e-10);
    for (int n = 1; n < 256; ++n) CHECK(std::abs(s.samples[static_cast<std::size_t>(n)]) < 1e-10);
  }
}

TEST_CASE("transforms reject bad input") {
  const auto p = small(8);
  CHECK_THROWS_AS(idaft(CVector(7), p), ValidationError);
  CHECK_THROWS_AS(daft(TimeSignal{CVector(10), 2, 1.0}, p), ValidationError);
}

TEST_CASE("prefix under the c1 rule is a bitwise cyclic copy") {
  const auto p = make_params(256, 39063.0, 1, ChirpRate::rational(1, 65536), 32, 24e9);
  const TimeSignal s = idaft(random_symbols(256, 5), p);
  const TimeSignal f = add_cpp(s, p);
  REQUIRE(f.samples.size() == 288);
  CHECK(f.prefix_len == 32);
  for (int n = -32; n < 0; ++n) CHECK(f.at(n) == s.samples[static_cast<std::size_t>(n + 256)]);
  for (std::int64_t n = -32; n < 0; ++n) CHECK(std::abs(cpp_phase(p, n) - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("prefix off the c1 rule follows the quasi-periodic extension") {
  auto p = small(8, ChirpRate::rational(1, 64), 2);
  p.c1 = ChirpRate::rational(1, 32);
  const CVector x = random_symbols(8, 6);
  const TimeSignal s = idaft(x, p);
  const TimeSignal f = add_cpp(s, p);
  for (int n = -2; n < 0; ++n) {
    const long double phase = -oracle::frac(1.0L / 32, 64.0L + 16.0L * n);
    CHECK(std::abs(f.at(n) - oracle::expj(phase) * s.samples[static_cast<std::size_t>(n + 8)]) < 1e-12);
    CHECK(std::abs(f.at(n) - kernel_sample(x, 1.0L / 32, 1.0L / 64, n)) < 1e-12);
  }
  // c1 (Nc^2 + 2 Nc n) = 1.5 cycles at n = -1: the prefix sample is negated.
  CHECK(std::abs(f.at(-1) + s.samples[7]) < 1e-12);
  // s[n + Nc] = exp(j2pi c1 (Nc^2 + 2 Nc n)) s[n]
  for (int n = 0; n < 8; ++n) {
    const Complex ext = kernel_sample(x, 1.0L / 32, 1.0L / 64, n + 8);
    CHECK(std::abs(ext - oracle::expj(oracle::frac(1.0L / 32, 64.0L + 16.0L * n)) * s.samples[static_cast<std::size_t>(n)]) <
          1e-12);
  }
}

TEST_CASE("prefix edge cases") {
  const auto p0 = small(8, {}, 0);
  const TimeSignal s = idaft(random_symbols(8, 8), p0);
  const TimeSignal f = add_cpp(s, p0);
  CHECK(f.samples == s.samples);
  CHECK(f.prefix_len == 0);

  const auto p = small(8, {}, 3);
  const TimeSignal g = add_cpp(s, p);
  CHECK(remove_cpp(g, p).samples == s.samples);
  CHECK(remove_cpp(g, p).prefix_len == 0);
  CHECK_THROWS_AS(add_cpp(g, p), ValidationError);
  CHECK_THROWS_AS(remove_cpp(s, p), ValidationError);
}

TEST_CASE("radar pilot agrees with the transform where phases resolve") {
  for (const auto& c2 : {ChirpRate::zero(), ChirpRate::rational(1, 65536), ChirpRate::real(1e-7)}) {
    const auto p = make_params(256, 39063.0, 1, c2, 32, 24e9);
    const TimeSignal direct = radar_pilot(p);
    const TimeSignal fast = idaft(CVector(256, Complex{1.0, 0.0}), p);
    CHECK(oracle::max_abs_diff(direct.samples, fast.samples) < 1e-10);
    CHECK(direct.sample_rate_hz == p.sample_rate_hz());
  }
  const auto wild = make_params(256, 39063.0, 1, ChirpRate::real(3e100), 32, 24e9);
  const TimeSignal s = radar_pilot(wild);
  CHECK(s.samples.size() == 256);
  for (const auto& v : s.samples) CHECK(std::isfinite(std::abs(v)));
  CHECK(radar_pilot(wild).samples == s.samples);
}

TEST_CASE("Gray QPSK mapping") {
  const double a = 1.0 / std::sqrt(2.0);
  const std::vector<std::uint8_t> bits{0, 0, 0, 1, 1, 1, 1, 0};
  const CVector s = qpsk_map(bits);
  CHECK(s[0] == Complex(a, a));
  CHECK(s[1] == Complex(-a, a));
  CHECK(s[2] == Complex(-a, -a));
  CHECK(s[3] == Complex(a, -a));
  for (const auto& v : s) CHECK(std::norm(v) == doctest::Approx(1.0));
  CHECK(qpsk_demap(s) == bits);
  CHECK_THROWS_AS(qpsk_map(std::vector<std::uint8_t>{1, 0, 1}), ValidationError);
}

TEST_CASE("QPSK round trip and high-SNR demapping") {
  Rng rng(21);
  std::vector<std::uint8_t> bits(512);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
  CHECK(qpsk_demap(qpsk_map(bits)) == bits);

  int errors = 0;
  for (int t = 0; t < 10000; ++t) {
    std::vector<std::uint8_t> b(2);
    b[0] = static_cast<std::uint8_t>(rng.next_u64() & 1);
    b[1] = static_cast<std::uint8_t>(rng.next_u64() & 1);
    CVector s = qpsk_map(b);
    s[0] += rng.complex_normal(1e-3);  // 30 dB
    errors += qpsk_demap(s) != b;
  }
  CHECK(errors == 0);
}
