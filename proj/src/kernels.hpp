#pragma once

// Matched-filter kernels shared by the estimator and the serial reference
// path. Instantiated with PlainArith they run under OpenMP; with
// CountingArith they run serially and tally every complex operation.

#include <cstddef>
#include <span>

#include "afdm/arith.hpp"
#include "afdm/fft.hpp"
#include "afdm/types.hpp"

namespace afdm::kernels {

// Direct-form FIR: out[i] = sum_{j < F} padded[i + j] * conj(ref[j]), F = ref.size().
// Every tap is multiplied, zero padding included.
template <class Arith>
void fir_correlate(std::span<const Complex> padded, std::span<const Complex> ref, std::span<Complex> out,
                   Arith arith) {
  const auto taps = static_cast<std::ptrdiff_t>(ref.size());
  const auto count = static_cast<std::ptrdiff_t>(out.size());
  auto lag = [&](std::ptrdiff_t i) {
    Complex acc{};
    const Complex* x = padded.data() + i;
    for (std::ptrdiff_t j = 0; j < taps; ++j) acc = arith.add(acc, arith.mul_conj(x[j], ref[j]));
    out[i] = acc;
  };
  if constexpr (Arith::counting) {
    for (std::ptrdiff_t i = 0; i < count; ++i) lag(i);
  } else {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) lag(i);
  }
}

// out[l] = sum_n r[n] conj(s[(n - l) mod N])
template <class Arith>
void circular_correlate(std::span<const Complex> r, std::span<const Complex> s, std::span<Complex> out,
                        Arith arith) {
  const auto n = static_cast<std::ptrdiff_t>(r.size());
  auto lag = [&](std::ptrdiff_t l) {
    Complex acc{};
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      std::ptrdiff_t idx = k - l;
      if (idx < 0) idx += n;
      acc = arith.add(acc, arith.mul_conj(r[k], s[idx]));
    }
    out[l] = acc;
  };
  if constexpr (Arith::counting) {
    for (std::ptrdiff_t l = 0; l < n; ++l) lag(l);
  } else {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t l = 0; l < n; ++l) lag(l);
  }
}

template <class Arith>
CVector fft_correlate(std::span<const Complex> r, std::span<const Complex> s, Arith arith) {
  const std::size_t n = r.size();
  Fft fft(n);
  CVector rf(r.begin(), r.end());
  CVector sf(s.begin(), s.end());
  fft.forward(std::span<Complex>(rf), arith);
  fft.forward(std::span<Complex>(sf), arith);
  for (std::size_t k = 0; k < n; ++k) rf[k] = arith.mul_conj(rf[k], sf[k]);
  fft.inverse(std::span<Complex>(rf), arith);
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& v : rf) v *= scale;
  return rf;
}

}  // namespace afdm::kernels
