#include "afdm/fft.hpp"

#include <cmath>

namespace afdm {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Fft::Fft(std::size_t n) : n_(n), pow2_(is_power_of_two(n)) {
  if (n == 0) throw std::invalid_argument("fft: zero length");
  if (pow2_) {
    bitrev_.resize(n);
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
      bitrev_[i] = static_cast<std::uint32_t>(r);
    }
    twiddle_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double ang = -kTwoPi * static_cast<double>(k) / static_cast<double>(n);
      twiddle_[k] = {std::cos(ang), std::sin(ang)};
    }
    return;
  }

  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;
  inner_ = std::make_unique<Fft>(m);

  // k^2 mod 2n keeps the chirp argument small and exact.
  chirp_.resize(n);
  const std::size_t two_n = 2 * n;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t k2 = (k * k) % two_n;
    const double ang = -kPi * static_cast<double>(k2) / static_cast<double>(n);
    chirp_[k] = {std::cos(ang), std::sin(ang)};
  }
  kernel_spectrum_.assign(m, Complex{});
  kernel_spectrum_[0] = std::conj(chirp_[0]);
  for (std::size_t k = 1; k < n; ++k) {
    kernel_spectrum_[k] = std::conj(chirp_[k]);
    kernel_spectrum_[m - k] = std::conj(chirp_[k]);
  }
  inner_->forward(std::span<Complex>(kernel_spectrum_));
}

}  // namespace afdm
