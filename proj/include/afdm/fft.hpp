#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "afdm/arith.hpp"
#include "afdm/types.hpp"

namespace afdm {

// Unnormalized DFT of arbitrary length: iterative radix-2 for powers of two,
// Bluestein's chirp-z algorithm otherwise. Kept in-house so the matched-filter
// complexity probe can count every butterfly multiply.
//
//   forward: X[k] = sum_n x[n] exp(-j2pi kn/N)
//   inverse: x[n] = sum_k X[k] exp(+j2pi kn/N)   (no 1/N)
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }

  void forward(std::span<Complex> data) const {
    PlainArith a;
    forward(data, a);
  }
  void inverse(std::span<Complex> data) const {
    PlainArith a;
    inverse(data, a);
  }

  template <class Arith>
  void forward(std::span<Complex> data, Arith& arith) const;
  template <class Arith>
  void inverse(std::span<Complex> data, Arith& arith) const;

 private:
  template <class Arith>
  void radix2(std::span<Complex> data, bool inverse, Arith& arith) const;
  template <class Arith>
  void bluestein(std::span<Complex> data, Arith& arith) const;

  std::size_t n_;
  bool pow2_;
  std::vector<std::uint32_t> bitrev_;
  CVector twiddle_;  // exp(-j2pi k/n), k < n/2

  // Bluestein state: chirp exp(-j pi k^2/n) and the transformed kernel.
  CVector chirp_;
  CVector kernel_spectrum_;
  std::unique_ptr<Fft> inner_;
};

bool is_power_of_two(std::size_t n);

template <class Arith>
void Fft::radix2(std::span<Complex> a, bool inverse, Arith& arith) const {
  const std::size_t n = n_;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = bitrev_[i];
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        Complex w = twiddle_[j * step];
        if (inverse) w = std::conj(w);
        const Complex u = a[i + j];
        const Complex v = arith.mul(a[i + j + half], w);
        a[i + j] = arith.add(u, v);
        a[i + j + half] = arith.sub(u, v);
      }
    }
  }
}

template <class Arith>
void Fft::bluestein(std::span<Complex> a, Arith& arith) const {
  const std::size_t m = inner_->size();
  CVector work(m, Complex{});
  for (std::size_t k = 0; k < n_; ++k) work[k] = arith.mul(a[k], chirp_[k]);
  inner_->forward(std::span<Complex>(work), arith);
  for (std::size_t k = 0; k < m; ++k) work[k] = arith.mul(work[k], kernel_spectrum_[k]);
  inner_->inverse(std::span<Complex>(work), arith);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n_; ++k) a[k] = arith.mul(work[k], chirp_[k]) * scale;
}

template <class Arith>
void Fft::forward(std::span<Complex> data, Arith& arith) const {
  if (data.size() != n_) throw std::invalid_argument("fft: length mismatch");
  if (n_ <= 1) return;
  if (pow2_) {
    radix2(data, false, arith);
  } else {
    bluestein(data, arith);
  }
}

template <class Arith>
void Fft::inverse(std::span<Complex> data, Arith& arith) const {
  if (data.size() != n_) throw std::invalid_argument("fft: length mismatch");
  if (n_ <= 1) return;
  if (pow2_) {
    radix2(data, true, arith);
    return;
  }
  // ifft(x) = conj(fft(conj(x)))
  for (auto& v : data) v = std::conj(v);
  bluestein(data, arith);
  for (auto& v : data) v = std::conj(v);
}

}  // namespace afdm
