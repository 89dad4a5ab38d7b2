#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace afdm {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kSpeedOfLight = 299792458.0;

// Precondition violation on user-supplied values. The CLI maps this to exit
// status 1; everything else that escapes is a runtime failure.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an equalizer is asked to invert a (numerically) singular system.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// std::complex operator* goes through the C99 Annex G NaN/inf recovery path;
// every kernel here works on finite values so the plain formula is enough.
inline Complex cmul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

// a * conj(b)
inline Complex cmul_conj(Complex a, Complex b) {
  return {a.real() * b.real() + a.imag() * b.imag(),
          a.imag() * b.real() - a.real() * b.imag()};
}

// Complex samples plus the length of the guard interval sitting in front of
// them. Sample i of `samples` is time index n = i - prefix_len.
struct TimeSignal {
  CVector samples;
  std::size_t prefix_len = 0;
  double sample_rate_hz = 0.0;

  std::size_t body_len() const { return samples.size() - prefix_len; }
  bool has_prefix() const { return prefix_len != 0; }

  // Sample at time index n in [-prefix_len, body_len).
  const Complex& at(std::ptrdiff_t n) const {
    return samples[static_cast<std::size_t>(n + static_cast<std::ptrdiff_t>(prefix_len))];
  }
  Complex& at(std::ptrdiff_t n) {
    return samples[static_cast<std::size_t>(n + static_cast<std::ptrdiff_t>(prefix_len))];
  }

  double energy() const {
    double e = 0.0;
    for (const auto& v : samples) e += std::norm(v);
    return e;
  }
};

}  // namespace afdm
