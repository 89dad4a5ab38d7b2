#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "afdm/types.hpp"

namespace afdm {

// A chirp coefficient c used in phase terms exp(j2pi c k) with integer k.
//
// Rational coefficients (p/q) are reduced exactly: (p k mod q) / q. Real
// coefficients are reduced with fmod while c*k still carries fractional bits.
// Beyond 2^52 a double has no fractional part left, so the phase 2pi*c*k is
// evaluated unreduced, which is what a direct floating-point implementation
// does; the resulting phases are deterministic with glibc but otherwise only
// statistically reproducible.
class ChirpRate {
 public:
  ChirpRate() = default;

  static ChirpRate rational(std::int64_t num, std::int64_t den);
  static ChirpRate real(double value);
  static ChirpRate zero() { return {}; }

  // c1 = (2 k_max + 1) / (2 Nc)
  static ChirpRate from_doppler_rule(int k_max, int nc);

  // Accepts a decimal ("0", "3e100", "-0.25"), a rational ("1/65536") or the
  // shorthand "K/Nc^2" with the subcarrier count substituted.
  static ChirpRate parse(std::string_view text, int nc);

  double value() const;
  bool is_rational() const { return rational_; }
  bool is_zero() const { return rational_ ? num_ == 0 : real_ == 0.0; }
  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  // True when c*k mod 1 can be represented, i.e. the phase is well defined.
  bool resolves(std::int64_t k) const;

  // Fractional part of c*k in [0, 1). Only meaningful when resolves(k).
  double cycles(std::int64_t k) const;

  // exp(j 2pi c k)
  Complex phasor(std::int64_t k) const;

  // Round-trips through parse().
  std::string to_string() const;

  friend bool operator==(const ChirpRate& a, const ChirpRate& b) {
    if (a.rational_ != b.rational_) return false;
    return a.rational_ ? (a.num_ == b.num_ && a.den_ == b.den_) : a.real_ == b.real_;
  }

 private:
  bool rational_ = true;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  double real_ = 0.0;
};

// exp(j 2pi f) for f given in cycles; reduces f to [-0.5, 0.5) first.
Complex unit_phasor(double cycles);

}  // namespace afdm
