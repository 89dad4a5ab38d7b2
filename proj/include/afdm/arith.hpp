#pragma once

#include <cstdint>

#include "afdm/types.hpp"

namespace afdm {

struct OpCount {
  std::uint64_t complex_mults = 0;
  std::uint64_t complex_adds = 0;

  OpCount& operator+=(const OpCount& o) {
    complex_mults += o.complex_mults;
    complex_adds += o.complex_adds;
    return *this;
  }
};

// Arithmetic policies for the instrumented kernels. PlainArith is stateless
// and safe inside OpenMP regions; CountingArith mutates its counter and is
// only ever used by the serial instantiations.
struct PlainArith {
  static constexpr bool counting = false;
  Complex mul(Complex a, Complex b) const { return cmul(a, b); }
  Complex mul_conj(Complex a, Complex b) const { return cmul_conj(a, b); }
  Complex add(Complex a, Complex b) const { return a + b; }
  Complex sub(Complex a, Complex b) const { return a - b; }
};

class CountingArith {
 public:
  static constexpr bool counting = true;
  explicit CountingArith(OpCount& count) : count_(&count) {}

  Complex mul(Complex a, Complex b) const {
    ++count_->complex_mults;
    return cmul(a, b);
  }
  Complex mul_conj(Complex a, Complex b) const {
    ++count_->complex_mults;
    return cmul_conj(a, b);
  }
  Complex add(Complex a, Complex b) const {
    ++count_->complex_adds;
    return a + b;
  }
  Complex sub(Complex a, Complex b) const {
    ++count_->complex_adds;
    return a - b;
  }

 private:
  OpCount* count_;
};

}  // namespace afdm
