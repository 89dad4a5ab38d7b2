#pragma once

// Serial, direct-sum versions of the parallel kernels. Slow and simple; used
// by the tests and the benchmark as the baseline the fast paths must match.

#include <span>

#include "afdm/types.hpp"
#include "afdm/waveform.hpp"

namespace afdm::reference {

// O(Nc^2) evaluation of the kernel with exact phase reduction.
CVector idaft(std::span<const Complex> symbols, const WaveformParams& params);
CVector daft(std::span<const Complex> samples, const WaveformParams& params);

// out[l] = sum_n r[n] conj(s[(n - l) mod N])
CVector circular_correlation(std::span<const Complex> r, std::span<const Complex> s);

// g[l] = sum_k r[k] conj(s[k - l]) for l = -(N-1) .. N-1, both length N.
CVector linear_correlation(std::span<const Complex> r, std::span<const Complex> s);

CVector zero_doppler_cut(std::span<const Complex> s);

}  // namespace afdm::reference
