#pragma once

#include <functional>
#include <span>

#include <Eigen/Dense>

#include "afdm/channel.hpp"
#include "afdm/types.hpp"
#include "afdm/waveform.hpp"

namespace afdm {

// y = H x in the symbol domain of a modulation, prefix handling folded in.
struct EffectiveChannel {
  Eigen::MatrixXcd matrix;

  int size() const { return static_cast<int>(matrix.rows()); }
  CVector apply(std::span<const Complex> x) const;
};

using SymbolMap = std::function<CVector(std::span<const Complex>)>;

// Column m is demodulate(circular_channel(modulate(e_m))). `modulate` maps Nc
// symbols to Nc prefix-free samples and `demodulate` does the reverse.
EffectiveChannel build_effective_channel(const SymbolMap& modulate, const SymbolMap& demodulate,
                                         const ChannelSpec& spec, const WaveformParams& params);

}  // namespace afdm
