#include "afdm/linear_channel.hpp"

namespace afdm {

CVector EffectiveChannel::apply(std::span<const Complex> x) const {
  if (static_cast<Eigen::Index>(x.size()) != matrix.cols()) throw ValidationError("effective channel: size mismatch");
  Eigen::Map<const Eigen::VectorXcd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::VectorXcd y = matrix * xv;
  return CVector(y.data(), y.data() + y.size());
}

EffectiveChannel build_effective_channel(const SymbolMap& modulate, const SymbolMap& demodulate,
                                         const ChannelSpec& spec, const WaveformParams& params) {
  const int nc = params.nc;
  EffectiveChannel h;
  h.matrix.resize(nc, nc);
#pragma omp parallel for schedule(static)
  for (int m = 0; m < nc; ++m) {
    CVector e(static_cast<std::size_t>(nc), Complex{});
    e[m] = 1.0;
    const TimeSignal s{modulate(e), 0, params.sample_rate_hz()};
    const TimeSignal r = apply_channel_circular(s, spec, params);
    const CVector y = demodulate(r.samples);
    for (int i = 0; i < nc; ++i) h.matrix(i, m) = y[i];
  }
  return h;
}

}  // namespace afdm
