#include "afdm/baselines.hpp"

#include <cmath>
#include <string>

#include "afdm/fft.hpp"

namespace afdm {

namespace {

int exact_sqrt(int n) {
  const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (r * r != n) throw ValidationError("OTFS needs Nc to be a perfect square (Nc = " + std::to_string(n) + ")");
  return r;
}

void check_shape(int m, int n, const WaveformParams& params) {
  if (m <= 0 || n <= 0 || m * n != params.nc)
    throw ValidationError("OTFS grid " + std::to_string(m) + "x" + std::to_string(n) + " does not cover Nc = " +
                          std::to_string(params.nc) + " samples");
}

}  // namespace

WaveformParams ofdm_params(const WaveformParams& params) {
  WaveformParams p = params;
  p.c1 = ChirpRate::zero();
  p.c2 = ChirpRate::zero();
  return p;
}

OtfsGrid OtfsGrid::square_for(const WaveformParams& params) {
  const int side = exact_sqrt(params.nc);
  return {side, side, CVector(static_cast<std::size_t>(params.nc), Complex{})};
}

OtfsGrid OtfsGrid::pilot_for(const WaveformParams& params) {
  OtfsGrid g = square_for(params);
  std::fill(g.data.begin(), g.data.end(), Complex{1.0, 0.0});
  return g;
}

TfGrid otfs_isfft(const OtfsGrid& grid) {
  const int m = grid.delay_bins;
  const int n = grid.doppler_bins;
  if (static_cast<int>(grid.data.size()) != m * n) throw ValidationError("OTFS grid data size mismatch");
  Fft fft_m(static_cast<std::size_t>(m));
  Fft fft_n(static_cast<std::size_t>(n));

  // Doppler k -> symbol n: inverse DFT along k for each delay row.
  CVector work(static_cast<std::size_t>(n));
  CVector mid(grid.data.size());
  for (int l = 0; l < m; ++l) {
    for (int k = 0; k < n; ++k) work[k] = grid.at(l, k);
    fft_n.inverse(work);
    for (int s = 0; s < n; ++s) mid[static_cast<std::size_t>(s * m + l)] = work[s];
  }
  // Delay l -> subcarrier m: forward DFT along l for each symbol.
  TfGrid tf{m, n, CVector(grid.data.size())};
  const double scale = 1.0 / std::sqrt(static_cast<double>(m) * n);
  for (int s = 0; s < n; ++s) {
    std::span<Complex> row(mid.data() + static_cast<std::size_t>(s * m), static_cast<std::size_t>(m));
    fft_m.forward(row);
    for (int k = 0; k < m; ++k) tf.data[static_cast<std::size_t>(s * m + k)] = row[k] * scale;
  }
  return tf;
}

OtfsGrid otfs_sfft(const TfGrid& tf) {
  const int m = tf.subcarriers;
  const int n = tf.symbols;
  Fft fft_m(static_cast<std::size_t>(m));
  Fft fft_n(static_cast<std::size_t>(n));
  CVector mid(tf.data);
  for (int s = 0; s < n; ++s) fft_m.inverse(std::span<Complex>(mid.data() + static_cast<std::size_t>(s * m),
                                                               static_cast<std::size_t>(m)));
  OtfsGrid grid{m, n, CVector(tf.data.size())};
  CVector work(static_cast<std::size_t>(n));
  const double scale = 1.0 / std::sqrt(static_cast<double>(m) * n);
  for (int l = 0; l < m; ++l) {
    for (int s = 0; s < n; ++s) work[s] = mid[static_cast<std::size_t>(s * m + l)];
    fft_n.forward(work);
    for (int k = 0; k < n; ++k) grid.at(l, k) = work[k] * scale;
  }
  return grid;
}

TimeSignal otfs_modulate(const OtfsGrid& grid, const WaveformParams& params) {
  check_shape(grid.delay_bins, grid.doppler_bins, params);
  const int m = grid.delay_bins;
  TfGrid tf = otfs_isfft(grid);
  Fft fft_m(static_cast<std::size_t>(m));
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  CVector body(tf.data);
  for (int s = 0; s < tf.symbols; ++s) {
    std::span<Complex> block(body.data() + static_cast<std::size_t>(s * m), static_cast<std::size_t>(m));
    fft_m.inverse(block);
    for (auto& v : block) v *= scale;
  }
  TimeSignal out;
  out.sample_rate_hz = params.sample_rate_hz();
  out.prefix_len = static_cast<std::size_t>(params.cp_len);
  out.samples.reserve(body.size() + out.prefix_len);
  out.samples.insert(out.samples.end(), body.end() - params.cp_len, body.end());
  out.samples.insert(out.samples.end(), body.begin(), body.end());
  return out;
}

OtfsGrid otfs_demodulate(const TimeSignal& received, const WaveformParams& params) {
  const int side = exact_sqrt(params.nc);
  const std::size_t body_len = received.body_len();
  if (static_cast<int>(body_len) != params.nc ||
      (received.prefix_len != 0 && received.prefix_len != static_cast<std::size_t>(params.cp_len)))
    throw ValidationError("otfs_demodulate: expected Nc = " + std::to_string(params.nc) +
                          " samples after the prefix");
  const int m = side;
  const int n = side;
  CVector body(received.samples.begin() + static_cast<std::ptrdiff_t>(received.prefix_len), received.samples.end());
  Fft fft_m(static_cast<std::size_t>(m));
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (int s = 0; s < n; ++s) {
    std::span<Complex> block(body.data() + static_cast<std::size_t>(s * m), static_cast<std::size_t>(m));
    fft_m.forward(block);
    for (auto& v : block) v *= scale;
  }
  return otfs_sfft(TfGrid{m, n, std::move(body)});
}

EffectiveChannel otfs_effective_channel(const ChannelSpec& spec, const WaveformParams& params) {
  const int side = exact_sqrt(params.nc);
  auto modulate = [&](std::span<const Complex> x) {
    OtfsGrid g{side, side, CVector(x.begin(), x.end())};
    TimeSignal frame = otfs_modulate(g, params);
    return CVector(frame.samples.begin() + params.cp_len, frame.samples.end());
  };
  auto demodulate = [&](std::span<const Complex> r) {
    return otfs_demodulate(TimeSignal{CVector(r.begin(), r.end()), 0, params.sample_rate_hz()}, params).data;
  };
  return build_effective_channel(modulate, demodulate, spec, params);
}

}  // namespace afdm
