#include "afdm/reference.hpp"

#include <cmath>
#include <cstdint>

namespace afdm::reference {

namespace {

// exp(sign * j2pi (c1 n^2 + c2 m^2 + nm/Nc)) with each term reduced on its own.
Complex kernel(const WaveformParams& p, std::int64_t n, std::int64_t m, double sign) {
  const auto nc = static_cast<std::int64_t>(p.nc);
  const Complex a = p.c1.phasor(n * n);
  const Complex b = p.c2.phasor(m * m);
  const Complex c = unit_phasor(static_cast<double>((n * m) % nc) / static_cast<double>(nc));
  const Complex k = a * b * c;
  return sign > 0 ? k : std::conj(k);
}

void require(bool ok, const char* what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace

CVector idaft(std::span<const Complex> symbols, const WaveformParams& params) {
  require(static_cast<int>(symbols.size()) == params.nc, "reference::idaft: need Nc symbols");
  const double scale = 1.0 / std::sqrt(static_cast<double>(params.nc));
  CVector out(symbols.size());
  for (int n = 0; n < params.nc; ++n) {
    Complex acc{};
    for (int m = 0; m < params.nc; ++m) acc += symbols[static_cast<std::size_t>(m)] * kernel(params, n, m, 1.0);
    out[static_cast<std::size_t>(n)] = acc * scale;
  }
  return out;
}

CVector daft(std::span<const Complex> samples, const WaveformParams& params) {
  require(static_cast<int>(samples.size()) == params.nc, "reference::daft: need Nc samples");
  const double scale = 1.0 / std::sqrt(static_cast<double>(params.nc));
  CVector out(samples.size());
  for (int m = 0; m < params.nc; ++m) {
    Complex acc{};
    for (int n = 0; n < params.nc; ++n) acc += samples[static_cast<std::size_t>(n)] * kernel(params, n, m, -1.0);
    out[static_cast<std::size_t>(m)] = acc * scale;
  }
  return out;
}

CVector circular_correlation(std::span<const Complex> r, std::span<const Complex> s) {
  require(r.size() == s.size(), "reference::circular_correlation: length mismatch");
  const std::size_t n = r.size();
  CVector out(n);
  for (std::size_t l = 0; l < n; ++l) {
    Complex acc{};
    for (std::size_t k = 0; k < n; ++k) acc += r[k] * std::conj(s[(k + n - l) % n]);
    out[l] = acc;
  }
  return out;
}

CVector linear_correlation(std::span<const Complex> r, std::span<const Complex> s) {
  require(r.size() == s.size() && !r.empty(), "reference::linear_correlation: length mismatch");
  const auto n = static_cast<std::ptrdiff_t>(r.size());
  CVector out(static_cast<std::size_t>(2 * n - 1));
  for (std::ptrdiff_t l = -(n - 1); l < n; ++l) {
    Complex acc{};
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      const std::ptrdiff_t j = k - l;
      if (j >= 0 && j < n) acc += r[static_cast<std::size_t>(k)] * std::conj(s[static_cast<std::size_t>(j)]);
    }
    out[static_cast<std::size_t>(l + n - 1)] = acc;
  }
  return out;
}

CVector zero_doppler_cut(std::span<const Complex> s) {
  double energy = 0.0;
  for (const auto& v : s) energy += std::norm(v);
  require(energy > 0.0, "reference::zero_doppler_cut: zero-energy signal");
  CVector out = linear_correlation(s, s);
  for (auto& v : out) v /= energy;
  return out;
}

}  // namespace afdm::reference
