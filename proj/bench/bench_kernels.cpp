#include <benchmark/benchmark.h>

#include "afdm/ambiguity.hpp"
#include "afdm/estimator.hpp"
#include "afdm/reference.hpp"
#include "afdm/rng.hpp"
#include "afdm/waveform.hpp"

using namespace afdm;

namespace {

WaveformParams params_for(int nc) { return make_params(nc, 39063.0, 1, ChirpRate::zero(), nc / 8, 24e9); }

TimeSignal random_signal(int nc, std::uint64_t seed) {
  Rng rng(seed);
  TimeSignal s;
  s.samples.resize(static_cast<std::size_t>(nc));
  for (auto& v : s.samples) v = rng.complex_normal(1.0);
  return s;
}

void BM_CircularSerial(benchmark::State& state) {
  const int nc = static_cast<int>(state.range(0));
  const auto r = random_signal(nc, 1), s = random_signal(nc, 2);
  for (auto _ : state) benchmark::DoNotOptimize(reference::circular_correlation(r.samples, s.samples));
}

void BM_CircularParallel(benchmark::State& state) {
  const int nc = static_cast<int>(state.range(0));
  const auto p = params_for(nc);
  const auto r = random_signal(nc, 1), s = random_signal(nc, 2);
  for (auto _ : state) benchmark::DoNotOptimize(matched_filter_circular(r, s, p));
}

void BM_Fft(benchmark::State& state) {
  const int nc = static_cast<int>(state.range(0));
  const auto p = params_for(nc);
  const auto r = random_signal(nc, 1), s = random_signal(nc, 2);
  for (auto _ : state) benchmark::DoNotOptimize(matched_filter_fft(r, s, p));
}

void BM_ZeroDopplerCutSerial(benchmark::State& state) {
  const auto s = random_signal(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(reference::zero_doppler_cut(s.samples));
}

void BM_ZeroDopplerCutParallel(benchmark::State& state) {
  const auto s = random_signal(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(zero_doppler_cut(s));
}

void BM_IdaftSerial(benchmark::State& state) {
  const int nc = static_cast<int>(state.range(0));
  const auto p = params_for(nc);
  const auto x = random_signal(nc, 4);
  for (auto _ : state) benchmark::DoNotOptimize(reference::idaft(x.samples, p));
}

void BM_IdaftFast(benchmark::State& state) {
  const int nc = static_cast<int>(state.range(0));
  const AffineTransform t(params_for(nc));
  const auto x = random_signal(nc, 4);
  for (auto _ : state) benchmark::DoNotOptimize(t.inverse(x.samples));
}

}  // namespace

BENCHMARK(BM_CircularSerial)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_CircularParallel)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_Fft)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_ZeroDopplerCutSerial)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_ZeroDopplerCutParallel)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_IdaftSerial)->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_IdaftFast)->RangeMultiplier(4)->Range(64, 1024);

BENCHMARK_MAIN();
