#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "rpurn/estimation.hpp"
#include "rpurn/evaluation.hpp"
#include "rpurn/sentiment_model.hpp"
#include "rpurn/urn.hpp"

using namespace rpurn;

namespace {

const std::vector<Bit>& synthetic(std::size_t n) {
  static std::vector<Bit> bits = simulate_series(ApproxParams::complete(0.4, 0.7, 0.99), 1 << 20, 5);
  static std::vector<Bit> prefix;
  prefix.assign(bits.begin(), bits.begin() + static_cast<long>(n));
  return prefix;
}

void BM_LogLikelihoodComplete(benchmark::State& state) {
  const auto bits = synthetic(static_cast<std::size_t>(state.range(0)));
  const ModelParams params = ApproxParams::complete(0.4, 0.7, 0.99);
  for (auto _ : state) benchmark::DoNotOptimize(log_likelihood(params, bits, 0, bits.size()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogLikelihoodComplete)->Range(1 << 12, 1 << 20);

void BM_LogLikelihoodPolya(benchmark::State& state) {
  const auto bits = synthetic(static_cast<std::size_t>(state.range(0)));
  const ModelParams params = PolyaPredictorParams::make(2.0, 5.0);
  for (auto _ : state) benchmark::DoNotOptimize(log_likelihood(params, bits, 0, bits.size()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogLikelihoodPolya)->Range(1 << 12, 1 << 20);

void BM_Fit(benchmark::State& state) {
  const auto bits = synthetic(static_cast<std::size_t>(state.range(1)));
  const auto kind = static_cast<ModelKind>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fit(kind, bits, bits.size()));
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_Fit)
    ->ArgsProduct({{0, 1, 2, 3}, {1 << 14, 1 << 17}})
    ->Unit(benchmark::kMillisecond);

void BM_Smooth(benchmark::State& state) {
  std::vector<double> y(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::sin(1e-3 * static_cast<double>(i));
  for (auto _ : state) benchmark::DoNotOptimize(smooth(y, static_cast<int>(state.range(1))));
}
BENCHMARK(BM_Smooth)->ArgsProduct({{1 << 14, 1 << 20}, {3, 50}})->Unit(benchmark::kMillisecond);

void BM_RPUrnSimulate(benchmark::State& state) {
  const RPUrnState urn(CountVector({1.0, 1.0}), CountVector({0.0, 0.0}), 1.0, 0.99);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(urn, static_cast<std::uint64_t>(state.range(0)), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RPUrnSimulate)->Arg(1 << 16);

}  // namespace

BENCHMARK_MAIN();
