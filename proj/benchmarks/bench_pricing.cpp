#include <vector>

#include <benchmark/benchmark.h>

#include "relaypay/cell_sim.hpp"
#include "relaypay/full_coop.hpp"
#include "relaypay/partial_coop.hpp"
#include "relaypay/stochastic.hpp"

namespace relaypay {
namespace {

constexpr double kSigma2 = 1e-14 * 5361.119240461224;

SourceProfile source() {
  const double G = path_gain(ChannelParams{}, 50.0);
  return {0.9, 0.5 * G, 6.0};
}

UncertaintyModel belief() { return {1.0, 1.0, path_gain(ChannelParams{}, 50.0), kSigma2, 0.2}; }

void BM_OptimizePrice(benchmark::State& state) {
  const SourceProfile src = source();
  const UncertaintyModel u = belief();
  const AlgorithmConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(optimize_price(3.0, src, u, cfg));
}
BENCHMARK(BM_OptimizePrice);

void BM_OptimizeJoint(benchmark::State& state) {
  const SourceProfile src = source();
  const UncertaintyModel u = belief();
  const AlgorithmConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(optimize_joint(src, u, cfg));
}
BENCHMARK(BM_OptimizeJoint);

void BM_DecideComplete(benchmark::State& state) {
  const double G = path_gain(ChannelParams{}, 50.0);
  const Party src{0.9, LinkGain::make(G, 0.5)};
  Rng rng(1, 0);
  std::vector<Party> helpers;
  for (int k = 0; k < state.range(0); ++k) {
    helpers.push_back({rng.uniform(), LinkGain::make(G, rng.exponential())});
  }
  for (auto _ : state) benchmark::DoNotOptimize(decide_complete(src, helpers, 6.0, kSigma2, 1.0, true));
}
BENCHMARK(BM_DecideComplete)->Arg(1)->Arg(4)->Arg(16);

void BM_SimulationSlot(benchmark::State& state) {
  SimConfig cfg;
  cfg.scheme = static_cast<Scheme>(state.range(0));
  cfg.channel.sigma2 = 1e-14 * 140.0;
  cfg.outage_energy = OutageEnergy::Capped;
  SimState st = initial_state(cfg);
  for (auto _ : state) {
    if (st.slot >= cfg.slots) {
      state.PauseTiming();
      st = initial_state(cfg);
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(step_slot(st, cfg));
  }
}
BENCHMARK(BM_SimulationSlot)
    ->Arg(static_cast<int>(Scheme::DT))
    ->Arg(static_cast<int>(Scheme::PartSD))
    ->Arg(static_cast<int>(Scheme::FullSD));

}  // namespace
}  // namespace relaypay

BENCHMARK_MAIN();
