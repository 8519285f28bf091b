#include <benchmark/benchmark.h>

#include "dmt/curves.hpp"
#include "dmt/exponent_opt.hpp"
#include "dmt/montecarlo.hpp"
#include "dmt/protocols.hpp"

using namespace dmt;

namespace {

void BM_SampleRealization(benchmark::State& state) {
  const AntennaConfig config(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)),
                             static_cast<int>(state.range(0)));
  Stream stream(1);
  ChannelRealization real;
  for (auto _ : state) {
    sample_realization(config, stream, real);
    benchmark::DoNotOptimize(real.h1(0, 0));
  }
}
BENCHMARK(BM_SampleRealization)->Arg(1)->Arg(2)->Arg(4);

void BM_Capacity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Stream stream(2);
  const ChannelRealization real = sample_realization(AntennaConfig(n, n, n), stream);
  const SnrPoint snr = SnrPoint::from_db(30.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(capacity(real.h1, n, snr));
  }
}
BENCHMARK(BM_Capacity)->Arg(1)->Arg(2)->Arg(4);

void BM_CfOutage(benchmark::State& state) {
  Stream stream(3);
  const ChannelRealization real = sample_realization(AntennaConfig(2, 2, 2), stream);
  const SnrPoint snr = SnrPoint::from_db(25.0);
  const RateAssignment rates = scaled_rates({0.25, 0.25}, snr);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cf_outage(real, snr, rates).message1_in_outage);
  }
}
BENCHMARK(BM_CfOutage);

void BM_DfOutage(benchmark::State& state) {
  Stream stream(4);
  const ChannelRealization real = sample_realization(AntennaConfig(2, 2, 2), stream);
  const SnrPoint snr = SnrPoint::from_db(25.0);
  const RateAssignment rates = scaled_rates({0.25, 0.25}, snr);
  for (auto _ : state) {
    benchmark::DoNotOptimize(df_outage(real, snr, rates).message1_in_outage);
  }
}
BENCHMARK(BM_DfOutage);

void BM_DcfOutage(benchmark::State& state) {
  Stream stream(5);
  const ChannelRealization real = sample_realization(AntennaConfig(2, 2, 2), stream);
  const SnrPoint snr = SnrPoint::from_db(25.0);
  const RateAssignment rates = scaled_rates({0.25, 0.0}, snr);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dcf_outage(real, snr, rates.rate1).message1_in_outage);
  }
}
BENCHMARK(BM_DcfOutage);

void BM_EstimateOutage(benchmark::State& state) {
  const AntennaConfig config(1, 1, 1);
  const SnrPoint snr = SnrPoint::from_db(25.0);
  TrialPlan plan;
  plan.trials_per_point = state.range(0);
  plan.workers = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        estimate_outage(Protocol::CF, config, {0.25, 0.25}, snr, plan).failures[0]);
  }
  state.SetItemsProcessed(state.iterations() * plan.trials_per_point);
}
BENCHMARK(BM_EstimateOutage)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_DcfDmtOptimizer(benchmark::State& state) {
  const AntennaConfig config(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)),
                             static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dcf_dmt(config, 0.25));
  }
}
BENCHMARK(BM_DcfDmtOptimizer)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
