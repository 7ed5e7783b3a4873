// Training-path microbenchmarks: PRNG throughput, forward/backward passes,
// and full optimizer steps across network widths. These are the inner loops
// that dominate every experiment's runtime.
#include <benchmark/benchmark.h>

#include <cstdint>

#include "ccl/dgp.hpp"
#include "ccl/mlp.hpp"
#include "ccl/rng.hpp"

namespace {

ccl::Dataset cubic_dataset(std::size_t n) {
  ccl::DgpSpec spec;
  spec.kind = ccl::DgpKind::Cubic;
  spec.n = n;
  spec.sigma = 0.16;
  const ccl::SampleSet s = ccl::sample_bivariate(spec, 1);
  return ccl::make_dataset(ccl::zscore(s.x).values, ccl::zscore(s.y).values);
}

ccl::MlpConfig net(std::size_t width) {
  ccl::MlpConfig cfg;
  cfg.hidden = {width, width};
  return cfg;
}

}  // namespace

static void BM_RngNormal(benchmark::State& state) {
  ccl::Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(rng.normal());
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_RngNormal);

static void BM_ForwardPass(benchmark::State& state) {
  const ccl::Mlp mlp = ccl::init_mlp(net(state.range(0)), 1);
  const ccl::Dataset data = cubic_dataset(256);
  for (auto _ : state)
    benchmark::DoNotOptimize(ccl::forward(mlp, data.inputs));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 256);
}
BENCHMARK(BM_ForwardPass)->Arg(32)->Arg(64)->Arg(128);

static void BM_Backprop(benchmark::State& state) {
  const ccl::Mlp mlp = ccl::init_mlp(net(state.range(0)), 1);
  const ccl::Dataset data = cubic_dataset(64);
  for (auto _ : state)
    benchmark::DoNotOptimize(ccl::backprop(mlp, data.inputs, data.targets));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 64);
}
BENCHMARK(BM_Backprop)->Arg(32)->Arg(64)->Arg(128);

static void BM_TrainStepAdam(benchmark::State& state) {
  ccl::Mlp mlp = ccl::init_mlp(net(state.range(0)), 1);
  ccl::OptState opt_state = ccl::OptState::zeros_like(mlp);
  const ccl::OptimizerSpec opt = ccl::OptimizerSpec::adam();
  const ccl::Dataset data = cubic_dataset(64);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        ccl::train_step(mlp, opt_state, data.inputs, data.targets, opt));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_TrainStepAdam)->Arg(32)->Arg(64)->Arg(128);

// One full scoring-direction training run (uncapped threshold, fixed 100
// steps): the unit the experiment runtimes scale in.
static void BM_TrainHundredSteps(benchmark::State& state) {
  const ccl::Dataset data = cubic_dataset(256);
  ccl::TrainConfig tc;
  tc.tau = 1e-12;
  tc.t_max = 100;
  tc.eval_every = 25;
  tc.seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(ccl::train_to_threshold(
        net(state.range(0)), data, tc, ccl::OptimizerSpec::adam()));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 100);
}
BENCHMARK(BM_TrainHundredSteps)->Arg(32)->Arg(64)->Arg(128)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
