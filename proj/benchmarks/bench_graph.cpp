// Graph-stage microbenchmarks: independence testing, skeleton discovery,
// description-length scoring, and the greedy orientation search (with the
// asymmetry term disabled, so no network training is involved).
#include <benchmark/benchmark.h>

#include <cstdint>

#include "ccl/dgp.hpp"
#include "ccl/graph.hpp"
#include "ccl/independence.hpp"
#include "ccl/mdl.hpp"
#include "ccl/search.hpp"

namespace {

ccl::ColumnData scm3_columns(std::size_t n) {
  ccl::Scm3Spec spec;
  spec.n = n;
  const ccl::Scm3Sample s = ccl::sample_scm3(spec, 1);
  return {s.x1, s.x2, s.x3};
}

}  // namespace

static void BM_FisherZPartialCorr(benchmark::State& state) {
  const ccl::ColumnData data = scm3_columns(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(ccl::fisher_z_partial_corr(data, 0, 2, {1}));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_FisherZPartialCorr)->Arg(500)->Arg(2000);

static void BM_PcStableSkeleton(benchmark::State& state) {
  const ccl::ColumnData data = scm3_columns(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(ccl::pc_stable_skeleton(data, 0.01));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_PcStableSkeleton)->Arg(500)->Arg(2000);

static void BM_MdlScore(benchmark::State& state) {
  const ccl::ColumnData data = scm3_columns(state.range(0));
  ccl::Dag truth(3);
  truth.add_edge(0, 1);
  truth.add_edge(1, 2);
  truth.add_edge(0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ccl::mdl_score(truth, data));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_MdlScore)->Arg(500)->Arg(2000);

static void BM_GreedyOrientMdlOnly(benchmark::State& state) {
  const ccl::ColumnData data = scm3_columns(state.range(0));
  const ccl::Skeleton skeleton = ccl::Skeleton::complete(3);
  ccl::CclParams params;
  params.lambda2 = 1.0;
  params.lambda3 = 0.0;  // no edge training: pure search cost
  const ccl::RunConfig cca_cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        ccl::xges_orient(skeleton, data, params, cca_cfg));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_GreedyOrientMdlOnly)->Arg(500)->Arg(2000);
