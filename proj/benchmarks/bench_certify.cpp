#include <benchmark/benchmark.h>

#include "reachkit/reach.hpp"
#include "reachkit/shapes.hpp"

using namespace reachkit;

namespace {

GridSet<2> bundled_grid(const char* name) {
    BundledShape b = bundled_shape(name);
    return rasterize(b.shape, b.spec);
}

// Certified outcome, pair budget swept by state.range.
void BM_CertifyAnnulus(benchmark::State& state) {
    GridSet<2> K = bundled_grid("annulus");
    CertifyOptions opts;
    opts.pair_budget = state.range(0);
    opts.seed = 1;
    for (auto _ : state) {
        ReachVerdict<2> v = certify_reach(K, 0.9, opts);
        benchmark::DoNotOptimize(v.certified);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

// Violation found through the medial candidates, cost of the guided stage.
void BM_ViolationDiscovery(benchmark::State& state) {
    GridSet<2> K = bundled_grid("twopoint_double");
    for (auto _ : state) {
        ReachVerdict<2> v = certify_reach(K, 1.05);
        benchmark::DoNotOptimize(v.certified);
    }
}

void BM_MedialEstimate(benchmark::State& state) {
    GridSet<2> K = bundled_grid("annulus");
    for (auto _ : state) {
        UnpReport<2> rep = unp_reach_estimate(K, 1.3);
        benchmark::DoNotOptimize(rep.reach_estimate);
    }
    state.SetItemsProcessed(state.iterations() * K.spec.cell_count());
}

BENCHMARK(BM_CertifyAnnulus)->Arg(1000)->Arg(5000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ViolationDiscovery)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MedialEstimate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
