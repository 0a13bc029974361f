#include <benchmark/benchmark.h>

#include "reachkit/rhull.hpp"
#include "reachkit/shapes.hpp"

using namespace reachkit;

namespace {

// Annulus [1, 1.5] with margin wide enough for closing at R up to 0.9.
GridSet<2> annulus_grid(std::int64_t n) {
    double h = 7.0 / static_cast<double>(n - 1);
    Shape<2> sh;
    sh.kind = Shape<2>::Kind::Shell;
    sh.r0 = 1.0;
    sh.r1 = 1.5;
    return rasterize(sh, make_window<2>(Vec2{{0, 0}}, 3.5, h));
}

void BM_Erode(benchmark::State& state) {
    GridSet<2> g = annulus_grid(state.range(0));
    for (auto _ : state) {
        GridSet<2> e = erode(g, 0.9);
        benchmark::DoNotOptimize(e.occ.data());
    }
    state.SetItemsProcessed(state.iterations() * g.spec.cell_count());
}

void BM_Closing(benchmark::State& state) {
    GridSet<2> g = annulus_grid(state.range(0));
    for (auto _ : state) {
        ClosingResult c = closing(g, 0.9);
        benchmark::DoNotOptimize(c.grid.occ.data());
    }
    state.SetItemsProcessed(state.iterations() * g.spec.cell_count());
}

void BM_HullAsBallIntersection(benchmark::State& state) {
    GridSet<2> g = annulus_grid(state.range(0));
    for (auto _ : state) {
        GridSet<2> hull = hull_as_ball_intersection(g, 0.9);
        benchmark::DoNotOptimize(hull.occ.data());
    }
    state.SetItemsProcessed(state.iterations() * g.spec.cell_count());
}

BENCHMARK(BM_Erode)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(BM_Closing)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(BM_HullAsBallIntersection)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
