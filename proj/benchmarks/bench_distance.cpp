#include <benchmark/benchmark.h>

#include "reachkit/distance.hpp"
#include "reachkit/shapes.hpp"

using namespace reachkit;

namespace {

// Disc of radius 1 in a window scaled so the cell count follows state.range.
GridSet<2> disc_grid(std::int64_t n) {
    double h = 3.0 / static_cast<double>(n - 1);
    Shape<2> sh;
    sh.kind = Shape<2>::Kind::Ball;
    sh.r1 = 1.0;
    return rasterize(sh, make_window<2>(Vec2{{0, 0}}, 1.5, h));
}

GridSet<3> ball_grid(std::int64_t n) {
    double h = 3.0 / static_cast<double>(n - 1);
    Shape<3> sh;
    sh.kind = Shape<3>::Kind::Ball;
    sh.r1 = 1.0;
    return rasterize(sh, make_window<3>(Vec3{{0, 0, 0}}, 1.5, h));
}

void BM_DistanceTransformPlane(benchmark::State& state) {
    GridSet<2> g = disc_grid(state.range(0));
    for (auto _ : state) {
        DistanceField<2> df = distance_transform(g);
        benchmark::DoNotOptimize(df.dist2.data());
    }
    state.SetItemsProcessed(state.iterations() * g.spec.cell_count());
}

void BM_DistanceTransformVolume(benchmark::State& state) {
    GridSet<3> g = ball_grid(state.range(0));
    for (auto _ : state) {
        DistanceField<3> df = distance_transform(g);
        benchmark::DoNotOptimize(df.dist2.data());
    }
    state.SetItemsProcessed(state.iterations() * g.spec.cell_count());
}

BENCHMARK(BM_DistanceTransformPlane)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Arg(1024);
BENCHMARK(BM_DistanceTransformVolume)->Arg(16)->Arg(32)->Arg(64)->Arg(96);

}  // namespace

BENCHMARK_MAIN();
