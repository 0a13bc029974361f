#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "reachkit/components.hpp"
#include "test_util.hpp"

using namespace reachkit;
using testutil::Rng;

namespace {

template <std::size_t D>
std::vector<std::int64_t> widen(const std::vector<std::int32_t>& labels) {
    return std::vector<std::int64_t>(labels.begin(), labels.end());
}

template <std::size_t D>
void partition_matches_oracle(const GridSet<D>& g, Adjacency adj) {
    Labeling got = connected_components(g, adj);
    std::vector<std::int64_t> want = oracles::relaxation_labels<D>(g, adj);
    CHECK(oracles::same_partition(widen<D>(got.labels), want));
    // count equals the number of distinct labels
    std::vector<std::int32_t> seen;
    for (std::int32_t l : got.labels)
        if (l >= 0) seen.push_back(l);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    CHECK(static_cast<std::int32_t>(seen.size()) == got.count);
    // labels are issued densely from zero in discovery order
    for (std::size_t i = 0; i < seen.size(); ++i)
        CHECK(seen[i] == static_cast<std::int32_t>(i));
    // unoccupied cells carry -1
    for (std::size_t i = 0; i < got.labels.size(); ++i)
        CHECK((got.labels[i] >= 0) == (g.occ[i] != 0));
}

}  // namespace

TEST_CASE("components match the relaxation oracle") {
    Rng rng(401);
    for (int t = 0; t < 40; ++t) {
        Index<2> dims{{3 + rng.below(18), 3 + rng.below(18)}};
        double p = (t % 3 == 0) ? 0.2 : (t % 3 == 1) ? 0.45 : 0.7;
        GridSet<2> g = testutil::random_grid<2>(rng, dims, p);
        partition_matches_oracle<2>(g, Adjacency::Face);
        partition_matches_oracle<2>(g, Adjacency::Full);
    }
    for (int t = 0; t < 12; ++t) {
        Index<3> dims{{3 + rng.below(6), 3 + rng.below(6), 3 + rng.below(6)}};
        GridSet<3> g = testutil::random_grid<3>(rng, dims, 0.35);
        partition_matches_oracle<3>(g, Adjacency::Face);
        partition_matches_oracle<3>(g, Adjacency::Full);
    }
}

TEST_CASE("checkerboard separates under face adjacency only") {
    GridSpec<2> spec;
    spec.h = 1;
    spec.dims = Index<2>{{8, 8}};
    GridSet<2> g(spec);
    for (std::int64_t lin = 0; lin < spec.cell_count(); ++lin) {
        Index<2> idx = spec.unlinear(lin);
        if ((idx[0] + idx[1]) % 2 == 0) g.set(idx, true);
    }
    CHECK(connected_components(g, Adjacency::Face).count == 32);
    CHECK(connected_components(g, Adjacency::Full).count == 1);
}

TEST_CASE("labels are deterministic and ordered by discovery") {
    Rng rng(409);
    GridSet<2> g = testutil::random_grid<2>(rng, Index<2>{{15, 15}}, 0.4);
    Labeling a = connected_components(g, Adjacency::Face);
    Labeling b = connected_components(g, Adjacency::Face);
    CHECK(a.labels == b.labels);
    CHECK(a.count == b.count);
    // the first occupied cell in linear order always gets label 0
    for (std::int64_t lin = 0; lin < g.spec.cell_count(); ++lin)
        if (g.occupied(lin)) {
            CHECK(a.labels[static_cast<std::size_t>(lin)] == 0);
            break;
        }
}

TEST_CASE("mask restricts the labeled set") {
    GridSpec<2> spec;
    spec.h = 1;
    spec.dims = Index<2>{{9, 1}};
    GridSet<2> g(spec);
    for (std::int64_t x = 0; x < 9; ++x) g.set(Index<2>{{x, 0}}, true);
    CHECK(connected_components(g, Adjacency::Face).count == 1);
    // knock out the middle cell via the mask: two components remain
    auto mask = [](std::int64_t lin) { return lin != 4; };
    Labeling cut = connected_components(g, Adjacency::Face, mask);
    CHECK(cut.count == 2);
    CHECK(cut.labels[4] == -1);
    CHECK(cut.labels[0] == 0);
    CHECK(cut.labels[8] == 1);
}

TEST_CASE("empty grid labels nothing") {
    GridSpec<2> spec;
    spec.h = 1;
    spec.dims = Index<2>{{4, 4}};
    GridSet<2> g(spec);
    Labeling l = connected_components(g, Adjacency::Full);
    CHECK(l.count == 0);
    for (std::int32_t v : l.labels) CHECK(v == -1);
}
