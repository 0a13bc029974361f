#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <cstdlib>

#include "doctest.h"
#include "reachkit/distance.hpp"
#include "reachkit/rhull.hpp"
#include "reachkit/shapes.hpp"

using namespace reachkit;

namespace {

GridSet<2> bundled_grid(const std::string& name) {
    BundledShape b = bundled_shape(name);
    return rasterize(b.shape, b.spec);
}

// Unit annulus [1, 1.5] in a window sized by `half` (the bundled one carries
// a margin of 2; smaller halves exercise the window guards).
GridSet<2> annulus_grid(double h, double half) {
    Shape<2> sh;
    sh.kind = Shape<2>::Kind::Shell;
    sh.r0 = 1.0;
    sh.r1 = 1.5;
    return rasterize(sh, make_window<2>(Vec2{{0, 0}}, half, h));
}

bool grids_equal(const GridSet<2>& a, const GridSet<2>& b) {
    if (a.spec.dims != b.spec.dims) return false;
    for (std::int64_t lin = 0; lin < a.spec.cell_count(); ++lin)
        if (a.occupied(lin) != b.occupied(lin)) return false;
    return true;
}

}  // namespace

TEST_CASE("closing the annulus stays within one cell diagonal of it") {
    GridSet<2> A = bundled_grid("annulus");
    const double R = 0.9;
    ClosingResult cl = closing(A, R);
    CHECK_FALSE(cl.escaped);

    DistanceField<2> dfA = distance_transform(A);
    std::int64_t k0 = erosion_threshold_d2(A.spec.h, R);
    bool contains_A = true, below_R = true;
    std::int64_t worst_d2 = 0;
    for (std::int64_t lin = 0; lin < A.spec.cell_count(); ++lin) {
        if (A.occupied(lin) && !cl.grid.occupied(lin)) contains_A = false;
        if (!cl.grid.occupied(lin)) continue;
        std::int64_t d2 = dfA.dist2[static_cast<std::size_t>(lin)];
        if (d2 >= k0) below_R = false;
        worst_d2 = std::max(worst_d2, d2);
    }
    CHECK(contains_A);
    CHECK(below_R);
    // symmetric difference reaches at most one diagonal: d2 <= 2 in index units
    CHECK(worst_d2 <= 2);

    ClosingResult again = closing(cl.grid, R);
    CHECK_FALSE(again.escaped);
    CHECK(grids_equal(again.grid, cl.grid));
}

TEST_CASE("closing validates its input") {
    GridSet<2> tight = annulus_grid(0.1, 1.9);  // margin 0.4
    CHECK_THROWS_AS(closing(tight, 0.9), WindowError);
    CHECK_THROWS_WITH(closing(tight, 0.0), "closing radius must be positive");
    GridSet<2> empty(make_window<2>(Vec2{{0, 0}}, 0.5, 0.1));
    CHECK_THROWS_WITH(closing(empty, 0.5), "closing of an empty set");
}

TEST_CASE("a disc admits its hull") {
    GridSet<2> A = bundled_grid("disc");
    const double R = 0.5;
    CertifyOptions opts;
    opts.pair_budget = 20000;
    opts.seed = 1;
    HullReport<2> rep = admits_rhull(A, R, opts);
    CHECK(rep.admits == HullReport<2>::Admits::Yes);
    CHECK(rep.R == R);
    CHECK(rep.margin == doctest::Approx(1.2).epsilon(1e-9));
    REQUIRE(rep.verdict.has_value());
    CHECK(rep.verdict->certified);
    CHECK(rep.sandwich_ok);
    CHECK_FALSE(rep.escaped);
    REQUIRE(rep.hull.has_value());
    CHECK(grids_equal(*rep.hull, closing(A, R).grid));

    // eroded holds exactly the R-deep complement cells
    DistanceField<2> dfA = distance_transform(A);
    std::int64_t k0 = erosion_threshold_d2(A.spec.h, R);
    CHECK_FALSE(rep.eroded.empty());
    for (std::int64_t lin = 0; lin < A.spec.cell_count(); ++lin) {
        bool deep = dfA.dist2[static_cast<std::size_t>(lin)] >= k0;
        REQUIRE(rep.eroded.occupied(lin) == deep);
    }
}

TEST_CASE("a pair at half the required gap admits no hull") {
    GridSet<2> A = bundled_grid("twopoint_half");
    HullReport<2> rep = admits_rhull(A, 1.0);
    CHECK(rep.admits == HullReport<2>::Admits::No);
    REQUIRE(rep.verdict.has_value());
    CHECK_FALSE(rep.verdict->certified);
    REQUIRE(rep.verdict->witness.has_value());
    const auto& w = *rep.verdict->witness;
    CHECK(w.nearest_gap < 2.0);
    // both witness balls live in the eroded complement
    CHECK(rep.eroded.occupied(A.spec.nearest_index(w.b1)));
    CHECK(rep.eroded.occupied(A.spec.nearest_index(w.b2)));
    CHECK(rep.sandwich_ok);
    CHECK_FALSE(rep.hull.has_value());
}

TEST_CASE("hull admission validates its input") {
    GridSet<2> tight = annulus_grid(0.1, 1.9);
    CHECK_THROWS_AS(admits_rhull(tight, 0.9), WindowError);
    CHECK_THROWS_WITH(admits_rhull(tight, -1.0), "hull radius must be positive");
    GridSet<2> empty(make_window<2>(Vec2{{0, 0}}, 0.5, 0.1));
    CHECK_THROWS_WITH(admits_rhull(empty, 0.5), "hull admission for an empty set");
}

TEST_CASE("witness arcs route around one obstacle but not between two") {
    GridSet<2> A = bundled_grid("twopoint_half");  // cells at (-0.25, 0), (0.25, 0)
    const double R = 1.0;
    const double h = A.spec.h;
    const double depth_slack = default_grid_slack(h, 2);
    const double slack = default_cert_slack(h, 2);

    // same side of the pinch to far right: connected around the obstacle
    Vec2 a{{0.01, 0.96}}, b{{1.31, 0.0}};
    auto path = witness_arc(A, R, a, b);
    REQUIRE(path.has_value());
    REQUIRE(path->size() >= 2);
    CHECK(path->front() == A.spec.nearest_index(a));
    CHECK(path->back() == A.spec.nearest_index(b));
    DistanceField<2> df = distance_transform(A);
    std::int64_t k_in = detail::ceil_d2(h, R - depth_slack);
    Spindle<2> sp(a, b, R);
    for (std::size_t i = 0; i < path->size(); ++i) {
        const Index<2>& idx = (*path)[i];
        REQUIRE(df.dist2[static_cast<std::size_t>(A.spec.linear(idx))] >= k_in);
        REQUIRE(spindle_contains(sp, A.spec.center(idx), slack));
        if (i == 0) continue;
        const Index<2>& prev = (*path)[i - 1];
        std::int64_t step = 0;
        for (std::size_t k = 0; k < 2; ++k) {
            REQUIRE(std::llabs(idx[k] - prev[k]) <= 1);
            step += std::llabs(idx[k] - prev[k]);
        }
        REQUIRE(step >= 1);
    }

    // across the pinch: the spindle is too slim to clear both balls
    CHECK_FALSE(witness_arc(A, R, Vec2{{0.01, 0.96}}, Vec2{{-0.01, -0.96}}).has_value());
}

TEST_CASE("witness arc validates its input") {
    GridSet<2> A = bundled_grid("twopoint_half");
    Vec2 deep{{0.01, 0.96}};
    GridSet<2> empty(make_window<2>(Vec2{{0, 0}}, 0.5, 0.1));
    CHECK_THROWS_WITH(witness_arc(empty, 1.0, deep, Vec2{{1.31, 0}}),
                      "witness arc in an empty set");
    CHECK_THROWS_WITH(witness_arc(A, 0.0, deep, Vec2{{1.31, 0}}), "R must be positive");
    CHECK_THROWS_WITH(witness_arc(A, 1.0, deep, deep), "arc endpoints coincide");
    CHECK_THROWS_WITH(witness_arc(A, 1.0, Vec2{{-1.0, 0}}, Vec2{{1.0, 0}}),
                      "arc endpoints farther than 2R apart");
    CHECK_THROWS_AS(witness_arc(A, 1.0, Vec2{{2.5, 0.0}}, Vec2{{1.31, 0}}), WindowError);
    CHECK_THROWS_WITH(witness_arc(A, 1.0, Vec2{{0.25, 0}}, Vec2{{1.31, 0}}),
                      "first arc endpoint is not R-deep in the complement of A");
    CHECK_THROWS_WITH(witness_arc(A, 1.0, deep, Vec2{{0.31, 0.1}}),
                      "second arc endpoint is not R-deep in the complement of A");
}

TEST_CASE("the definitional hull agrees with the double erosion") {
    GridSet<2> A = annulus_grid(0.1, 3.5);  // margin 2.0
    const double R = 0.9;
    GridSet<2> direct = hull_as_ball_intersection(A, R);
    CHECK(grids_equal(direct, closing(A, R).grid));

    GridSet<2> tight = annulus_grid(0.1, 1.9);
    CHECK_THROWS_AS(hull_as_ball_intersection(tight, R), WindowError);
    CHECK_THROWS_WITH(hull_as_ball_intersection(tight, 0.0), "hull radius must be positive");
    GridSet<2> empty(make_window<2>(Vec2{{0, 0}}, 0.5, 0.1));
    CHECK_THROWS_WITH(hull_as_ball_intersection(empty, R), "hull of an empty set");
}
