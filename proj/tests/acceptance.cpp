// Acceptance gate: eleven scripted criteria, one PASS/FAIL line each.
// Exit code is the number of failed criteria, so a zero exit is the gate.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "reachkit/distance.hpp"
#include "reachkit/geom.hpp"
#include "reachkit/reach.hpp"
#include "reachkit/rhull.hpp"
#include "reachkit/shapes.hpp"
#include "test_util.hpp"

using namespace reachkit;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// ---- C1: exact distance transform vs brute force, bit for bit ------------

template <std::size_t D>
bool edt_matches(testutil::Rng& rng, std::int64_t max_dim, double occupancy) {
    Index<D> dims;
    for (std::size_t k = 0; k < D; ++k) dims[k] = 4 + rng.below(max_dim - 3);
    GridSet<D> g = testutil::random_grid<D>(rng, dims, occupancy, 0.07);
    DistanceField<D> fast = distance_transform(g);
    DistanceField<D> slow = oracles::brute_distance_field(g);
    return fast.dist2 == slow.dist2 && fast.values == slow.values;
}

bool c1(std::string& note) {
    auto t0 = Clock::now();
    testutil::Rng rng(101);
    const double occs[4] = {0.005, 0.05, 0.3, 0.7};
    bool ok = true;
    for (int i = 0; i < 25; ++i) ok = edt_matches<2>(rng, 64, occs[i % 4]) && ok;
    for (int i = 0; i < 25; ++i) ok = edt_matches<3>(rng, 24, occs[i % 4]) && ok;
    double secs = seconds_since(t0);
    note = fmt(" [%.2fs, limit 5s]", secs);
    return ok && secs < 5.0;
}

// ---- C2: spindle membership vs a sampled center oracle -------------------

template <std::size_t D>
void spindle_vs_oracle(testutil::Rng& rng, std::int64_t& checked, std::int64_t& wrong) {
    Vec<D> a = rng.box<D>(1.0);
    double R = rng.uniform(0.3, 1.5);
    double len = R * rng.uniform(0.1, 1.9);
    Vec<D> b = a + len * rng.unit<D>();
    Spindle<D> sp(a, b, R);
    Vec<D> hw = spindle_bbox_halfwidths(sp, 0.1 * R);
    Vec<D> p = sp.mid;
    for (std::size_t k = 0; k < D; ++k) p[k] += rng.uniform(-hw[k], hw[k]);

    double far = oracles::spindle_center_max(a, b, R, p, 10000);
    if (std::abs(far - R) <= 1e-6) return;  // inside the agreement band
    ++checked;
    if ((far <= R) != spindle_contains(sp, p, 0.0)) ++wrong;
}

bool c2(std::string& note) {
    testutil::Rng rng(202);
    std::int64_t checked = 0, wrong = 0;
    for (int t = 0; t < 1000; ++t) {
        if (t % 2 == 0)
            spindle_vs_oracle<2>(rng, checked, wrong);
        else
            spindle_vs_oracle<3>(rng, checked, wrong);
    }
    note = fmt(" [%.0f conclusive, %.0f disagreements]", double(checked), double(wrong));
    return wrong == 0 && checked > 500;
}

// ---- C3: nested spindles stay nested, zero tolerance ---------------------

template <std::size_t D>
bool nested_trial(testutil::Rng& rng) {
    Vec<D> a = rng.box<D>(1.0);
    double R = rng.uniform(0.4, 1.5);
    double len = R * rng.uniform(0.2, 1.8);
    Vec<D> b = a + len * rng.unit<D>();
    Spindle<D> outer(a, b, R);
    Vec<D> hw = spindle_bbox_halfwidths(outer, 0.0);

    auto interior = [&](const Vec<D>& fallback) {
        for (int tries = 0; tries < 2000; ++tries) {
            Vec<D> p = outer.mid;
            for (std::size_t k = 0; k < D; ++k) p[k] += rng.uniform(-hw[k], hw[k]);
            if (spindle_contains(outer, p, -1e-6 * R)) return p;
        }
        return fallback;  // on-axis points sit inside with margin s^2 >> 1e-6 R^2
    };
    Vec<D> c = interior(outer.mid - (0.05 * outer.s) * outer.axis);
    Vec<D> d;
    do {
        d = interior(outer.mid + (0.05 * outer.s) * outer.axis);
    } while (!(dist(c, d) > 1e-3 * R));
    return spindle_subset_sampled(outer, c, d, 64, 0.0);
}

bool c3(std::string& note) {
    testutil::Rng rng(303);
    std::int64_t bad = 0;
    for (int t = 0; t < 1000; ++t) {
        bool ok = (t % 2 == 0) ? nested_trial<2>(rng) : nested_trial<3>(rng);
        if (!ok) ++bad;
    }
    note = fmt(" [%.0f failures of 1000]", double(bad));
    return bad == 0;
}

// ---- C4: circle shell estimate and certification band --------------------

bool c4(std::string& note) {
    auto t0 = Clock::now();
    BundledShape shape = bundled_shape("circle");
    GridSet<2> K = rasterize(shape.shape, shape.spec);
    const double h = K.spec.h;

    UnpReport<2> unp = unp_reach_estimate(K, 1.2);
    bool est_ok = unp.reach_estimate >= 1.0 - 3 * h && unp.reach_estimate <= 1.0 + 3 * h;

    CertifyOptions opts;
    opts.pair_budget = 20000;
    opts.seed = 1;
    ReachVerdict<2> low = certify_reach(K, 0.9, opts);
    ReachVerdict<2> high = certify_reach(K, 1.1, opts);

    double secs = seconds_since(t0);
    note = fmt(" [estimate %.4f, %.1fs, limit 60s]", unp.reach_estimate, secs);
    return est_ok && low.certified && !high.certified && secs < 60.0;
}

// ---- C5: point pair estimate inside the search bracket -------------------

bool c5(std::string& note) {
    const double h = 0.02;
    GridSpec<2> spec = make_window<2>(Vec2{{-0.5, 0}}, Vec2{{1.3, 1.3}}, Vec2{{2.3, 1.3}}, h);
    GridSet<2> K(spec);
    K.set(spec.nearest_index(Vec2{{-0.5, 0}}));
    K.set(spec.nearest_index(Vec2{{0.5, 0}}));

    UnpReport<2> unp = unp_reach_estimate(K, 1.2);
    bool est_ok = unp.reach_estimate >= 0.5 - 2 * h && unp.reach_estimate <= 0.5 + 2 * h;

    ReachSearchResult res = reach_search(K, 0.1, 1.0, 6);
    bool bracket_ok = !res.no_violation && res.bracket_lo <= unp.reach_estimate &&
                      unp.reach_estimate <= res.bracket_hi;
    note = fmt(" [estimate %.4f, bracket %.4f..", unp.reach_estimate, res.bracket_lo) +
           fmt("%.4f]", res.bracket_hi);
    return est_ok && bracket_ok;
}

// ---- C6: random ball restrictions of the annulus all certify -------------

bool c6(std::string& note) {
    BundledShape shape = bundled_shape("annulus");
    GridSet<2> K = rasterize(shape.shape, shape.spec);
    std::vector<std::int64_t> occ;
    for (std::int64_t lin = 0; lin < K.spec.cell_count(); ++lin)
        if (K.occupied(lin)) occ.push_back(lin);

    testutil::Rng rng(2026);
    CertifyOptions opts;
    opts.pair_budget = 20000;
    opts.seed = 1;
    const double R = 0.9;
    int good = 0;
    for (int t = 0; t < 20; ++t) {
        Vec2 center = K.spec.center(K.spec.unlinear(occ[static_cast<std::size_t>(
            rng.below(static_cast<std::int64_t>(occ.size())))]));
        double r = R * (0.3 + 0.7 * rng.u01());
        if (check_ball_intersection(K, center, r, R, opts).certified) ++good;
    }
    note = fmt(" [%.0f of 20 certified]", double(good));
    return good == 20;
}

// ---- C7: projection inequality sampled over the certified annulus --------

bool c7(std::string& note) {
    BundledShape shape = bundled_shape("annulus");
    GridSet<2> K = rasterize(shape.shape, shape.spec);
    const double h = K.spec.h;
    const double R = 0.9;

    CertifyOptions opts;
    opts.pair_budget = 20000;
    opts.seed = 1;
    bool certified = certify_reach(K, R, opts).certified;

    DistanceField<2> df = distance_transform(K);
    std::vector<std::int64_t> occ, near;
    std::int64_t cap = erosion_threshold_d2(h, R);  // value <= R  <=>  d2 <= cap
    for (std::int64_t lin = 0; lin < K.spec.cell_count(); ++lin) {
        if (K.occupied(lin)) occ.push_back(lin);
        std::int64_t d2 = df.dist2[static_cast<std::size_t>(lin)];
        if (d2 > 0 && d2 <= cap) near.push_back(lin);
    }

    testutil::Rng rng(707);
    double worst = 1e300;
    for (int t = 0; t < 1000; ++t) {
        std::int64_t xl = near[static_cast<std::size_t>(
            rng.below(static_cast<std::int64_t>(near.size())))];
        std::int64_t bl = occ[static_cast<std::size_t>(
            rng.below(static_cast<std::int64_t>(occ.size())))];
        Vec2 x = K.spec.center(K.spec.unlinear(xl));
        Vec2 foot = K.spec.center(K.spec.unlinear(df.src[static_cast<std::size_t>(xl)]));
        Vec2 b = K.spec.center(K.spec.unlinear(bl));
        worst = std::min(worst, projection_inequality_slack(x, foot, b, R));
    }
    note = fmt(" [worst slack %.4f, floor %.4f]", worst, -5 * h);
    return certified && worst >= -5 * h;
}

// ---- C8: closing of the annulus is sandwiched and tight ------------------

bool c8(std::string& note) {
    BundledShape shape = bundled_shape("annulus");
    GridSet<2> A = rasterize(shape.shape, shape.spec);
    const double R = 0.9;
    ClosingResult cl = closing(A, R);
    DistanceField<2> df = distance_transform(A);
    std::int64_t k0 = erosion_threshold_d2(A.spec.h, R);

    bool contains = true, inside_band = true;
    std::int64_t worst_d2 = 0;
    for (std::int64_t lin = 0; lin < A.spec.cell_count(); ++lin) {
        if (A.occupied(lin) && !cl.grid.occupied(lin)) contains = false;
        if (!cl.grid.occupied(lin)) continue;
        std::int64_t d2 = df.dist2[static_cast<std::size_t>(lin)];
        if (d2 >= k0) inside_band = false;
        worst_d2 = std::max(worst_d2, d2);
    }
    note = fmt(" [hausdorff d2 %.0f, limit 2]", double(worst_d2));
    return contains && inside_band && worst_d2 <= 2 && !cl.escaped;
}

// ---- C9: half-gap pair rejected, covers certify and intersect back -------

bool c9(std::string& note) {
    BundledShape shape = bundled_shape("twopoint_half");
    GridSet<2> A = rasterize(shape.shape, shape.spec);
    const double h = A.spec.h;
    const double R = 1.0;

    HullReport<2> rep = admits_rhull(A, R);
    bool rejected = rep.admits == HullReport<2>::Admits::No && rep.verdict.has_value() &&
                    !rep.verdict->certified && rep.verdict->witness.has_value();
    bool witness_deep = false;
    if (rejected) {
        const auto& w = *rep.verdict->witness;
        witness_deep = rep.eroded.occupied(A.spec.nearest_index(w.b1)) &&
                       rep.eroded.occupied(A.spec.nearest_index(w.b2));
    }

    // cover 1: the straight segment between the pair
    Shape<2> seg;
    seg.kind = Shape<2>::Kind::Segment;
    seg.a = Vec2{{-0.25, 0}};
    seg.b = Vec2{{0.25, 0}};
    seg.thicken = 0;
    GridSet<2> cover1 = rasterize(seg, A.spec);

    // cover 2: the minor radius-R arc through the pair, thickened outward
    Shape<2> band;
    band.kind = Shape<2>::Kind::Shell;
    band.center = Vec2{{0, -std::sqrt(R * R - 0.25 * 0.25)}};
    band.r0 = R;
    band.r1 = R + 2 * h;
    Shape<2> upper;
    upper.kind = Shape<2>::Kind::Halfspace;
    upper.normal = Vec2{{0, 1}};
    upper.offset = 0;
    Shape<2> arc;
    arc.kind = Shape<2>::Kind::Intersect;
    arc.children = {band, upper};
    GridSet<2> cover2 = rasterize(arc, A.spec);

    bool supersets = true, intersect_back = true;
    for (std::int64_t lin = 0; lin < A.spec.cell_count(); ++lin) {
        if (A.occupied(lin) && !(cover1.occupied(lin) && cover2.occupied(lin)))
            supersets = false;
        bool both = cover1.occupied(lin) && cover2.occupied(lin);
        if (both != A.occupied(lin)) intersect_back = false;
    }
    bool covers_certify =
        certify_reach(cover1, R).certified && certify_reach(cover2, R).certified;

    note = fmt(" [covers %.0f and %.0f cells]", double(cover1.count()), double(cover2.count()));
    return rejected && witness_deep && supersets && covers_certify && intersect_back;
}

// ---- C10: definitional hull equals double erosion on the corpus ----------

bool c10(std::string& note) {
    int shapes = 0;
    for (const std::string& name : bundled_names()) {
        BundledShape b = bundled_shape(name);
        GridSet<2> A = rasterize(b.shape, b.spec);
        GridSet<2> direct = hull_as_ball_intersection(A, b.suggested_R);
        GridSet<2> doubled = closing(A, b.suggested_R).grid;
        for (std::int64_t lin = 0; lin < A.spec.cell_count(); ++lin)
            if (direct.occupied(lin) != doubled.occupied(lin)) {
                note = " [mismatch on " + name + "]";
                return false;
            }
        ++shapes;
    }
    note = fmt(" [%.0f corpus shapes]", double(shapes));
    return true;
}

// ---- C11: sphere trace convexity, positive and negative ------------------

bool c11(std::string& note) {
    BundledShape shape = bundled_shape("annulus");
    GridSet<2> K = rasterize(shape.shape, shape.spec);
    Ball<2> B;
    B.center = Vec2{{0, 0}};
    B.radius = 1.0;
    B.open = true;
    bool holds = check_sphere_convexity(K, B, 1.0);

    // two antipodal arcs of the unit circle
    Shape<2> band;
    band.kind = Shape<2>::Kind::Shell;
    band.r0 = 1.0;
    band.r1 = 1.1;
    Shape<2> top;
    top.kind = Shape<2>::Kind::Halfspace;
    top.normal = Vec2{{0, 1}};
    top.offset = 0.766;
    Shape<2> bot;
    bot.kind = Shape<2>::Kind::Halfspace;
    bot.normal = Vec2{{0, -1}};
    bot.offset = 0.766;
    Shape<2> c1, c2, caps;
    c1.kind = Shape<2>::Kind::Intersect;
    c1.children = {band, top};
    c2.kind = Shape<2>::Kind::Intersect;
    c2.children = {band, bot};
    caps.kind = Shape<2>::Kind::Union;
    caps.children = {c1, c2};
    GridSet<2> K2 = rasterize(caps, make_window<2>(Vec2{{0, 0}}, 1.4, 0.05));
    bool fails = !check_sphere_convexity(K2, B, 1.0);

    note = std::string(" [annulus ") + (holds ? "holds" : "broken") + ", caps " +
           (fails ? "rejected" : "accepted") + "]";
    return holds && fails;
}

struct Criterion {
    int id;
    const char* what;
    bool (*run)(std::string&);
};

}  // namespace

int main() {
    const Criterion table[] = {
        {1, "distance transform matches brute force bit for bit on 50 random grids", c1},
        {2, "spindle membership agrees with a 10000-sample center oracle on 1000 queries", c2},
        {3, "1000 nested spindle trials hold with zero tolerance", c3},
        {4, "circle shell: estimate within 3h of 1, certified at 0.9, violated at 1.1", c4},
        {5, "unit pair: estimate within 2h of 0.5 and inside the 6-step search bracket", c5},
        {6, "annulus: 20 seeded ball restrictions all certify at 0.9", c6},
        {7, "certified annulus: projection inequality slack above -5h on 1000 samples", c7},
        {8, "annulus closing sandwiched by the set and its 0.9-neighborhood, one diagonal tight", c8},
        {9, "half-gap pair: hull refused with deep witness, covers certify and intersect back", c9},
        {10, "definitional hull equals double erosion across the bundled corpus", c10},
        {11, "sphere trace convexity holds on the annulus and fails on antipodal caps", c11},
    };

    int failed = 0;
    for (const Criterion& c : table) {
        std::string note;
        bool pass = false;
        try {
            pass = c.run(note);
        } catch (const std::exception& e) {
            note = std::string(" [exception: ") + e.what() + "]";
        }
        if (!pass) ++failed;
        std::printf("C%d %s: %s%s\n", c.id, pass ? "PASS" : "FAIL", c.what, note.c_str());
        std::fflush(stdout);
    }
    return failed;
}
