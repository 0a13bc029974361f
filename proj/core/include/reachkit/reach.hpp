#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "reachkit/components.hpp"
#include "reachkit/distance.hpp"
#include "reachkit/errors.hpp"
#include "reachkit/geom.hpp"
#include "reachkit/grid.hpp"
#include "reachkit/parallel.hpp"

namespace reachkit {

// Quantization slack: half the cell diagonal. Point-to-cell tolerances
// (feet gathering, depth tests, boundary bands) live at this scale.
inline double default_grid_slack(double h, std::size_t d) {
    return 0.5 * h * std::sqrt(static_cast<double>(d));
}

// Connectivity slack: spindle sections are inflated by this before asking
// the grid about connectedness, biasing the answer toward "connected" so a
// reported violation is evidence about the underlying set. Needs two terms:
// half a cell for the spindle boundary quantization plus half a diagonal for
// the covering radius of a rasterized set near a curved boundary. With only
// the half-diagonal, solid sets with curved cavities produce false
// violations (the sliver between a chord and the cavity wall starts at the
// sagitta offset, and the nearest occupied centers can sit ~0.78h away).
inline double default_cert_slack(double h, std::size_t d) {
    return 0.5 * h * (1.0 + std::sqrt(static_cast<double>(d)));
}

struct CertifyOptions {
    Adjacency adj = Adjacency::Full;
    std::optional<std::int64_t> pair_budget;  // subsample pairs when exceeded
    std::optional<double> slack;              // default: default_cert_slack
    std::uint64_t seed = 0;
    bool exclude_frontier = false;  // drop pairs whose endpoint cells sit
                                    // within R of the window edge
};

template <std::size_t D>
struct ViolationWitness {
    Vec<D> b1, b2;
    Index<D> i1{}, i2{};
    double nearest_gap = 0;  // min distance between the two separated pieces
    std::vector<std::int64_t> section_cells;
    std::vector<std::int32_t> section_labels;
    std::int32_t n_components = 0;
};

template <std::size_t D>
struct ReachVerdict {
    bool certified = false;
    double R = 0;
    double slack = 0;
    std::optional<ViolationWitness<D>> witness;
    std::int64_t pairs_checked = 0;
    std::int64_t boundary_skipped = 0;
    bool sampled = false;
};

template <std::size_t D>
struct MedialPoint {
    std::int64_t lin = 0;
    Vec<D> x{};
    double delta = 0;
    std::vector<std::int64_t> feet;  // occupied cells at distance <= delta + foot_tol
};

template <std::size_t D>
struct UnpReport {
    double reach_estimate = 0;
    double R_max = 0;
    double foot_tol = 0, sep_tol = 0, min_angle = 0;
    std::vector<MedialPoint<D>> medial_points;  // sorted by (delta, cell index)
};

namespace detail {

// Occupied cells sorted by index tuple (coordinate 0 most significant).
// Every enumeration order in this module derives from this list, which is
// what makes verdicts reproducible.
template <std::size_t D>
struct CellList {
    std::vector<std::int64_t> lin;
    std::vector<Index<D>> idx;
    std::vector<Vec<D>> pos;
    std::size_t size() const { return lin.size(); }
};

template <std::size_t D>
inline CellList<D> build_cell_list(const GridSet<D>& g) {
    CellList<D> out;
    for (std::int64_t l = 0; l < g.spec.cell_count(); ++l)
        if (g.occupied(l)) out.lin.push_back(l);
    std::sort(out.lin.begin(), out.lin.end(), [&](std::int64_t a, std::int64_t b) {
        return g.spec.unlinear(a) < g.spec.unlinear(b);
    });
    out.idx.reserve(out.lin.size());
    out.pos.reserve(out.lin.size());
    for (std::int64_t l : out.lin) {
        out.idx.push_back(g.spec.unlinear(l));
        out.pos.push_back(g.spec.center(g.spec.unlinear(l)));
    }
    return out;
}

// Smallest k with h*sqrt(k) >= x (0 when x <= 0); h*sqrt(k) is evaluated
// with the same expression used to build distance values, so integer
// comparisons against these thresholds reproduce double comparisons exactly.
inline std::int64_t ceil_d2(double h, double x) {
    if (!(x > 0)) return 0;
    return erosion_threshold_d2(h, x);
}

// Smallest k with h*sqrt(k) > x; "dist <= x" is then "d2 < strict_d2".
inline std::int64_t strict_d2(double h, double x) {
    if (x < 0) return 0;
    double q = x / h;
    auto k = static_cast<std::int64_t>(q * q);
    if (k < 0) k = 0;
    while (k > 0 && h * std::sqrt(static_cast<double>(k - 1)) > x) --k;
    while (!(h * std::sqrt(static_cast<double>(k)) > x)) ++k;
    return k;
}

template <std::size_t D>
inline std::int64_t index_d2(const Index<D>& a, const Index<D>& b) {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < D; ++k) {
        std::int64_t d = a[k] - b[k];
        s += d * d;
    }
    return s;
}

// Reusable scratch for spindle-section breadth-first searches; the stamp
// array replaces per-call clearing.
struct SectionScratch {
    std::vector<std::int64_t> stamp;
    std::int64_t epoch = 0;
    std::vector<std::int64_t> queue;
};

template <std::size_t D>
inline void spindle_index_box(const GridSpec<D>& spec, const Spindle<D>& sp, double tol,
                              Index<D>& lo, Index<D>& hi) {
    Vec<D> hw = spindle_bbox_halfwidths(sp, tol);
    for (std::size_t k = 0; k < D; ++k) {
        lo[k] = std::max<std::int64_t>(
            0, static_cast<std::int64_t>(std::floor((sp.mid[k] - hw[k] - spec.origin[k]) / spec.h)));
        hi[k] = std::min<std::int64_t>(
            spec.dims[k] - 1,
            static_cast<std::int64_t>(std::ceil((sp.mid[k] + hw[k] - spec.origin[k]) / spec.h)));
    }
}

// Is the occupied part of the tol-inflated spindle section connected between
// the two tip cells? BFS with early exit on reaching the target.
template <std::size_t D>
inline bool section_connected(const GridSet<D>& g, const Spindle<D>& sp, double tol,
                              std::int64_t from, std::int64_t to, Adjacency adj,
                              SectionScratch& scratch) {
    const GridSpec<D>& spec = g.spec;
    if (scratch.stamp.size() != static_cast<std::size_t>(spec.cell_count()))
        scratch.stamp.assign(static_cast<std::size_t>(spec.cell_count()), 0);
    std::int64_t epoch = ++scratch.epoch;
    const auto& offs = neighbor_offsets<D>(adj);
    auto& queue = scratch.queue;
    queue.clear();
    queue.push_back(from);
    scratch.stamp[static_cast<std::size_t>(from)] = epoch;
    Index<D> blo, bhi;
    spindle_index_box(spec, sp, tol + 1e-9 * spec.h, blo, bhi);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::int64_t cur = queue[head];
        if (cur == to) return true;
        Index<D> idx = spec.unlinear(cur);
        for (const auto& off : offs) {
            Index<D> n = idx;
            bool ok = true;
            for (std::size_t k = 0; k < D; ++k) {
                n[k] += off[k];
                if (n[k] < blo[k] || n[k] > bhi[k]) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            std::int64_t nl = spec.linear(n);
            if (scratch.stamp[static_cast<std::size_t>(nl)] == epoch) continue;
            scratch.stamp[static_cast<std::size_t>(nl)] = epoch;
            if (!g.occupied(nl)) continue;
            if (!spindle_contains(sp, spec.center(n), tol)) continue;
            queue.push_back(nl);
        }
    }
    return false;
}

// All occupied cells of the tol-inflated spindle section, in lex index order.
template <std::size_t D>
inline std::vector<std::int64_t> collect_section(const GridSet<D>& g, const Spindle<D>& sp,
                                                 double tol) {
    const GridSpec<D>& spec = g.spec;
    Index<D> blo, bhi;
    spindle_index_box(spec, sp, tol + 1e-9 * spec.h, blo, bhi);
    std::vector<std::int64_t> cells;
    Index<D> idx = blo;
    while (true) {
        std::int64_t lin = spec.linear(idx);
        if (g.occupied(lin) && spindle_contains(sp, spec.center(idx), tol))
            cells.push_back(lin);
        // lexicographic walk over the box, last coordinate fastest
        std::size_t k = D;
        while (true) {
            if (k-- == 0) return cells;
            if (++idx[k] <= bhi[k]) break;
            idx[k] = blo[k];
        }
    }
}

}  // namespace detail

// Medial scan: for every cell x with 0 < delta(x) < delta_cap (and whose
// full candidate-feet ball fits in the window), gather all occupied cells
// within delta + foot_tol; x is medial when two feet are both far apart
// (> sep_tol) and subtend a wide angle (>= min_angle) at x. The angle
// condition separates genuinely distinct projection sites from the
// tangential smear that one continuous foot leaves on a grid; without it a
// discretized smooth curve shows spurious feet pairs at distance O(sqrt(h))
// all along its length.
template <std::size_t D>
inline std::vector<MedialPoint<D>> medial_scan(const GridSet<D>& g, const DistanceField<D>& df,
                                               const detail::CellList<D>& cells, double delta_cap,
                                               double foot_tol, double sep_tol, double min_angle) {
    const GridSpec<D>& spec = g.spec;
    std::int64_t total = spec.cell_count();
    double cos_min = std::cos(min_angle);
    std::int64_t sep_k = detail::strict_d2(spec.h, sep_tol);  // sep > sep_tol  <=>  d2 >= sep_k
    std::int64_t cap_k = detail::ceil_d2(spec.h, delta_cap);  // delta < cap    <=>  d2 < cap_k

    unsigned workers = thread_count();
    std::int64_t chunk = (total + workers - 1) / workers;
    std::vector<std::vector<MedialPoint<D>>> parts(workers);

    parallel_for(total, [&](std::int64_t lb, std::int64_t le) {
        auto wi = static_cast<std::size_t>(lb / std::max<std::int64_t>(1, chunk));
        if (wi >= parts.size()) wi = parts.size() - 1;
        auto& local = parts[wi];
        std::vector<std::int64_t> feet;
        for (std::int64_t lin = lb; lin < le; ++lin) {
            std::int64_t d2 = df.dist2[static_cast<std::size_t>(lin)];
            if (d2 <= 0 || d2 >= cap_k) continue;
            Index<D> xi = spec.unlinear(lin);
            double delta = df.values[static_cast<std::size_t>(lin)];
            if (is_frontier(spec, xi, delta + foot_tol)) continue;
            std::int64_t lim_k = detail::strict_d2(spec.h, delta + foot_tol);
            feet.clear();
            for (std::size_t q = 0; q < cells.size(); ++q)
                if (detail::index_d2(cells.idx[q], xi) < lim_k)
                    feet.push_back(static_cast<std::int64_t>(q));
            if (feet.size() < 2) continue;
            Vec<D> x = spec.center(xi);
            bool medial = false;
            for (std::size_t a = 0; a + 1 < feet.size() && !medial; ++a) {
                const Index<D>& ia = cells.idx[static_cast<std::size_t>(feet[a])];
                Vec<D> va = cells.pos[static_cast<std::size_t>(feet[a])] - x;
                double na = norm(va);
                for (std::size_t b = a + 1; b < feet.size(); ++b) {
                    const Index<D>& ib = cells.idx[static_cast<std::size_t>(feet[b])];
                    if (detail::index_d2(ia, ib) < sep_k) continue;
                    Vec<D> vb = cells.pos[static_cast<std::size_t>(feet[b])] - x;
                    if (dot(va, vb) <= cos_min * na * norm(vb)) {
                        medial = true;
                        break;
                    }
                }
            }
            if (!medial) continue;
            MedialPoint<D> mp;
            mp.lin = lin;
            mp.x = x;
            mp.delta = delta;
            mp.feet.reserve(feet.size());
            for (std::int64_t f : feet) mp.feet.push_back(cells.lin[static_cast<std::size_t>(f)]);
            local.push_back(std::move(mp));
        }
    });

    std::vector<MedialPoint<D>> out;
    for (auto& p : parts)
        for (auto& mp : p) out.push_back(std::move(mp));
    std::sort(out.begin(), out.end(), [&](const MedialPoint<D>& a, const MedialPoint<D>& b) {
        if (a.delta != b.delta) return a.delta < b.delta;
        return g.spec.unlinear(a.lin) < g.spec.unlinear(b.lin);
    });
    return out;
}

// Diagnostic reach estimate from projection non-uniqueness: the infimum of
// delta over medial points bounds the reach from above. Detects wide-angle
// medial structure only (see medial_scan); the spindle certifier is the
// authority on reach >= R questions.
template <std::size_t D>
inline UnpReport<D> unp_reach_estimate(const GridSet<D>& K, double R_max,
                                       double foot_tol = -1, double sep_tol = -1,
                                       double min_angle = 2.0943951023931953) {
    if (K.empty()) throw DomainError("reach estimate of an empty set");
    if (!(R_max > 0)) throw DomainError("R_max must be positive");
    const double h = K.spec.h;
    if (foot_tol < 0) foot_tol = default_grid_slack(h, D);
    if (sep_tol < 0) sep_tol = 4 * h;
    if (window_margin(K) + 1e-9 * h < R_max + 2 * h)
        throw WindowError("window too small for the requested R_max");

    DistanceField<D> df = distance_transform(K);
    detail::CellList<D> cells = detail::build_cell_list(K);
    UnpReport<D> rep;
    rep.R_max = R_max;
    rep.foot_tol = foot_tol;
    rep.sep_tol = sep_tol;
    rep.min_angle = min_angle;
    rep.medial_points = medial_scan(K, df, cells, R_max, foot_tol, sep_tol, min_angle);
    rep.reach_estimate = rep.medial_points.empty() ? R_max : rep.medial_points.front().delta;
    return rep;
}

namespace detail {

template <std::size_t D>
struct PairCandidate {
    std::size_t a, b;  // positions in the lex-sorted cell list
    double delta;      // medial delta that proposed the pair
};

// Build the violation witness for a disconnected section.
template <std::size_t D>
inline ViolationWitness<D> make_witness(const GridSet<D>& g, const Spindle<D>& sp, double tol,
                                        std::int64_t lin1, std::int64_t lin2, Adjacency adj) {
    const GridSpec<D>& spec = g.spec;
    ViolationWitness<D> w;
    w.b1 = sp.a;
    w.b2 = sp.b;
    w.i1 = spec.unlinear(lin1);
    w.i2 = spec.unlinear(lin2);
    w.section_cells = collect_section(g, sp, tol);

    // label components of the section (discovery order over the lex cell list)
    std::vector<std::int32_t> labels(w.section_cells.size(), -1);
    std::int32_t n = 0;
    const auto& offs = neighbor_offsets<D>(adj);
    std::vector<std::size_t> queue;
    auto find_cell = [&](std::int64_t lin) -> std::ptrdiff_t {
        for (std::size_t i = 0; i < w.section_cells.size(); ++i)
            if (w.section_cells[i] == lin) return static_cast<std::ptrdiff_t>(i);
        return -1;
    };
    for (std::size_t seed = 0; seed < w.section_cells.size(); ++seed) {
        if (labels[seed] >= 0) continue;
        labels[seed] = n;
        queue.clear();
        queue.push_back(seed);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Index<D> idx = spec.unlinear(w.section_cells[queue[head]]);
            for (const auto& off : offs) {
                Index<D> nb = idx;
                for (std::size_t k = 0; k < D; ++k) nb[k] += off[k];
                if (!spec.in_bounds(nb)) continue;
                std::ptrdiff_t pos = find_cell(spec.linear(nb));
                if (pos < 0 || labels[static_cast<std::size_t>(pos)] >= 0) continue;
                labels[static_cast<std::size_t>(pos)] = n;
                queue.push_back(static_cast<std::size_t>(pos));
            }
        }
        ++n;
    }
    w.section_labels = labels;
    w.n_components = n;

    // nearest gap between the components of the two tips
    std::ptrdiff_t p1 = find_cell(lin1), p2 = find_cell(lin2);
    std::int32_t l1 = p1 >= 0 ? labels[static_cast<std::size_t>(p1)] : -1;
    std::int32_t l2 = p2 >= 0 ? labels[static_cast<std::size_t>(p2)] : -1;
    double best = -1;
    for (std::size_t i = 0; i < w.section_cells.size(); ++i) {
        if (labels[i] != l1) continue;
        Vec<D> pi = spec.center(spec.unlinear(w.section_cells[i]));
        for (std::size_t j = 0; j < w.section_cells.size(); ++j) {
            if (labels[j] != l2) continue;
            double d = dist(pi, spec.center(spec.unlinear(w.section_cells[j])));
            if (best < 0 || d < best) best = d;
        }
    }
    w.nearest_gap = best;
    return w;
}

}  // namespace detail

// Certifies reach(K) >= R at grid tolerance, or produces a violating pair.
// A pair (b1, b2) of occupied cells with |b1-b2| < 2R - h*sqrt(d) violates
// when the occupied part of the slack-inflated spindle of (b1, b2, R) does
// not connect b1 to b2. Pairs with |b1-b2| in [2R - h*sqrt(d), 2R) are
// skipped and counted: at that distance the spindle waist is thinner than a
// cell, so grid connectivity there carries no evidence either way. The two
// tolerances are deliberately different: the pair band is a quantization
// effect (half a diagonal per endpoint), while the membership slack must
// also absorb the covering radius of a rasterized curved boundary.
//
// Runs in two deterministic stages: first pairs proposed by the medial scan
// (ordered by medial delta, then cell order), which finds genuine violations
// without touching the quadratic sweep; then the full lex-ordered pair sweep
// (or a seeded subsample of it when pair_budget is exceeded, with the verdict
// flagged "sampled"). A reported violation is the first one in this order.
template <std::size_t D>
inline ReachVerdict<D> certify_reach(const GridSet<D>& K, double R,
                                     const CertifyOptions& opts = {}) {
    if (K.empty()) throw DomainError("reach certification of an empty set");
    if (!(R > 0)) throw DomainError("certification radius must be positive");
    const GridSpec<D>& spec = K.spec;
    const double h = spec.h;
    const double slack = opts.slack ? *opts.slack : default_cert_slack(h, D);

    ReachVerdict<D> verdict;
    verdict.R = R;
    verdict.slack = slack;

    detail::CellList<D> cells = detail::build_cell_list(K);
    std::size_t n = cells.size();

    std::vector<std::uint8_t> frontier(n, 0);
    if (opts.exclude_frontier)
        for (std::size_t i = 0; i < n; ++i)
            frontier[i] = is_frontier(spec, cells.idx[i], R) ? 1 : 0;

    // d2 bands for pair classification (pair band at quantization scale)
    const double pair_slack = default_grid_slack(h, D);
    std::int64_t k_check = detail::ceil_d2(h, 2 * R - 2 * pair_slack);  // checkable: d2 < k_check
    std::int64_t k_2R = detail::ceil_d2(h, 2 * R);                      // boundary:  d2 < k_2R

    detail::SectionScratch scratch;
    auto classify_and_check = [&](std::size_t a, std::size_t b) -> bool {
        // returns true when a violation was found and recorded
        std::int64_t d2 = detail::index_d2(cells.idx[a], cells.idx[b]);
        if (d2 <= 0 || d2 >= k_2R) return false;
        if (d2 >= k_check) {
            ++verdict.boundary_skipped;
            return false;
        }
        Spindle<D> sp(cells.pos[a], cells.pos[b], R);
        ++verdict.pairs_checked;
        if (detail::section_connected(K, sp, slack, cells.lin[a], cells.lin[b], opts.adj,
                                      scratch))
            return false;
        verdict.certified = false;
        verdict.witness = detail::make_witness(K, sp, slack, cells.lin[a], cells.lin[b], opts.adj);
        return true;
    };

    // stage 1: medial-guided candidates. Pairs resolved here are recorded in
    // `seen` so the sweep neither re-checks nor double-counts them.
    std::vector<std::pair<std::size_t, std::size_t>> seen;
    {
        DistanceField<D> df = distance_transform(K);
        double foot_tol = default_grid_slack(h, D);
        auto medial = medial_scan(K, df, cells, R, foot_tol, 4 * h, 2.0943951023931953);
        std::vector<std::int64_t> pos_of(static_cast<std::size_t>(spec.cell_count()), -1);
        for (std::size_t i = 0; i < n; ++i) pos_of[static_cast<std::size_t>(cells.lin[i])] =
            static_cast<std::int64_t>(i);
        for (const auto& mp : medial) {
            if (mp.feet.size() < 2) continue;
            // candidate pair: lex-min foot and the foot farthest from it
            std::size_t f1 = static_cast<std::size_t>(pos_of[static_cast<std::size_t>(mp.feet[0])]);
            for (std::int64_t f : mp.feet) {
                auto p = static_cast<std::size_t>(pos_of[static_cast<std::size_t>(f)]);
                if (p < f1) f1 = p;
            }
            std::size_t f2 = f1;
            std::int64_t best = -1;
            for (std::int64_t f : mp.feet) {
                auto p = static_cast<std::size_t>(pos_of[static_cast<std::size_t>(f)]);
                std::int64_t d2 = detail::index_d2(cells.idx[f1], cells.idx[p]);
                if (d2 > best) {
                    best = d2;
                    f2 = p;
                }
            }
            if (f1 == f2) continue;
            std::size_t a = std::min(f1, f2), b = std::max(f1, f2);
            if (opts.exclude_frontier && (frontier[a] || frontier[b])) continue;
            if (std::find(seen.begin(), seen.end(), std::make_pair(a, b)) != seen.end()) continue;
            seen.emplace_back(a, b);
            if (classify_and_check(a, b)) return verdict;
        }
    }
    std::sort(seen.begin(), seen.end());
    auto resolved = [&](std::size_t a, std::size_t b) {
        return std::binary_search(seen.begin(), seen.end(), std::make_pair(a, b));
    };

    // stage 2: the pair sweep
    auto total_pairs = static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(n) - 1) / 2;
    if (opts.pair_budget && total_pairs > *opts.pair_budget) {
        verdict.sampled = true;
        std::mt19937_64 rng(opts.seed);
        for (std::int64_t t = 0; t < *opts.pair_budget; ++t) {
            auto a = static_cast<std::size_t>(rng() % n);
            auto b = static_cast<std::size_t>(rng() % n);
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            if (opts.exclude_frontier && (frontier[a] || frontier[b])) continue;
            if (resolved(a, b)) continue;
            if (classify_and_check(a, b)) return verdict;
        }
    } else {
        for (std::size_t a = 0; a + 1 < n; ++a) {
            if (opts.exclude_frontier && frontier[a]) continue;
            for (std::size_t b = a + 1; b < n; ++b) {
                if (opts.exclude_frontier && frontier[b]) continue;
                if (resolved(a, b)) continue;
                if (classify_and_check(a, b)) return verdict;
            }
        }
    }
    verdict.certified = true;
    return verdict;
}

struct ReachSearchResult {
    double lo = 0;             // last certified R
    double hi = 0;             // last violated R (or R_hi when never violated)
    double slack = 0;
    bool no_violation = false;
    double bracket_lo = 0;     // lo - slack: certification at lo only proves
    double bracket_hi = 0;     // reach >= lo - slack at grid tolerance
    double estimate = 0;       // midpoint of [bracket_lo, bracket_hi]
    double width = 0;
    std::int64_t iters = 0;
};

// Bisection on R between a certified low end and a violated high end.
template <std::size_t D>
inline ReachSearchResult reach_search(const GridSet<D>& K, double R_lo, double R_hi,
                                      std::int64_t iters, const CertifyOptions& opts = {}) {
    if (!(R_lo > 0) || !(R_lo < R_hi)) throw DomainError("invalid search bracket");
    if (iters < 1) throw DomainError("iters must be >= 1");
    ReachSearchResult res;
    res.iters = iters;

    ReachVerdict<D> top = certify_reach(K, R_hi, opts);
    res.slack = top.slack;
    if (top.certified) {
        res.no_violation = true;
        res.lo = R_hi;
        res.hi = R_hi;
    } else {
        ReachVerdict<D> bottom = certify_reach(K, R_lo, opts);
        if (!bottom.certified)
            throw DomainError("invalid search bracket: violated at R_lo");
        double lo = R_lo, hi = R_hi;
        for (std::int64_t it = 0; it < iters; ++it) {
            double mid = 0.5 * (lo + hi);
            if (certify_reach(K, mid, opts).certified)
                lo = mid;
            else
                hi = mid;
        }
        res.lo = lo;
        res.hi = hi;
    }
    res.bracket_lo = res.lo - res.slack;
    res.bracket_hi = res.hi;
    res.estimate = 0.5 * (res.bracket_lo + res.bracket_hi);
    res.width = res.bracket_hi - res.bracket_lo;
    return res;
}

// Restrict K to a closed ball and certify the restriction: when reach(K) >= R
// and r <= R, the restriction keeps reach >= R, so "violated" here indicts
// either hypothesis.
template <std::size_t D>
inline ReachVerdict<D> check_ball_intersection(const GridSet<D>& K, const Vec<D>& center,
                                               double r, double R,
                                               const CertifyOptions& opts = {}) {
    if (!(r > 0) || !(r <= R)) throw DomainError("ball radius must satisfy 0 < r <= R");
    GridSet<D> cut(K.spec);
    double eps = 1e-9 * K.spec.h;
    for (std::int64_t lin = 0; lin < K.spec.cell_count(); ++lin)
        if (K.occupied(lin) &&
            dist(K.spec.center(K.spec.unlinear(lin)), center) <= r + eps)
            cut.occ[static_cast<std::size_t>(lin)] = 1;
    if (cut.empty()) throw DomainError("ball does not meet K");
    return certify_reach(cut, R, opts);
}

// Restrict K to the spindle of (a, b, R) and certify the restriction. At
// |a-b| = 2R the spindle degenerates to the ball around the midpoint.
template <std::size_t D>
inline ReachVerdict<D> check_spindle_intersection(const GridSet<D>& K, const Vec<D>& a,
                                                  const Vec<D>& b, double R,
                                                  const CertifyOptions& opts = {}) {
    if (!(R > 0)) throw DomainError("R must be positive");
    double len = dist(a, b);
    double h = K.spec.h;
    if (!(len > 1e-9 * h)) throw DomainError("spindle endpoints coincide");
    if (len > 2 * R * (1 + 1e-12)) throw DomainError("spindle endpoints farther than 2R");
    double near_tol = default_grid_slack(h, D) + 1e-9 * h;
    bool a_in = false, b_in = false;
    for (std::int64_t lin = 0; lin < K.spec.cell_count() && !(a_in && b_in); ++lin) {
        if (!K.occupied(lin)) continue;
        Vec<D> c = K.spec.center(K.spec.unlinear(lin));
        a_in = a_in || dist(c, a) <= near_tol;
        b_in = b_in || dist(c, b) <= near_tol;
    }
    if (!a_in) throw DomainError("first spindle endpoint is not in K");
    if (!b_in) throw DomainError("second spindle endpoint is not in K");

    GridSet<D> cut(K.spec);
    double eps = 1e-9 * h;
    if (len >= 2 * R * (1 - 1e-12)) {
        Vec<D> mid = 0.5 * (a + b);
        for (std::int64_t lin = 0; lin < K.spec.cell_count(); ++lin)
            if (K.occupied(lin) &&
                dist(K.spec.center(K.spec.unlinear(lin)), mid) <= R + eps)
                cut.occ[static_cast<std::size_t>(lin)] = 1;
    } else {
        Spindle<D> sp(a, b, R);
        for (std::int64_t lin = 0; lin < K.spec.cell_count(); ++lin)
            if (K.occupied(lin) && spindle_contains(sp, K.spec.center(K.spec.unlinear(lin)), eps))
                cut.occ[static_cast<std::size_t>(lin)] = 1;
    }
    if (cut.empty()) throw DomainError("spindle does not meet K");
    return certify_reach(cut, R, opts);
}

// For an open ball B of radius R not meeting K: the trace of K on the sphere
// boundary must contain, between any two of its cells closer than 2R - 2*slack,
// the minor great-circle arc joining their radial projections. Samples each
// arc and accepts a sample when an occupied cell center lies within h*sqrt(D).
template <std::size_t D>
inline bool check_sphere_convexity(const GridSet<D>& K, const Ball<D>& ball, double R,
                                   std::int64_t arc_samples = 64,
                                   std::optional<std::int64_t> pair_budget = std::nullopt,
                                   std::uint64_t seed = 0) {
    if (!ball.open) throw DomainError("sphere convexity check needs an open ball");
    if (std::abs(ball.radius - R) > 1e-9)
        throw DomainError("ball radius must equal R");
    if (arc_samples < 2) throw DomainError("arc_samples must be >= 2");
    const GridSpec<D>& spec = K.spec;
    const double h = spec.h;
    const double slack = default_grid_slack(h, D);
    const double band = h * std::sqrt(static_cast<double>(D));

    detail::CellList<D> cells = detail::build_cell_list(K);
    std::vector<std::size_t> T;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        double d = dist(cells.pos[i], ball.center);
        if (d < R - slack - 1e-12) throw DomainError("ball meets K");
        if (std::abs(d - R) <= band + 1e-12) T.push_back(i);
    }
    if (T.size() < 2) return true;

    // occupied within `band` of a world point, probing the index neighborhood
    auto near_occupied = [&](const Vec<D>& p) {
        Index<D> c = spec.nearest_index(p);
        Index<D> lo, hi;
        for (std::size_t k = 0; k < D; ++k) {
            lo[k] = std::max<std::int64_t>(0, c[k] - 2);
            hi[k] = std::min<std::int64_t>(spec.dims[k] - 1, c[k] + 2);
            if (lo[k] > hi[k]) return false;
        }
        Index<D> idx = lo;
        while (true) {
            if (K.occupied(idx) && dist(spec.center(idx), p) <= band + 1e-9) return true;
            std::size_t k = D;
            while (k-- > 0) {
                if (++idx[k] <= hi[k]) break;
                idx[k] = lo[k];
                if (k == 0) return false;
            }
        }
    };

    auto arc_ok = [&](std::size_t i, std::size_t j) {
        Vec<D> u1 = cells.pos[i] - ball.center;
        Vec<D> u2 = cells.pos[j] - ball.center;
        u1 = u1 / norm(u1);
        u2 = u2 / norm(u2);
        double c = std::clamp(dot(u1, u2), -1.0, 1.0);
        double th = std::acos(c);
        if (th < 1e-12) return true;
        double s = std::sin(th);
        for (std::int64_t t = 0; t < arc_samples; ++t) {
            double tt = static_cast<double>(t) / static_cast<double>(arc_samples - 1);
            Vec<D> dir = (std::sin((1 - tt) * th) / s) * u1 + (std::sin(tt * th) / s) * u2;
            Vec<D> sample = ball.center + R * dir;
            if (!near_occupied(sample)) return false;
        }
        return true;
    };

    std::int64_t k_check = detail::ceil_d2(h, 2 * R - 2 * slack);
    auto total = static_cast<std::int64_t>(T.size()) * (static_cast<std::int64_t>(T.size()) - 1) / 2;
    if (pair_budget && total > *pair_budget) {
        std::mt19937_64 rng(seed);
        for (std::int64_t t = 0; t < *pair_budget; ++t) {
            auto a = static_cast<std::size_t>(rng() % T.size());
            auto b = static_cast<std::size_t>(rng() % T.size());
            if (a == b) continue;
            std::int64_t d2 = detail::index_d2(cells.idx[T[a]], cells.idx[T[b]]);
            if (d2 <= 0 || d2 >= k_check) continue;
            if (!arc_ok(T[a], T[b])) return false;
        }
    } else {
        for (std::size_t a = 0; a + 1 < T.size(); ++a)
            for (std::size_t b = a + 1; b < T.size(); ++b) {
                std::int64_t d2 = detail::index_d2(cells.idx[T[a]], cells.idx[T[b]]);
                if (d2 <= 0 || d2 >= k_check) continue;
                if (!arc_ok(T[a], T[b])) return false;
            }
    }
    return true;
}

}  // namespace reachkit
