#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "reachkit/distance.hpp"
#include "reachkit/errors.hpp"
#include "reachkit/grid.hpp"
#include "reachkit/reach.hpp"

namespace reachkit {

template <std::size_t D>
struct ClosingResult {
    GridSet<D> grid;
    bool escaped = false;  // first erosion emptied the window; grid is the
                           // whole window and the closing is not meaningful
};

// Morphological closing by R: erode the complement-distance field twice.
// Window margin >= 2R + 2h guarantees both passes are exact for every cell
// that can end up in the result: a cell z with delta_A(z) < R has its whole
// R-ball inside the window, and cells with delta_A(z) >= R never survive.
template <std::size_t D>
inline ClosingResult<D> closing(const GridSet<D>& A, double R) {
    if (A.empty()) throw DomainError("closing of an empty set");
    if (!(R > 0)) throw DomainError("closing radius must be positive");
    const double h = A.spec.h;
    if (window_margin(A) + 1e-9 * h < 2 * R + 2 * h)
        throw WindowError("window too small for erosion radius");

    GridSet<D> e1 = erode(A, R, /*check_margin=*/false);
    ClosingResult<D> out{GridSet<D>(A.spec), false};
    if (e1.empty()) {
        out.escaped = true;
        std::fill(out.grid.occ.begin(), out.grid.occ.end(), std::uint8_t{1});
        return out;
    }
    out.grid = erode(e1, R, /*check_margin=*/false);
    return out;
}

template <std::size_t D>
struct HullReport {
    enum class Admits { Yes, No, Undetermined };
    Admits admits = Admits::Undetermined;
    double R = 0;
    double margin = 0;
    std::optional<ReachVerdict<D>> verdict;  // certification of the eroded set
    bool sandwich_ok = false;                // A inside hull inside {delta_A < R}
    bool escaped = false;
    GridSet<D> eroded;
    std::optional<GridSet<D>> hull;  // present when admits == Yes
    std::optional<std::vector<Index<D>>> witness_arc;
};

// Does A admit a hull of radius R? Erode by R, then certify reach >= R of
// the eroded set; when certified, the closing is the hull. Frontier cells of
// the eroded set are excluded as pair endpoints: their spindles are the only
// ones that could leave the window, so every reported violation is witnessed
// entirely by in-window cells.
template <std::size_t D>
inline HullReport<D> admits_rhull(const GridSet<D>& A, double R, CertifyOptions opts = {}) {
    if (A.empty()) throw DomainError("hull admission for an empty set");
    if (!(R > 0)) throw DomainError("hull radius must be positive");
    const double h = A.spec.h;
    HullReport<D> rep;
    rep.R = R;
    rep.margin = window_margin(A);
    rep.eroded = GridSet<D>(A.spec);
    if (rep.margin + 1e-9 * h < 2 * R + 2 * h)
        throw WindowError("window too small for erosion radius");

    rep.eroded = erode(A, R, /*check_margin=*/false);
    if (rep.eroded.empty()) {
        rep.admits = HullReport<D>::Admits::Undetermined;
        rep.escaped = true;
        return rep;
    }

    opts.exclude_frontier = true;
    rep.verdict = certify_reach(rep.eroded, R, opts);
    rep.admits = rep.verdict->certified ? HullReport<D>::Admits::Yes : HullReport<D>::Admits::No;

    // The closing satisfies the sandwich whether or not the hull exists; it
    // is only *the* hull in the certified case.
    GridSet<D> close = erode(rep.eroded, R, /*check_margin=*/false);
    bool ok = true;
    DistanceField<D> dfA = distance_transform(A);
    std::int64_t k0 = erosion_threshold_d2(h, R);
    for (std::int64_t lin = 0; lin < A.spec.cell_count() && ok; ++lin) {
        bool in_close = close.occupied(lin) != 0;
        if (A.occupied(lin) && !in_close) ok = false;                       // A inside hull
        if (in_close && dfA.dist2[static_cast<std::size_t>(lin)] >= k0) ok = false;  // hull inside {delta_A < R}
    }
    rep.sandwich_ok = ok;
    if (rep.admits == HullReport<D>::Admits::Yes) rep.hull = std::move(close);
    return rep;
}

// Connecting arc inside the eroded set and the spindle of (a, b, R): BFS
// shortest path (fixed neighbor order, so ties resolve deterministically)
// over cells with delta_A >= R - slack and spindle membership at +slack.
// Returns the cell path from a's cell to b's cell, or nothing when the two
// sides are separated, which is exactly a reach violation at R.
template <std::size_t D>
inline std::optional<std::vector<Index<D>>> witness_arc(const GridSet<D>& A, double R,
                                                        const Vec<D>& a, const Vec<D>& b,
                                                        Adjacency adj = Adjacency::Full) {
    if (A.empty()) throw DomainError("witness arc in an empty set");
    if (!(R > 0)) throw DomainError("R must be positive");
    const GridSpec<D>& spec = A.spec;
    const double h = spec.h;
    // depth relaxation at quantization scale, connectivity at the certify scale
    const double depth_slack = default_grid_slack(h, D);
    const double slack = default_cert_slack(h, D);
    double len = dist(a, b);
    if (!(len > 0)) throw DomainError("arc endpoints coincide");
    if (!(len < 2 * R)) throw DomainError("arc endpoints farther than 2R apart");

    Index<D> ia = spec.nearest_index(a), ib = spec.nearest_index(b);
    if (!spec.in_bounds(ia) || !spec.in_bounds(ib))
        throw WindowError("arc endpoint outside the window");

    DistanceField<D> df = distance_transform(A);
    // delta >= R - depth_slack as an exact integer threshold
    std::int64_t k_in = detail::ceil_d2(h, R - depth_slack);
    auto deep = [&](std::int64_t lin) { return df.dist2[static_cast<std::size_t>(lin)] >= k_in; };
    if (!deep(spec.linear(ia)))
        throw DomainError("first arc endpoint is not R-deep in the complement of A");
    if (!deep(spec.linear(ib)))
        throw DomainError("second arc endpoint is not R-deep in the complement of A");

    Spindle<D> sp(a, b, R);
    auto inside = [&](const Index<D>& idx) {
        return deep(spec.linear(idx)) && spindle_contains(sp, spec.center(idx), slack);
    };
    if (!inside(ia) || !inside(ib))
        throw DomainError("arc endpoint cell is outside the spindle");

    std::int64_t from = spec.linear(ia), to = spec.linear(ib);
    std::vector<std::int64_t> parent(static_cast<std::size_t>(spec.cell_count()), -2);
    std::vector<std::int64_t> queue{from};
    parent[static_cast<std::size_t>(from)] = -1;
    const auto& offs = neighbor_offsets<D>(adj);
    bool found = (from == to);
    for (std::size_t head = 0; head < queue.size() && !found; ++head) {
        Index<D> idx = spec.unlinear(queue[head]);
        for (const auto& off : offs) {
            Index<D> n = idx;
            bool ok = true;
            for (std::size_t k = 0; k < D; ++k) {
                n[k] += off[k];
                if (n[k] < 0 || n[k] >= spec.dims[k]) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            std::int64_t nl = spec.linear(n);
            if (parent[static_cast<std::size_t>(nl)] != -2) continue;
            parent[static_cast<std::size_t>(nl)] = queue[head];
            if (!inside(n)) {
                parent[static_cast<std::size_t>(nl)] = -3;  // visited, excluded
                continue;
            }
            if (nl == to) {
                found = true;
                break;
            }
            queue.push_back(nl);
        }
    }
    if (!found) return std::nullopt;
    std::vector<Index<D>> path;
    for (std::int64_t cur = to; cur != -1; cur = parent[static_cast<std::size_t>(cur)])
        path.push_back(spec.unlinear(cur));
    std::reverse(path.begin(), path.end());
    return path;
}

// The closing, computed the definitional way: cells not strictly covered by
// any open R-ball centered in the eroded set. Cellwise identical to
// closing(): both sides resolve "distance < R" with the same integer
// threshold, ties included.
template <std::size_t D>
inline GridSet<D> hull_as_ball_intersection(const GridSet<D>& A, double R) {
    if (A.empty()) throw DomainError("hull of an empty set");
    if (!(R > 0)) throw DomainError("hull radius must be positive");
    const GridSpec<D>& spec = A.spec;
    const double h = spec.h;
    if (window_margin(A) + 1e-9 * h < 2 * R + 2 * h)
        throw WindowError("window too small for erosion radius");

    DistanceField<D> df = distance_transform(A);
    std::int64_t k0 = erosion_threshold_d2(h, R);
    GridSet<D> out(spec);
    std::fill(out.occ.begin(), out.occ.end(), std::uint8_t{1});

    bool any = false;
    // strict interior of the R-ball in integer form: d2 <= k0 - 1
    std::int64_t rad2 = k0 - 1;
    auto radius = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(std::max<std::int64_t>(rad2, 0)))));
    while ((radius + 1) * (radius + 1) <= rad2) ++radius;
    while (radius > 0 && radius * radius > rad2) --radius;

    for (std::int64_t lin = 0; lin < spec.cell_count(); ++lin) {
        if (df.dist2[static_cast<std::size_t>(lin)] < k0) continue;  // not in the eroded set
        any = true;
        Index<D> c = spec.unlinear(lin);
        // stamp the open ball row by row along axis 0
        Index<D> lo{}, hi{};
        for (std::size_t k = 1; k < D; ++k) {
            lo[k] = std::max<std::int64_t>(0, c[k] - radius);
            hi[k] = std::min<std::int64_t>(spec.dims[k] - 1, c[k] + radius);
            if (lo[k] > hi[k]) {
                lo[0] = 1;
                hi[0] = 0;  // empty
            }
        }
        if (D > 1 && lo[0] > hi[0]) continue;
        Index<D> idx = c;
        for (std::size_t k = 1; k < D; ++k) idx[k] = lo[k];
        while (true) {
            std::int64_t rem = 0;
            for (std::size_t k = 1; k < D; ++k) {
                std::int64_t d = idx[k] - c[k];
                rem += d * d;
            }
            std::int64_t row_budget = rad2 - rem;
            if (row_budget >= 0) {
                auto w = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(row_budget))));
                while ((w + 1) * (w + 1) <= row_budget) ++w;
                while (w > 0 && w * w > row_budget) --w;
                std::int64_t x0 = std::max<std::int64_t>(0, c[0] - w);
                std::int64_t x1 = std::min<std::int64_t>(spec.dims[0] - 1, c[0] + w);
                if (x0 <= x1) {
                    Index<D> row = idx;
                    row[0] = x0;
                    std::int64_t base = spec.linear(row);
                    std::fill(out.occ.begin() + base, out.occ.begin() + base + (x1 - x0 + 1),
                              std::uint8_t{0});
                }
            }
            if (D == 1) break;
            std::size_t k = D;
            while (true) {
                if (k-- == 1) {
                    k = 0;
                    break;
                }
                if (++idx[k] <= hi[k]) break;
                idx[k] = lo[k];
            }
            if (k == 0) break;
        }
    }
    if (!any) {
        // erosion escaped: no ball excludes anything, hull is the window
        return out;
    }
    return out;
}

}  // namespace reachkit
