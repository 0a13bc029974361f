#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "reachkit/errors.hpp"
#include "reachkit/grid.hpp"
#include "reachkit/parallel.hpp"

namespace reachkit {

// Sentinel for "no source yet": larger than any attainable squared index
// distance (the cell cap bounds those by 1e16) yet far from int64 overflow
// in the envelope arithmetic.
inline constexpr std::int64_t kD2Inf = INT64_C(400'000'000'000'000'000);

// Exact center-to-center distance field. dist2 holds the squared distance in
// index units (an integer, since cell centers form a lattice), src holds the
// linear index of a nearest occupied cell, and values[i] = h * sqrt(dist2[i]).
// Keeping the squared distance integral is what makes downstream equality
// and threshold tests exact: any two routes to the same cell produce the
// same integer before any floating-point enters.
template <std::size_t D>
struct DistanceField {
    GridSpec<D> spec;
    std::vector<std::int64_t> dist2;
    std::vector<std::int64_t> src;
    std::vector<double> values;
};

namespace detail {

// One lower-envelope pass along a line: g[i] = min_j (i-j)^2 + f[j], with the
// argmin's source propagated. Breakpoints between parabolas are rationals
// num / (2(q-v)); comparisons cross-multiply in 128-bit, so the envelope is
// exact and the winning parabola never depends on rounding.
inline void envelope_line(const std::int64_t* f, const std::int64_t* fsrc, std::int64_t n,
                          std::int64_t* g, std::int64_t* gsrc,
                          std::int64_t* v, std::int64_t* zn, std::int64_t* zd) {
    std::int64_t k = -1;
    for (std::int64_t q = 0; q < n; ++q) {
        if (f[q] >= kD2Inf) continue;
        while (k >= 0) {
            // breakpoint of parabola v[k] vs q
            std::int64_t num = f[q] + q * q - f[v[k]] - v[k] * v[k];
            std::int64_t den = 2 * (q - v[k]);
            // pop if it does not exceed the previous breakpoint
            bool pop;
            if (k == 0) {
                pop = false;
            } else {
                pop = static_cast<__int128>(num) * zd[k] <=
                      static_cast<__int128>(zn[k]) * den;
            }
            if (!pop) {
                ++k;
                v[k] = q;
                zn[k] = num;
                zd[k] = den;
                break;
            }
            --k;
        }
        if (k < 0) {
            k = 0;
            v[0] = q;
            zn[0] = 0;
            zd[0] = 0;  // unused for k = 0
        }
    }
    if (k < 0) {
        for (std::int64_t i = 0; i < n; ++i) {
            g[i] = kD2Inf;
            gsrc[i] = -1;
        }
        return;
    }
    std::int64_t j = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        while (j < k && static_cast<__int128>(zn[j + 1]) <
                            static_cast<__int128>(i) * zd[j + 1])
            ++j;
        std::int64_t d = i - v[j];
        g[i] = d * d + f[v[j]];
        gsrc[i] = fsrc[v[j]];
    }
}

}  // namespace detail

template <std::size_t D>
inline DistanceField<D> distance_transform(const GridSet<D>& g) {
    if (g.empty()) throw DomainError("distance transform of an empty set");
    const GridSpec<D>& spec = g.spec;
    std::int64_t total = spec.cell_count();

    DistanceField<D> out;
    out.spec = spec;
    out.dist2.resize(static_cast<std::size_t>(total));
    out.src.resize(static_cast<std::size_t>(total));
    for (std::int64_t i = 0; i < total; ++i) {
        bool occ = g.occupied(i);
        out.dist2[static_cast<std::size_t>(i)] = occ ? 0 : kD2Inf;
        out.src[static_cast<std::size_t>(i)] = occ ? i : -1;
    }

    std::int64_t stride = 1;
    for (std::size_t axis = 0; axis < D; ++axis) {
        std::int64_t n = spec.dims[axis];
        std::int64_t lines = total / n;
        std::int64_t block = stride * n;
        std::int64_t* d2 = out.dist2.data();
        std::int64_t* sc = out.src.data();
        std::int64_t st = stride;
        parallel_for(lines, [&, d2, sc, n, st, block](std::int64_t lb, std::int64_t le) {
            std::vector<std::int64_t> f(n), fs(n), gg(n), gs(n), v(n), zn(n), zd(n);
            for (std::int64_t L = lb; L < le; ++L) {
                std::int64_t base = (L / st) * block + (L % st);
                for (std::int64_t i = 0; i < n; ++i) {
                    f[i] = d2[base + i * st];
                    fs[i] = sc[base + i * st];
                }
                detail::envelope_line(f.data(), fs.data(), n, gg.data(), gs.data(),
                                      v.data(), zn.data(), zd.data());
                for (std::int64_t i = 0; i < n; ++i) {
                    d2[base + i * st] = gg[i];
                    sc[base + i * st] = gs[i];
                }
            }
        });
        stride = block;
    }

    out.values.resize(static_cast<std::size_t>(total));
    for (std::int64_t i = 0; i < total; ++i)
        out.values[static_cast<std::size_t>(i)] =
            spec.h * std::sqrt(static_cast<double>(out.dist2[static_cast<std::size_t>(i)]));
    return out;
}

// Smallest integer k with h * sqrt(k) >= R, using the same expression that
// fills DistanceField::values, so "value >= R" and "dist2 >= k" agree on
// every cell including exact ties.
inline std::int64_t erosion_threshold_d2(double h, double R) {
    if (!(h > 0)) throw DomainError("spacing must be positive");
    if (!(R > 0)) throw DomainError("radius must be positive");
    double q = R / h;
    auto k = static_cast<std::int64_t>(q * q);
    if (k < 0) k = 0;
    while (k > 0 && h * std::sqrt(static_cast<double>(k - 1)) >= R) --k;
    while (!(h * std::sqrt(static_cast<double>(k)) >= R)) ++k;
    return k;
}

template <std::size_t D>
inline GridSet<D> erode(const DistanceField<D>& df, double R) {
    std::int64_t k0 = erosion_threshold_d2(df.spec.h, R);
    GridSet<D> out(df.spec);
    for (std::int64_t i = 0; i < df.spec.cell_count(); ++i)
        out.occ[static_cast<std::size_t>(i)] =
            df.dist2[static_cast<std::size_t>(i)] >= k0 ? 1 : 0;
    return out;
}

// Cells at distance >= R from the occupied set, restricted to the window.
// With check_margin the occupied bounding box must sit at least R + 2h
// inside the window; interior results are then independent of anything
// outside it. Callers eroding an already-eroded set (whose occupancy
// legitimately touches the window edge) pass check_margin = false.
template <std::size_t D>
inline GridSet<D> erode(const GridSet<D>& g, double R, bool check_margin = true) {
    if (!(R > 0)) throw DomainError("erosion radius must be positive");
    if (g.empty()) throw DomainError("erosion of an empty set");
    if (check_margin && window_margin(g) + 1e-9 * g.spec.h < R + 2 * g.spec.h)
        throw WindowError("window too small for erosion radius");
    DistanceField<D> df = distance_transform(g);
    return erode(df, R);
}

}  // namespace reachkit
