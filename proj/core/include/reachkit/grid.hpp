#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstddef>
#include <vector>

#include "reachkit/errors.hpp"
#include "reachkit/vec.hpp"

namespace reachkit {

template <std::size_t D>
using Index = std::array<std::int64_t, D>;

inline constexpr std::int64_t kMaxCells = 100'000'000;

// Uniform cell-center grid: cell (i0,..) represents exactly the point
// origin + h * index. All distances downstream are center-to-center.
template <std::size_t D>
struct GridSpec {
    Vec<D> origin;
    double h = 1.0;
    Index<D> dims{};

    void validate() const {
        if (!(h > 0)) throw DomainError("grid spacing must be positive");
        std::int64_t total = 1;
        for (std::size_t k = 0; k < D; ++k) {
            if (dims[k] < 1) throw DomainError("grid dims must be >= 1");
            if (dims[k] > kMaxCells / total)
                throw DomainError("grid exceeds the cell cap");
            total *= dims[k];
        }
    }

    std::int64_t cell_count() const {
        std::int64_t total = 1;
        for (std::size_t k = 0; k < D; ++k) total *= dims[k];
        return total;
    }

    // row-major with the first coordinate fastest
    std::int64_t linear(const Index<D>& idx) const {
        std::int64_t lin = 0;
        for (std::size_t k = D; k-- > 0;) lin = lin * dims[k] + idx[k];
        return lin;
    }

    Index<D> unlinear(std::int64_t lin) const {
        Index<D> idx{};
        for (std::size_t k = 0; k < D; ++k) {
            idx[k] = lin % dims[k];
            lin /= dims[k];
        }
        return idx;
    }

    bool in_bounds(const Index<D>& idx) const {
        for (std::size_t k = 0; k < D; ++k)
            if (idx[k] < 0 || idx[k] >= dims[k]) return false;
        return true;
    }

    Vec<D> center(const Index<D>& idx) const {
        Vec<D> p = origin;
        for (std::size_t k = 0; k < D; ++k) p[k] += h * static_cast<double>(idx[k]);
        return p;
    }

    // nearest cell index to a world point, unclamped
    Index<D> nearest_index(const Vec<D>& p) const {
        Index<D> idx{};
        for (std::size_t k = 0; k < D; ++k)
            idx[k] = static_cast<std::int64_t>(std::llround((p[k] - origin[k]) / h));
        return idx;
    }

    bool operator==(const GridSpec&) const = default;
};

template <std::size_t D>
struct GridSet {
    GridSpec<D> spec;
    std::vector<std::uint8_t> occ;

    GridSet() = default;
    explicit GridSet(const GridSpec<D>& s) : spec(s) {
        spec.validate();
        occ.assign(static_cast<std::size_t>(spec.cell_count()), 0);
    }

    bool occupied(std::int64_t lin) const { return occ[static_cast<std::size_t>(lin)] != 0; }
    bool occupied(const Index<D>& idx) const { return occupied(spec.linear(idx)); }
    void set(const Index<D>& idx, bool v = true) {
        occ[static_cast<std::size_t>(spec.linear(idx))] = v ? 1 : 0;
    }

    std::int64_t count() const {
        std::int64_t n = 0;
        for (std::uint8_t c : occ) n += c;
        return n;
    }
    bool empty() const { return count() == 0; }
};

enum class Adjacency { Face, Full };

// Neighbor index offsets in a fixed order (offsets sorted lexicographically),
// so every traversal in the library visits neighbors identically.
template <std::size_t D>
inline const std::vector<Index<D>>& neighbor_offsets(Adjacency adj) {
    static const std::vector<Index<D>> face = [] {
        std::vector<Index<D>> v;
        for (std::size_t k = 0; k < D; ++k) {
            Index<D> m{}, p{};
            m[k] = -1;
            p[k] = +1;
            v.push_back(m);
            v.push_back(p);
        }
        std::sort(v.begin(), v.end());
        return v;
    }();
    static const std::vector<Index<D>> full = [] {
        std::vector<Index<D>> v;
        std::int64_t total = 1;
        for (std::size_t k = 0; k < D; ++k) total *= 3;
        for (std::int64_t code = 0; code < total; ++code) {
            Index<D> off{};
            std::int64_t c = code;
            bool zero = true;
            for (std::size_t k = 0; k < D; ++k) {
                off[k] = c % 3 - 1;
                if (off[k] != 0) zero = false;
                c /= 3;
            }
            if (!zero) v.push_back(off);
        }
        std::sort(v.begin(), v.end());
        return v;
    }();
    return adj == Adjacency::Face ? face : full;
}

// Index-space bounding box of the occupied cells; false when empty.
template <std::size_t D>
inline bool occupied_bbox(const GridSet<D>& g, Index<D>& lo, Index<D>& hi) {
    bool any = false;
    for (std::int64_t lin = 0; lin < g.spec.cell_count(); ++lin) {
        if (!g.occupied(lin)) continue;
        Index<D> idx = g.spec.unlinear(lin);
        if (!any) {
            lo = hi = idx;
            any = true;
        } else {
            for (std::size_t k = 0; k < D; ++k) {
                lo[k] = std::min(lo[k], idx[k]);
                hi[k] = std::max(hi[k], idx[k]);
            }
        }
    }
    return any;
}

// Smallest world-space gap between the occupied bounding box and the window
// edge, in units of h times cell counts (0 when occupancy touches the edge).
template <std::size_t D>
inline double window_margin(const GridSet<D>& g) {
    Index<D> lo, hi;
    if (!occupied_bbox(g, lo, hi)) throw DomainError("margin of an empty set");
    double m = 1e300;
    for (std::size_t k = 0; k < D; ++k) {
        m = std::min(m, static_cast<double>(lo[k]) * g.spec.h);
        m = std::min(m, static_cast<double>(g.spec.dims[k] - 1 - hi[k]) * g.spec.h);
    }
    return m;
}

// Cells whose center lies within distance R of the window boundary. Results
// there depend on unseen cells outside the window, so callers exclude them.
template <std::size_t D>
inline bool is_frontier(const GridSpec<D>& spec, const Index<D>& idx, double R) {
    for (std::size_t k = 0; k < D; ++k) {
        std::int64_t edge = std::min(idx[k], spec.dims[k] - 1 - idx[k]);
        if ((static_cast<double>(edge) + 0.5) * spec.h < R) return true;
    }
    return false;
}

// One-step dilation: every cell adjacent (per adj) to an occupied cell, plus
// the occupied cells themselves.
template <std::size_t D>
inline GridSet<D> dilate_once(const GridSet<D>& g, Adjacency adj) {
    GridSet<D> out(g.spec);
    const auto& offs = neighbor_offsets<D>(adj);
    for (std::int64_t lin = 0; lin < g.spec.cell_count(); ++lin) {
        if (!g.occupied(lin)) continue;
        Index<D> idx = g.spec.unlinear(lin);
        out.occ[static_cast<std::size_t>(lin)] = 1;
        for (const auto& off : offs) {
            Index<D> n = idx;
            for (std::size_t k = 0; k < D; ++k) n[k] += off[k];
            if (g.spec.in_bounds(n)) out.set(n);
        }
    }
    return out;
}

}  // namespace reachkit
