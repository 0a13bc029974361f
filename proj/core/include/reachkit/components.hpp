#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "reachkit/grid.hpp"

namespace reachkit {

struct Labeling {
    std::vector<std::int32_t> labels;  // -1 = outside the labeled set
    std::int32_t count = 0;
};

// BFS labeling of occupied cells (optionally restricted by mask), with
// labels issued in row-major discovery order and neighbors expanded in the
// fixed offset order, so the result is reproducible byte for byte.
template <std::size_t D>
inline Labeling connected_components(const GridSet<D>& g, Adjacency adj,
                                     const std::function<bool(std::int64_t)>& mask = {}) {
    const GridSpec<D>& spec = g.spec;
    std::int64_t total = spec.cell_count();
    Labeling out;
    out.labels.assign(static_cast<std::size_t>(total), -1);
    const auto& offs = neighbor_offsets<D>(adj);

    auto inside = [&](std::int64_t lin) {
        return g.occupied(lin) && (!mask || mask(lin));
    };

    std::vector<std::int64_t> queue;
    for (std::int64_t seed = 0; seed < total; ++seed) {
        if (!inside(seed) || out.labels[static_cast<std::size_t>(seed)] >= 0) continue;
        std::int32_t label = out.count++;
        out.labels[static_cast<std::size_t>(seed)] = label;
        queue.clear();
        queue.push_back(seed);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Index<D> idx = spec.unlinear(queue[head]);
            for (const auto& off : offs) {
                Index<D> n = idx;
                for (std::size_t k = 0; k < D; ++k) n[k] += off[k];
                if (!spec.in_bounds(n)) continue;
                std::int64_t nl = spec.linear(n);
                if (out.labels[static_cast<std::size_t>(nl)] >= 0 || !inside(nl)) continue;
                out.labels[static_cast<std::size_t>(nl)] = label;
                queue.push_back(nl);
            }
        }
    }
    return out;
}

}  // namespace reachkit
