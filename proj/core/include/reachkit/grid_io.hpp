#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "reachkit/grid.hpp"
#include "reachkit/shapes.hpp"

namespace reachkit {

// Text grid format:
//   GRIDSET d h dim1 dim2 [dim3] ox oy [oz]
// followed by one line of '0'/'1' per row (x fastest within a line, then y
// line by line); for d = 3 the z slices appear in order, separated by a
// blank line. Numbers round-trip through 17 significant digits.
using AnyGrid = std::variant<GridSet<2>, GridSet<3>>;

AnyGrid read_grid(const std::string& path);
AnyGrid parse_grid(const std::string& text);

void write_grid(const std::string& path, const GridSet<2>& g);
void write_grid(const std::string& path, const GridSet<3>& g);
std::string format_grid(const GridSet<2>& g);
std::string format_grid(const GridSet<3>& g);

// Point list: {"points": [[x,y],...] , "thicken": r}; point arity fixes the
// dimension, thicken defaults to 0.
struct PointList {
    int dim = 2;
    std::vector<std::array<double, 3>> pts;  // coordinate 2 unused when dim == 2
    double thicken = 0;
};

PointList read_point_list(const std::string& path);
PointList parse_point_list(const std::string& text);

template <std::size_t D>
inline Shape<D> point_list_shape(const PointList& pl) {
    if (pl.dim != static_cast<int>(D)) throw ParseError("point list dimension mismatch");
    Shape<D> sh;
    sh.kind = Shape<D>::Kind::Points;
    sh.thicken = pl.thicken;
    for (const auto& p : pl.pts) {
        Vec<D> v{};
        for (std::size_t k = 0; k < D; ++k) v[k] = p[k];
        sh.pts.push_back(v);
    }
    return sh;
}

// Window for a free-standing point list: the bounding box of the thickened
// points padded by pad_cells, anchored so the lattice passes through the
// first point.
template <std::size_t D>
inline GridSpec<D> point_list_window(const PointList& pl, double h, std::int64_t pad_cells = 4) {
    if (pl.pts.empty()) throw ParseError("point list is empty");
    if (pl.dim != static_cast<int>(D)) throw ParseError("point list dimension mismatch");
    Vec<D> anchor{}, below{}, above{};
    for (std::size_t k = 0; k < D; ++k) anchor[k] = pl.pts[0][k];
    for (const auto& p : pl.pts)
        for (std::size_t k = 0; k < D; ++k) {
            below[k] = std::max(below[k], anchor[k] - (p[k] - pl.thicken));
            above[k] = std::max(above[k], (p[k] + pl.thicken) - anchor[k]);
        }
    double pad = static_cast<double>(pad_cells) * h;
    for (std::size_t k = 0; k < D; ++k) {
        below[k] += pad;
        above[k] += pad;
    }
    return make_window(anchor, below, above, h);
}

}  // namespace reachkit
