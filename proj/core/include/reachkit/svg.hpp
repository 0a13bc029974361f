#pragma once

#include <string>
#include <vector>

#include "reachkit/grid.hpp"
#include "reachkit/reach.hpp"

namespace reachkit {

// Plane figures only; renders with y pointing up.
struct SvgOptions {
    double cell_px = 8;                      // pixels per cell
    bool timestamp = false;                  // emit a generation comment
    const GridSet<2>* underlay = nullptr;    // e.g. hull cells behind the set
    const ReachVerdict<2>* verdict = nullptr;  // draws witness spindle and parts
    const std::vector<Index<2>>* arc = nullptr;  // cell path overlay
};

std::string render_svg(const GridSet<2>& g, const SvgOptions& opts = {});
void write_svg(const std::string& path, const GridSet<2>& g, const SvgOptions& opts = {});

}  // namespace reachkit
