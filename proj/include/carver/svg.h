#pragma once

#include "carver/curve_cover.h"
#include "carver/grid.h"

#include <optional>
#include <string>
#include <vector>

namespace carver {

struct SvgOverlays {
    std::vector<CubeRegion> cubes;  // drawn as outlines at the continuum's resolution
    std::optional<Polyline> curve;
};

/// 1024 x 1024 canvas with the y axis pointing up. Planar input only.
std::string render_svg(const DiscreteContinuum& K, const SvgOverlays& overlays = {});

}  // namespace carver
