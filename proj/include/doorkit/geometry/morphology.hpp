#pragma once

#include "doorkit/geometry/grid_map.hpp"

namespace doorkit::geometry {

// Square structuring element of half-width radius; cells outside the grid are
// ignored, so closing is extensive up to the border.
CellMask dilate(const CellMask& mask, int radius);
CellMask erode(const CellMask& mask, int radius);

/// Closes the obstacle mask (dilate then erode by close_radius) and then
/// inflates it by inflate_radius. Unknown cells count as Obstacle, and the
/// result is binary: every blocked cell comes back as Obstacle.
GridMap morph_cleanup(const GridMap& map, int close_radius, int inflate_radius);

}  // namespace doorkit::geometry
