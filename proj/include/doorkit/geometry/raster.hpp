#pragma once

#include <vector>

#include "doorkit/geometry/grid_map.hpp"

namespace doorkit::geometry {

// Cells (half-open squares) met by the open segment (a, b); a zero-length
// segment yields the cell containing a. Cells outside the grid are dropped.
std::vector<Cell> supercover(const GridMap& grid, Point2 a, Point2 b);

}  // namespace doorkit::geometry
