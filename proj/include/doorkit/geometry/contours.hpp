#pragma once

#include <vector>

#include "doorkit/geometry/grid_map.hpp"

namespace doorkit::geometry {

/// Closed outline of an obstacle component.
///
/// Vertices are lattice corners (cell corners) in world coordinates, ordered so
/// that the obstacle lies on the left when walking the outline in image
/// coordinates (row axis pointing down). Collinear runs are collapsed, so a
/// single cell yields its 4 corners and any straight bar a 4-vertex rectangle.
struct Contour {
  int component_id = 0;
  bool hole = false;  // inner outline of the component (encloses a free pocket)
  bool closed = true;
  std::vector<Point2> vertices;
};

// 8-connected labelling of blocked cells; -1 for free cells. Labels follow
// row-major discovery order.
std::vector<int> label_blocked_components(const GridMap& map, int* count = nullptr);

/// Traces every outline of every 8-connected blocked component: the outer
/// boundary first, then one outline per enclosed free pocket. Empty when the
/// map has no blocked cells.
std::vector<Contour> find_contours(const GridMap& map);

// Grid cells directly inside the contour's edges, i.e. the component cells
// that share a side with the outside region this contour bounds.
std::vector<Cell> contour_boundary_cells(const GridMap& map, const Contour& contour);

}  // namespace doorkit::geometry
