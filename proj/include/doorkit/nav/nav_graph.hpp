#pragma once

#include <vector>

#include "doorkit/geometry/grid_map.hpp"
#include "doorkit/geometry/voronoi.hpp"

namespace doorkit::nav {

using geometry::Cell;
using geometry::CellMask;
using geometry::GridMap;

/// Navigation graph: a set of free cells with implicit 8-adjacency, plus the
/// grid geometry needed to place them in the world.
struct NavGraph {
  CellMask cells;
  double resolution = 1.0;
  double origin_x = 0.0;
  double origin_y = 0.0;

  static NavGraph on(const GridMap& grid, CellMask cells);

  geometry::Point2 center(Cell c) const;
  bool empty() const { return cells.empty(); }
  std::size_t size() const { return cells.count(); }
};

// Iteratively drops cells with at most one 8-neighbour until none is left.
CellMask filter_spurious(CellMask cells);

/// Boundary cells of the labelling, pruned of degree <= 1 cells and thinned.
NavGraph build_nav_graph(const GridMap& map, const geometry::VoronoiLabeling& labeling);

// Contours, Voronoi boundary and graph in one go.
NavGraph compute_nav_graph(const GridMap& map, const geometry::VoronoiConfig& cfg = {});

}  // namespace doorkit::nav
