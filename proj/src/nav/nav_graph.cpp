#include "doorkit/nav/nav_graph.hpp"

#include "doorkit/error.hpp"
#include "doorkit/geometry/contours.hpp"
#include "doorkit/geometry/skeleton.hpp"

namespace doorkit::nav {

NavGraph NavGraph::on(const GridMap& grid, CellMask cells) {
  if (cells.width() != grid.width() || cells.height() != grid.height()) {
    throw Error("navigation graph does not match grid dimensions");
  }
  return {std::move(cells), grid.resolution(), grid.origin_x(), grid.origin_y()};
}

geometry::Point2 NavGraph::center(Cell c) const {
  return {origin_x + (c.col + 0.5) * resolution,
          origin_y + (cells.height() - 1 - c.row + 0.5) * resolution};
}

CellMask filter_spurious(CellMask cells) {
  bool removed = true;
  while (removed) {
    removed = false;
    for (const Cell c : cells.cells()) {
      if (cells.degree(c) <= 1) {
        cells.set(c, false);
        removed = true;
      }
    }
  }
  return cells;
}

NavGraph build_nav_graph(const GridMap& map, const geometry::VoronoiLabeling& labeling) {
  CellMask kept = filter_spurious(labeling.boundary_cells);
  return NavGraph::on(map, geometry::skeletonize(kept));
}

NavGraph compute_nav_graph(const GridMap& map, const geometry::VoronoiConfig& cfg) {
  const auto contours = geometry::find_contours(map);
  return build_nav_graph(map, geometry::voronoi_boundary(map, contours, cfg));
}

}  // namespace doorkit::nav
