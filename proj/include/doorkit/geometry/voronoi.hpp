#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "doorkit/geometry/contours.hpp"
#include "doorkit/geometry/grid_map.hpp"

namespace doorkit::geometry {

struct VoronoiConfig {
  // Same-contour site pairs closer than this never split a region.
  double site_separation = 0.3;
  // Contour edges are resampled so consecutive sites are at most this far
  // apart; 0 keeps only the contour vertices.
  double site_spacing = 0.0;
};

/// Discrete Voronoi partition of the free cells by contour sites.
struct VoronoiLabeling {
  static constexpr std::int32_t kNoSite = -1;

  std::vector<Point2> sites;
  std::vector<int> site_contour;    // index into the contour list
  std::vector<int> site_component;  // obstacle component id
  // Per grid cell (row-major); kNoSite on blocked cells.
  std::vector<std::int32_t> nearest_site;
  CellMask boundary_cells;
};

// Sites for a contour list: vertices, optionally densified along each edge.
void collect_sites(const std::vector<Contour>& contours, double spacing,
                   std::vector<Point2>& sites, std::vector<int>& site_contour,
                   std::vector<int>& site_component);

/// Labels every free cell with its Euclidean-nearest site (ties go to the
/// lower site index) and marks the cells on the region boundary.
///
/// A free cell c with a free 8-neighbour n whose site differs is a candidate
/// when the two sites lie on different contours or at least site_separation
/// apart. Of such a pair, the cell nearer the bisector (smaller gap between its
/// own and the competing site distance) is marked; both when equal. This keeps
/// the boundary band one to two cells wide and bounds the competing-distance
/// gap of every marked cell by the cell spacing.
VoronoiLabeling voronoi_boundary(const GridMap& map, const std::vector<Contour>& contours,
                                 const VoronoiConfig& cfg = {});

}  // namespace doorkit::geometry
