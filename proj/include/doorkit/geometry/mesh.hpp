#pragma once

#include <array>
#include <vector>

#include "doorkit/geometry/grid_map.hpp"

namespace doorkit::geometry {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct TriangleMesh {
  std::vector<Point3> vertices;
  std::vector<std::array<int, 3>> triangles;
};

struct SliceConfig {
  double resolution = 0.05;
  double z_start = 0.05;  // a few centimetres above the floor
  double z_step = 0.1;
  double z_end = 0.7;     // tallest embodiment
};

// Plane heights z_start, z_start + z_step, ... not exceeding z_end.
std::vector<double> slice_heights(const SliceConfig& cfg);

/// Rasterizes the union of the mesh cross-sections at every slicing plane.
///
/// The grid covers the XY bounding rectangle of all mesh vertices padded by
/// one cell on each side. A cell becomes Obstacle when any plane/triangle
/// intersection segment meets it; every other cell is Free.
GridMap slice_mesh_to_map(const TriangleMesh& mesh, const SliceConfig& cfg);

}  // namespace doorkit::geometry
