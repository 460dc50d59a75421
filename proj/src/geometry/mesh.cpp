#include "doorkit/geometry/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "doorkit/error.hpp"
#include "doorkit/geometry/raster.hpp"

namespace doorkit::geometry {

namespace {

struct Segment {
  Point2 a;
  Point2 b;
};

// Intersection of one triangle with the plane z = h. Coplanar triangles yield
// their three edges.
void intersect(const Point3& p0, const Point3& p1, const Point3& p2, double h,
               std::vector<Segment>& out) {
  const std::array<const Point3*, 3> v{&p0, &p1, &p2};
  std::array<double, 3> d{};
  for (int i = 0; i < 3; ++i) d[i] = v[i]->z - h;

  if (d[0] == 0.0 && d[1] == 0.0 && d[2] == 0.0) {
    for (int i = 0; i < 3; ++i) {
      const auto& s = *v[i];
      const auto& e = *v[(i + 1) % 3];
      out.push_back({{s.x, s.y}, {e.x, e.y}});
    }
    return;
  }

  std::vector<Point2> pts;
  auto push_unique = [&](Point2 p) {
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  };
  for (int i = 0; i < 3; ++i) {
    if (d[i] == 0.0) push_unique({v[i]->x, v[i]->y});
  }
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    if ((d[i] < 0.0 && d[j] > 0.0) || (d[i] > 0.0 && d[j] < 0.0)) {
      const double t = d[i] / (d[i] - d[j]);
      push_unique({v[i]->x + t * (v[j]->x - v[i]->x), v[i]->y + t * (v[j]->y - v[i]->y)});
    }
  }
  if (pts.size() == 1) out.push_back({pts[0], pts[0]});
  if (pts.size() == 2) out.push_back({pts[0], pts[1]});
}

}  // namespace

std::vector<double> slice_heights(const SliceConfig& cfg) {
  if (!(cfg.z_step > 0.0)) throw Error("z_step must be positive");
  if (!(cfg.z_start <= cfg.z_end)) throw Error("z_start must not exceed z_end");
  std::vector<double> hs;
  const double slack = 1e-9 * std::max(1.0, std::abs(cfg.z_end));
  for (int k = 0;; ++k) {
    const double h = cfg.z_start + k * cfg.z_step;
    if (h > cfg.z_end + slack) break;
    hs.push_back(h);
  }
  return hs;
}

GridMap slice_mesh_to_map(const TriangleMesh& mesh, const SliceConfig& cfg) {
  if (mesh.vertices.empty() || mesh.triangles.empty()) throw Error("empty mesh");
  if (!(cfg.resolution > 0.0)) throw Error("resolution must be positive");
  const auto heights = slice_heights(cfg);

  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (const auto& v : mesh.vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z)) {
      throw Error("invalid geometry");
    }
    min_x = std::min(min_x, v.x);
    min_y = std::min(min_y, v.y);
    max_x = std::max(max_x, v.x);
    max_y = std::max(max_y, v.y);
  }
  const auto n_vertices = static_cast<int>(mesh.vertices.size());
  for (const auto& t : mesh.triangles) {
    for (int idx : t) {
      if (idx < 0 || idx >= n_vertices) {
        throw Error("invalid geometry: triangle index " + std::to_string(idx) +
                    " out of range");
      }
    }
  }

  const double res = cfg.resolution;
  // Interior cells cover [min, max] inclusive of the far edge; one pad cell per side.
  const int width = static_cast<int>(std::floor((max_x - min_x) / res + 1e-9)) + 3;
  const int height = static_cast<int>(std::floor((max_y - min_y) / res + 1e-9)) + 3;
  GridMap map(width, height, res, min_x - res, min_y - res, CellState::Free);

  std::vector<Segment> segments;
  for (const double h : heights) {
    for (const auto& t : mesh.triangles) {
      intersect(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]], h, segments);
    }
  }
  for (const auto& s : segments) {
    for (const Cell c : supercover(map, s.a, s.b)) map.set(c, CellState::Obstacle);
  }
  return map;
}

}  // namespace doorkit::geometry
