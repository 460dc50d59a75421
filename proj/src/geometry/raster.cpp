#include "doorkit/geometry/raster.hpp"

#include <algorithm>
#include <cmath>

namespace doorkit::geometry {

namespace {

// Parameters t in (0, 1) where a + t (b - a) crosses a grid line of one axis.
void axis_crossings(double from, double to, double origin, double step,
                    std::vector<double>& ts) {
  const double delta = to - from;
  if (delta == 0.0) return;
  const double lo = std::min(from, to);
  const double hi = std::max(from, to);
  double k = std::ceil((lo - origin) / step);
  for (double line = origin + k * step; line < hi; line = origin + (++k) * step) {
    const double t = (line - from) / delta;
    if (t > 0.0 && t < 1.0) ts.push_back(t);
  }
}

}  // namespace

std::vector<Cell> supercover(const GridMap& grid, Point2 a, Point2 b) {
  std::vector<Cell> out;
  auto add = [&](double t) {
    const Point2 p{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
    if (auto c = grid.world_to_cell(p)) out.push_back(*c);
  };
  if (a == b) {
    add(0.0);
    return out;
  }
  std::vector<double> ts;
  axis_crossings(a.x, b.x, grid.origin_x(), grid.resolution(), ts);
  axis_crossings(a.y, b.y, grid.origin_y(), grid.resolution(), ts);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  // Sample every crossing point and the midpoint of every piece between them.
  double prev = 0.0;
  for (const double t : ts) {
    add(0.5 * (prev + t));
    add(t);
    prev = t;
  }
  add(0.5 * (prev + 1.0));

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace doorkit::geometry
