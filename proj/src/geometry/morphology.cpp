#include "doorkit/geometry/morphology.hpp"

#include <algorithm>
#include <vector>

#include "doorkit/error.hpp"

namespace doorkit::geometry {

namespace {

// Separable square-window filter: "any" for dilation, "all" for erosion.
CellMask window_filter(const CellMask& mask, int radius, bool any) {
  if (radius < 0) throw Error("morphology radius must be non-negative");
  if (radius == 0) return mask;
  const int w = mask.width();
  const int h = mask.height();
  CellMask rows(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      bool acc = !any;
      for (int k = std::max(0, c - radius); k <= std::min(w - 1, c + radius); ++k) {
        const bool v = mask.test({r, k});
        acc = any ? (acc || v) : (acc && v);
      }
      rows.set({r, c}, acc);
    }
  }
  CellMask out(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      bool acc = !any;
      for (int k = std::max(0, r - radius); k <= std::min(h - 1, r + radius); ++k) {
        const bool v = rows.test({k, c});
        acc = any ? (acc || v) : (acc && v);
      }
      out.set({r, c}, acc);
    }
  }
  return out;
}

}  // namespace

CellMask dilate(const CellMask& mask, int radius) { return window_filter(mask, radius, true); }

CellMask erode(const CellMask& mask, int radius) { return window_filter(mask, radius, false); }

GridMap morph_cleanup(const GridMap& map, int close_radius, int inflate_radius) {
  if (close_radius < 0 || inflate_radius < 0) {
    throw Error("morphology radius must be non-negative");
  }
  const CellMask closed = erode(dilate(blocked_mask(map), close_radius), close_radius);
  const CellMask inflated = dilate(closed, inflate_radius);
  std::vector<CellState> cells(map.size(), CellState::Free);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (inflated.test(map.cell_at(i))) cells[i] = CellState::Obstacle;
  }
  return GridMap(map.width(), map.height(), map.resolution(), map.origin_x(), map.origin_y(),
                 std::move(cells));
}

}  // namespace doorkit::geometry
