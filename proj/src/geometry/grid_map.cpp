#include "doorkit/geometry/grid_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "doorkit/error.hpp"

namespace doorkit::geometry {

namespace {

// Absorbs round-off when a coordinate sits exactly on a cell boundary.
constexpr double kBoundarySlack = 1e-9;

void check_shape(int width, int height, double resolution, std::size_t n) {
  if (width < 0 || height < 0) throw Error("grid dimensions must be non-negative");
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw Error("grid resolution must be positive");
  }
  if (n != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error("grid cell count " + std::to_string(n) + " does not match " +
                std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

GridMap::GridMap(int width, int height, double resolution, double origin_x,
                 double origin_y, CellState fill)
    : GridMap(width, height, resolution, origin_x, origin_y,
              std::vector<CellState>(static_cast<std::size_t>(std::max(width, 0)) *
                                         static_cast<std::size_t>(std::max(height, 0)),
                                     fill)) {}

GridMap::GridMap(int width, int height, double resolution, double origin_x,
                 double origin_y, std::vector<CellState> cells)
    : width_(width),
      height_(height),
      resolution_(resolution),
      origin_x_(origin_x),
      origin_y_(origin_y),
      cells_(std::move(cells)) {
  check_shape(width_, height_, resolution_, cells_.size());
}

Point2 GridMap::cell_center(Cell c) const noexcept {
  return {origin_x_ + (c.col + 0.5) * resolution_,
          origin_y_ + (height_ - 1 - c.row + 0.5) * resolution_};
}

std::optional<Cell> GridMap::world_to_cell(Point2 p) const noexcept {
  const double fx = (p.x - origin_x_) / resolution_ + kBoundarySlack;
  const double fy = (p.y - origin_y_) / resolution_ + kBoundarySlack;
  if (!std::isfinite(fx) || !std::isfinite(fy)) return std::nullopt;
  const double col = std::floor(fx);
  const double from_bottom = std::floor(fy);
  if (col < 0 || col >= width_ || from_bottom < 0 || from_bottom >= height_) {
    return std::nullopt;
  }
  return Cell{height_ - 1 - static_cast<int>(from_bottom), static_cast<int>(col)};
}

Point2 GridMap::corner(int row, int col) const noexcept {
  return {origin_x_ + col * resolution_, origin_y_ + (height_ - row) * resolution_};
}

std::size_t CellMask::count() const noexcept {
  std::size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

std::vector<Cell> CellMask::cells() const {
  std::vector<Cell> out;
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      if (bits_[idx({r, c})]) out.push_back({r, c});
    }
  }
  return out;
}

int CellMask::degree(Cell c) const noexcept {
  int d = 0;
  for (const auto& n : kNeighbors8) d += test({c.row + n.row, c.col + n.col}) ? 1 : 0;
  return d;
}

CellMask free_mask(const GridMap& map) {
  CellMask m(map.width(), map.height());
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map.cells()[i] == CellState::Free) m.set(map.cell_at(i));
  }
  return m;
}

CellMask blocked_mask(const GridMap& map) {
  CellMask m(map.width(), map.height());
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map.cells()[i] != CellState::Free) m.set(map.cell_at(i));
  }
  return m;
}

int count_components8(const CellMask& mask) {
  CellMask seen(mask.width(), mask.height());
  int components = 0;
  std::vector<Cell> stack;
  for (const Cell start : mask.cells()) {
    if (seen.test(start)) continue;
    ++components;
    seen.set(start);
    stack.push_back(start);
    while (!stack.empty()) {
      const Cell c = stack.back();
      stack.pop_back();
      for (const auto& n : kNeighbors8) {
        const Cell m{c.row + n.row, c.col + n.col};
        if (mask.test(m) && !seen.test(m)) {
          seen.set(m);
          stack.push_back(m);
        }
      }
    }
  }
  return components;
}

}  // namespace doorkit::geometry
