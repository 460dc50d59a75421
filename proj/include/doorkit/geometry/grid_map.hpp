#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace doorkit::geometry {

enum class CellState : std::uint8_t { Free = 0, Obstacle = 1, Unknown = 2 };

// Row/column index of a grid cell. Row 0 is the top image row.
struct Cell {
  int row = 0;
  int col = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

// 8-neighbourhood offsets in the fixed order N, NE, E, SE, S, SW, W, NW.
inline constexpr Cell kNeighbors8[8] = {{-1, 0}, {-1, 1}, {0, 1},  {1, 1},
                                        {1, 0},  {1, -1}, {0, -1}, {-1, -1}};

/// Occupancy grid with a metric frame.
///
/// The origin is the world position of the bottom-left corner of the
/// bottom-left cell. Cell (row i, col j) has its center at
/// (origin_x + (j + 0.5) * resolution, origin_y + (height - 1 - i + 0.5) * resolution).
class GridMap {
 public:
  GridMap(int width, int height, double resolution, double origin_x = 0.0,
          double origin_y = 0.0, CellState fill = CellState::Free);
  GridMap(int width, int height, double resolution, double origin_x, double origin_y,
          std::vector<CellState> cells);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double resolution() const noexcept { return resolution_; }
  double origin_x() const noexcept { return origin_x_; }
  double origin_y() const noexcept { return origin_y_; }
  std::size_t size() const noexcept { return cells_.size(); }
  const std::vector<CellState>& cells() const noexcept { return cells_; }

  bool in_bounds(Cell c) const noexcept {
    return c.row >= 0 && c.row < height_ && c.col >= 0 && c.col < width_;
  }
  std::size_t index(Cell c) const noexcept {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.col);
  }
  Cell cell_at(std::size_t idx) const noexcept {
    return {static_cast<int>(idx / static_cast<std::size_t>(width_)),
            static_cast<int>(idx % static_cast<std::size_t>(width_))};
  }

  CellState at(Cell c) const { return cells_[index(c)]; }
  void set(Cell c, CellState s) { cells_[index(c)] = s; }

  // Unknown counts as blocked everywhere in the geometry code.
  bool is_free(Cell c) const { return at(c) == CellState::Free; }
  bool is_blocked(Cell c) const { return at(c) != CellState::Free; }

  Point2 cell_center(Cell c) const noexcept;
  // Cell containing p; half-open cells, nullopt when outside the grid.
  std::optional<Cell> world_to_cell(Point2 p) const noexcept;
  // World position of the top-left corner of cell c.
  Point2 corner(int row, int col) const noexcept;

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  int width_;
  int height_;
  double resolution_;
  double origin_x_;
  double origin_y_;
  std::vector<CellState> cells_;
};

/// Dense binary mask over a grid's cell lattice.
class CellMask {
 public:
  CellMask() = default;
  CellMask(int width, int height) : width_(width), height_(height),
      bits_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool in_bounds(Cell c) const noexcept {
    return c.row >= 0 && c.row < height_ && c.col >= 0 && c.col < width_;
  }
  bool test(Cell c) const noexcept { return in_bounds(c) && bits_[idx(c)] != 0; }
  void set(Cell c, bool v = true) { bits_[idx(c)] = v ? 1 : 0; }

  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  // Set cells in row-major order.
  std::vector<Cell> cells() const;
  // Number of set 8-neighbours.
  int degree(Cell c) const noexcept;

  friend bool operator==(const CellMask&, const CellMask&) = default;

 private:
  std::size_t idx(Cell c) const noexcept {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.col);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

CellMask free_mask(const GridMap& map);
CellMask blocked_mask(const GridMap& map);

// Number of 8-connected components of a mask.
int count_components8(const CellMask& mask);

}  // namespace doorkit::geometry
