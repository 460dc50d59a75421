#include "doorkit/geometry/contours.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>

namespace doorkit::geometry {

namespace {

// A corner of the cell lattice: corner (r, c) is the top-left corner of cell (r, c).
struct Corner {
  int r = 0;
  int c = 0;
  friend bool operator==(const Corner&, const Corner&) = default;
};

// Unit crack edge with the blocked cell on its left (image coordinates).
struct Edge {
  Corner from;
  Corner to;
  int dr() const { return to.r - from.r; }
  int dc() const { return to.c - from.c; }
};

// The blocked cell to the left of an edge.
Cell left_cell(const Edge& e) {
  const Corner lo{std::min(e.from.r, e.to.r), std::min(e.from.c, e.to.c)};
  if (e.dc() == -1) return {lo.r, lo.c};        // west along a top side
  if (e.dc() == 1) return {lo.r - 1, lo.c};     // east along a bottom side
  if (e.dr() == 1) return {lo.r, lo.c};         // south along a left side
  return {lo.r, lo.c - 1};                      // north along a right side
}

}  // namespace

std::vector<int> label_blocked_components(const GridMap& map, int* count) {
  std::vector<int> label(map.size(), -1);
  int next = 0;
  std::vector<Cell> stack;
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map.cells()[i] == CellState::Free || label[i] >= 0) continue;
    label[i] = next;
    stack.push_back(map.cell_at(i));
    while (!stack.empty()) {
      const Cell c = stack.back();
      stack.pop_back();
      for (const auto& n : kNeighbors8) {
        const Cell m{c.row + n.row, c.col + n.col};
        if (map.in_bounds(m) && map.is_blocked(m) && label[map.index(m)] < 0) {
          label[map.index(m)] = next;
          stack.push_back(m);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

std::vector<Contour> find_contours(const GridMap& map) {
  const int w = map.width();
  const int h = map.height();
  auto blocked = [&](int r, int c) {
    return r >= 0 && r < h && c >= 0 && c < w && map.is_blocked({r, c});
  };

  std::vector<Edge> edges;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!blocked(r, c)) continue;
      if (!blocked(r - 1, c)) edges.push_back({{r, c + 1}, {r, c}});
      if (!blocked(r + 1, c)) edges.push_back({{r + 1, c}, {r + 1, c + 1}});
      if (!blocked(r, c - 1)) edges.push_back({{r, c}, {r + 1, c}});
      if (!blocked(r, c + 1)) edges.push_back({{r + 1, c + 1}, {r, c + 1}});
    }
  }
  if (edges.empty()) return {};

  // Outgoing edges per corner; at most two (at diagonal pinch points).
  const auto corner_key = [&](Corner k) {
    return static_cast<std::size_t>(k.r) * static_cast<std::size_t>(w + 1) +
           static_cast<std::size_t>(k.c);
  };
  std::vector<std::array<int, 2>> outgoing(static_cast<std::size_t>(h + 1) * (w + 1),
                                           {-1, -1});
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    auto& slot = outgoing[corner_key(edges[i].from)];
    (slot[0] < 0 ? slot[0] : slot[1]) = i;
  }
  // At a pinch take the right turn: diagonally touching blocked cells belong to
  // one 8-connected component and must share an outline.
  auto successor = [&](int e) {
    const auto& slot = outgoing[corner_key(edges[e].to)];
    if (slot[1] < 0) return slot[0];
    const auto cross = [&](int o) {
      return edges[e].dc() * edges[o].dr() - edges[e].dr() * edges[o].dc();
    };
    return cross(slot[0]) > cross(slot[1]) ? slot[0] : slot[1];
  };

  int n_components = 0;
  const auto label = label_blocked_components(map, &n_components);

  struct Loop {
    int component;
    bool hole;
    std::vector<Corner> corners;
  };
  std::vector<Loop> loops;
  std::vector<std::uint8_t> used(edges.size(), 0);
  for (int start = 0; start < static_cast<int>(edges.size()); ++start) {
    if (used[start]) continue;
    std::vector<int> chain;
    for (int e = start; !used[e]; e = successor(e)) {
      used[e] = 1;
      chain.push_back(e);
    }
    // Keep only direction changes.
    std::vector<Corner> corners;
    const auto n = chain.size();
    for (std::size_t k = 0; k < n; ++k) {
      const Edge& in = edges[chain[(k + n - 1) % n]];
      const Edge& out = edges[chain[k]];
      if (in.dr() != out.dr() || in.dc() != out.dc()) corners.push_back(out.from);
    }
    // Shoelace in image coordinates: outer outlines wind one way, holes the other.
    long long twice_area = 0;
    for (std::size_t k = 0; k < corners.size(); ++k) {
      const Corner& a = corners[k];
      const Corner& b = corners[(k + 1) % corners.size()];
      twice_area += static_cast<long long>(a.c) * b.r - static_cast<long long>(b.c) * a.r;
    }
    const Cell owner = left_cell(edges[chain.front()]);
    loops.push_back({label[map.index(owner)], twice_area > 0, std::move(corners)});
  }

  std::stable_sort(loops.begin(), loops.end(), [](const Loop& a, const Loop& b) {
    if (a.component != b.component) return a.component < b.component;
    return !a.hole && b.hole;
  });

  std::vector<Contour> out;
  out.reserve(loops.size());
  for (const auto& loop : loops) {
    Contour contour;
    contour.component_id = loop.component;
    contour.hole = loop.hole;
    contour.vertices.reserve(loop.corners.size());
    for (const auto& k : loop.corners) contour.vertices.push_back(map.corner(k.r, k.c));
    out.push_back(std::move(contour));
  }
  return out;
}

std::vector<Cell> contour_boundary_cells(const GridMap& map, const Contour& contour) {
  const double res = map.resolution();
  auto to_corner = [&](Point2 p) {
    return Corner{map.height() - static_cast<int>(std::lround((p.y - map.origin_y()) / res)),
                  static_cast<int>(std::lround((p.x - map.origin_x()) / res))};
  };
  std::vector<Cell> out;
  const auto n = contour.vertices.size();
  for (std::size_t k = 0; k < n; ++k) {
    Corner a = to_corner(contour.vertices[k]);
    const Corner b = to_corner(contour.vertices[(k + 1) % n]);
    const int sr = (b.r > a.r) - (b.r < a.r);
    const int sc = (b.c > a.c) - (b.c < a.c);
    while (!(a == b)) {
      const Corner next{a.r + sr, a.c + sc};
      const Cell cell = left_cell({a, next});
      if (map.in_bounds(cell)) out.push_back(cell);
      a = next;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace doorkit::geometry
