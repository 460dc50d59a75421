#include "doorkit/geometry/skeleton.hpp"

#include <array>
#include <vector>

namespace doorkit::geometry {

namespace {

// Neighbours P2..P9: N, NE, E, SE, S, SW, W, NW.
std::array<int, 8> ring(const CellMask& m, Cell c) {
  std::array<int, 8> p{};
  for (int k = 0; k < 8; ++k) {
    p[k] = m.test({c.row + kNeighbors8[k].row, c.col + kNeighbors8[k].col}) ? 1 : 0;
  }
  return p;
}

bool zhang_suen_candidate(const CellMask& m, Cell c, int subpass) {
  const auto p = ring(m, c);
  int b = 0;
  int a = 0;
  for (int k = 0; k < 8; ++k) {
    b += p[k];
    if (p[k] == 0 && p[(k + 1) % 8] == 1) ++a;
  }
  if (b < 2 || b > 6 || a != 1) return false;
  const int n = p[0], e = p[2], s = p[4], w = p[6];
  if (subpass == 0) return n * e * s == 0 && e * s * w == 0;
  return n * e * w == 0 && n * s * w == 0;
}

// Pixels of mask that stay connected to `from` after removing `removed`.
std::vector<Cell> reachable(const CellMask& mask, Cell from, Cell removed) {
  CellMask seen(mask.width(), mask.height());
  std::vector<Cell> stack{from};
  std::vector<Cell> out;
  seen.set(from);
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    out.push_back(c);
    for (const auto& d : kNeighbors8) {
      const Cell n{c.row + d.row, c.col + d.col};
      if (n == removed || !mask.test(n) || seen.test(n)) continue;
      seen.set(n);
      stack.push_back(n);
    }
  }
  return out;
}

// Removes one pixel of the 2x2 block anchored at top-left `tl`. Prefers a
// simple pixel, then one whose removal keeps its neighbours connected through
// the rest of the mask; otherwise drops a pixel and the branches it was the
// only link to, which keeps the component count.
void break_block(CellMask& m, Cell tl) {
  const std::array<Cell, 4> block{tl, Cell{tl.row, tl.col + 1}, Cell{tl.row + 1, tl.col},
                                   Cell{tl.row + 1, tl.col + 1}};
  for (const Cell c : block) {
    if (is_simple(m, c)) {
      m.set(c, false);
      return;
    }
  }
  auto neighbours = [&](Cell c) {
    std::vector<Cell> out;
    for (const auto& d : kNeighbors8) {
      const Cell n{c.row + d.row, c.col + d.col};
      if (m.test(n)) out.push_back(n);
    }
    return out;
  };
  for (const Cell c : block) {
    const auto nb = neighbours(c);
    CellMask part(m.width(), m.height());
    for (const Cell r : reachable(m, nb.front(), c)) part.set(r);
    bool connected = true;
    for (const Cell n : nb) connected = connected && part.test(n);
    if (connected) {
      m.set(c, false);
      return;
    }
  }
  // Keep the piece holding the rest of the block; drop the detached branches.
  const Cell victim = block[0];
  m.set(victim, false);
  CellMask keep(m.width(), m.height());
  for (const Cell r : reachable(m, block[3], victim)) keep.set(r);
  for (const Cell n : neighbours(victim)) {
    if (keep.test(n)) continue;
    for (const Cell r : reachable(m, n, victim)) m.set(r, false);
  }
}

}  // namespace

bool is_simple(const CellMask& mask, Cell c) {
  // Yokoi connectivity number for 8-connectivity, neighbours counter-clockwise
  // from E: x1..x8 = E, NE, N, NW, W, SW, S, SE.
  const auto p = ring(mask, c);
  const std::array<int, 8> x{p[2], p[1], p[0], p[7], p[6], p[5], p[4], p[3]};
  int connectivity = 0;
  for (int k = 0; k < 8; k += 2) {
    const int a = 1 - x[k];
    const int b = 1 - x[(k + 1) % 8];
    const int d = 1 - x[(k + 2) % 8];
    connectivity += a - a * b * d;
  }
  return connectivity == 1;
}

CellMask skeletonize(const CellMask& cells) {
  CellMask m = cells;
  for (;;) {
    bool changed = false;
    for (int subpass = 0; subpass < 2; ++subpass) {
      std::vector<Cell> candidates;
      for (const Cell c : m.cells()) {
        if (zhang_suen_candidate(m, c, subpass)) candidates.push_back(c);
      }
      for (const Cell c : candidates) {
        if (is_simple(m, c)) {
          m.set(c, false);
          changed = true;
        }
      }
    }
    if (changed) continue;

    for (int r = 0; r + 1 < m.height() && !changed; ++r) {
      for (int c = 0; c + 1 < m.width() && !changed; ++c) {
        if (m.test({r, c}) && m.test({r, c + 1}) && m.test({r + 1, c}) &&
            m.test({r + 1, c + 1})) {
          break_block(m, {r, c});
          changed = true;
        }
      }
    }
    if (!changed) return m;
  }
}

}  // namespace doorkit::geometry
