#pragma once

#include "doorkit/geometry/grid_map.hpp"

namespace doorkit::geometry {

/// Zhang-Suen thinning with topology guards.
///
/// Each sub-iteration selects candidates with the classic parallel
/// Zhang-Suen tests and then deletes them one by one only while they remain
/// 8-simple, so the number of 8-connected components never changes (a plain
/// parallel pass erases 2x2 squares and two-cell-thick diagonals). When the
/// thinning stalls, any surviving 2x2 block is broken. The output is a subset
/// of the input, contains no 2x2 block, and is a fixpoint.
CellMask skeletonize(const CellMask& cells);

// True when removing c from the mask preserves local 8-topology.
bool is_simple(const CellMask& mask, Cell c);

}  // namespace doorkit::geometry
