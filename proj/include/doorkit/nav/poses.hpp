#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "doorkit/nav/nav_graph.hpp"

namespace doorkit::nav {

struct PerceptionPose {
  double x = 0.0;
  double y = 0.0;
  double h = 0.0;      // camera height, metres
  double theta = 0.0;  // radians, multiple of pi/4

  friend bool operator==(const PerceptionPose&, const PerceptionPose&) = default;
};

// How the travelled distance grows when the depth-first walk pops a cell.
enum class DistanceAccrual {
  // Step from the cell that pushed the popped one (always a grid neighbour), so
  // backtracking never adds a jump across the graph.
  kTree,
  // Step from the previously popped cell, whatever it is.
  kPopOrder,
};

struct PoseConfig {
  double distance_d = 1.0;
  double h_low = 0.1;
  double h_high = 0.7;
  std::uint64_t seed = 0;
  DistanceAccrual accrual = DistanceAccrual::kTree;
};

inline constexpr int kPosesPerCluster = 16;

// One popped cell of the walk.
struct WalkStep {
  Cell cell;
  double increment = 0.0;
  bool emitted = false;
};

struct PoseExtraction {
  std::vector<PerceptionPose> poses;
  std::vector<WalkStep> steps;
  Cell start;
};

/// Depth-first walk over the graph emitting a 16-pose cluster (2 heights x 8
/// headings) every time the accumulated distance reaches distance_d.
///
/// The walk starts at `start` or, when absent, at a cell drawn uniformly with
/// the configured seed. Unexplored neighbours are pushed in the order
/// N, NE, E, SE, S, SW, W, NW; cells already explored are skipped when popped.
PoseExtraction extract_poses_traced(const NavGraph& graph, const PoseConfig& cfg,
                                    std::optional<Cell> start = std::nullopt);

std::vector<PerceptionPose> extract_poses(const NavGraph& graph, const PoseConfig& cfg,
                                          std::optional<Cell> start = std::nullopt);

// "x,y,h,theta" header then one row per pose, 6 decimals.
std::string poses_to_csv(const std::vector<PerceptionPose>& poses);
std::vector<PerceptionPose> csv_to_poses(const std::string& text);

}  // namespace doorkit::nav
