#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "doorkit/geometry/grid_map.hpp"
#include "doorkit/metrics/types.hpp"

namespace doorkit::topo {

struct DoorRecord {
  std::string door_id;
  geometry::Point2 center;
  std::pair<std::string, std::string> rooms;
  DoorStatus true_status = DoorStatus::Closed;

  friend bool operator==(const DoorRecord&, const DoorRecord&) = default;
};

struct Vote {
  std::string door_id;
  DoorStatus label = DoorStatus::Open;

  friend bool operator==(const Vote&, const Vote&) = default;
};

struct Observation {
  std::string image_id;
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  std::vector<Vote> votes;
  // Doors inside the field of view; doors with votes count as seen regardless.
  std::vector<std::string> in_view;

  friend bool operator==(const Observation&, const Observation&) = default;
};

enum class Outcome { CorrectOpen, CorrectClosed, WrongStatus, Undecided, Undetected, Unobserved };

std::string_view to_string(Outcome o);

struct DoorVerdict {
  std::string door_id;
  int open_votes = 0;
  int closed_votes = 0;
  Outcome outcome = Outcome::Unobserved;
  // Majority label when one exists.
  std::optional<DoorStatus> inferred;
};

struct ViewConfig {
  double fov = 1.5707963267948966;  // radians
  double max_range = 5.0;           // metres
};

/// Doors within max_range, within +-fov/2 of the heading, and with a line of
/// sight (supercover ray) free of blocked cells. Cells off the map block.
std::vector<std::string> associate(double x, double y, double theta,
                                   const std::vector<DoorRecord>& doors,
                                   const geometry::GridMap& map, const ViewConfig& cfg);

// Fills every observation's in_view list from its pose.
void compute_in_view(std::vector<Observation>& observations, const std::vector<DoorRecord>& doors,
                     const geometry::GridMap& map, const ViewConfig& cfg);

/// Per-door tally and outcome. Equal non-zero tallies are Undecided; doors seen
/// but never voted for are Undetected; doors never seen are Unobserved.
std::vector<DoorVerdict> majority_vote(const std::vector<DoorRecord>& doors,
                                       const std::vector<Observation>& observations);

// Share of doors whose status the vote recovered, in percent.
double recognition_accuracy(const std::vector<DoorVerdict>& verdicts);

struct TopologyGraph {
  std::set<std::string> nodes;
  std::set<std::pair<std::string, std::string>> edges;  // (a, b) with a < b

  friend bool operator==(const TopologyGraph&, const TopologyGraph&) = default;
};

// Rooms joined by at least one door whose status is inferred open. Doors
// without a majority use `fallback`.
TopologyGraph build_topology(const std::vector<DoorRecord>& doors,
                             const std::vector<DoorVerdict>& verdicts,
                             DoorStatus fallback = DoorStatus::Closed);

// Topology implied by the doors' true statuses.
TopologyGraph true_topology(const std::vector<DoorRecord>& doors);

struct DoorDiff {
  std::string door_id;
  std::pair<std::string, std::string> rooms;
  Outcome outcome = Outcome::Unobserved;
  DoorStatus true_status = DoorStatus::Closed;
  DoorStatus used_status = DoorStatus::Closed;  // status the topology was built with
};

struct TopologyComparison {
  double edge_precision = 1.0;  // 1 when nothing was inferred
  double edge_recall = 1.0;     // 1 when nothing is open
  std::vector<std::pair<std::string, std::string>> missing_edges;
  std::vector<std::pair<std::string, std::string>> spurious_edges;
  std::vector<DoorDiff> doors;
};

TopologyComparison compare_topologies(const TopologyGraph& inferred, const TopologyGraph& truth);

TopologyComparison compare_topologies(const TopologyGraph& inferred, const TopologyGraph& truth,
                                      const std::vector<DoorRecord>& doors,
                                      const std::vector<DoorVerdict>& verdicts,
                                      DoorStatus fallback = DoorStatus::Closed);

}  // namespace doorkit::topo
