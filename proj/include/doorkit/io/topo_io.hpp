#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "doorkit/topo/topology.hpp"

namespace doorkit::io {

// Doors file: JSON array of
//   {"door_id", "center": [x, y], "rooms": [a, b], "true_status": "open"|"closed"}
std::vector<topo::DoorRecord> parse_doors(const std::string& text);
std::string dump_doors(const std::vector<topo::DoorRecord>& doors);
std::vector<topo::DoorRecord> load_doors(const std::filesystem::path& path);

// Observation log: one JSON object per line,
//   {"image_id", "pose": [x, y, theta], "votes": [{"door_id", "label"}], "in_view"?: [ids]}
// Blank lines are skipped.
std::vector<topo::Observation> parse_observations(const std::string& text);
std::string dump_observations(const std::vector<topo::Observation>& obs);
std::vector<topo::Observation> load_observations(const std::filesystem::path& path);

}  // namespace doorkit::io
