#include "doorkit/topo/topology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <unordered_map>

#include "doorkit/error.hpp"
#include "doorkit/geometry/raster.hpp"

namespace doorkit::topo {

namespace {

std::pair<std::string, std::string> ordered(const std::pair<std::string, std::string>& p) {
  return p.first < p.second ? p : std::make_pair(p.second, p.first);
}

double wrap_angle(double a) {
  a = std::fmod(a + std::numbers::pi, 2.0 * std::numbers::pi);
  if (a < 0) a += 2.0 * std::numbers::pi;
  return a - std::numbers::pi;
}

}  // namespace

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::CorrectOpen: return "correct_open";
    case Outcome::CorrectClosed: return "correct_closed";
    case Outcome::WrongStatus: return "wrong_status";
    case Outcome::Undecided: return "undecided";
    case Outcome::Undetected: return "undetected";
    case Outcome::Unobserved: return "unobserved";
  }
  return "unknown";
}

std::vector<std::string> associate(double x, double y, double theta,
                                   const std::vector<DoorRecord>& doors,
                                   const geometry::GridMap& map, const ViewConfig& cfg) {
  if (!(cfg.fov > 0.0 && cfg.fov <= 2.0 * std::numbers::pi + 1e-12)) {
    throw Error("fov must lie in (0, 2*pi]");
  }
  if (!(cfg.max_range > 0.0)) throw Error("max_range must be positive");
  const geometry::Point2 eye{x, y};
  const auto eye_cell = map.world_to_cell(eye);
  std::vector<std::string> out;
  for (const auto& d : doors) {
    const double dx = d.center.x - x;
    const double dy = d.center.y - y;
    if (std::hypot(dx, dy) > cfg.max_range) continue;
    if (dx != 0.0 || dy != 0.0) {
      const double off = std::abs(wrap_angle(std::atan2(dy, dx) - theta));
      if (off > cfg.fov / 2.0 + 1e-12) continue;
    }
    const auto door_cell = map.world_to_cell(d.center);
    if (!eye_cell || !door_cell) continue;
    bool clear = true;
    for (const auto c : geometry::supercover(map, eye, d.center)) {
      // Doors sit in wall gaps; the door's own cell does not occlude it.
      if (c == *door_cell) continue;
      if (map.is_blocked(c)) {
        clear = false;
        break;
      }
    }
    if (clear) out.push_back(d.door_id);
  }
  return out;
}

void compute_in_view(std::vector<Observation>& observations, const std::vector<DoorRecord>& doors,
                     const geometry::GridMap& map, const ViewConfig& cfg) {
  for (auto& o : observations) o.in_view = associate(o.x, o.y, o.theta, doors, map, cfg);
}

std::vector<DoorVerdict> majority_vote(const std::vector<DoorRecord>& doors,
                                       const std::vector<Observation>& observations) {
  std::unordered_map<std::string, std::size_t> index;
  std::vector<DoorVerdict> out;
  std::vector<bool> seen(doors.size(), false);
  for (std::size_t i = 0; i < doors.size(); ++i) {
    if (!index.emplace(doors[i].door_id, i).second) {
      throw Error("duplicate door id: " + doors[i].door_id);
    }
    out.push_back({doors[i].door_id, 0, 0, Outcome::Unobserved, std::nullopt});
  }
  std::vector<std::string> unknown;
  auto lookup = [&](const std::string& id) -> std::optional<std::size_t> {
    auto it = index.find(id);
    if (it == index.end()) {
      if (std::find(unknown.begin(), unknown.end(), id) == unknown.end()) unknown.push_back(id);
      return std::nullopt;
    }
    return it->second;
  };
  for (const auto& o : observations) {
    for (const auto& v : o.votes) {
      if (auto i = lookup(v.door_id)) {
        seen[*i] = true;
        (v.label == DoorStatus::Open ? out[*i].open_votes : out[*i].closed_votes)++;
      }
    }
    for (const auto& id : o.in_view) {
      if (auto i = lookup(id)) seen[*i] = true;
    }
  }
  if (!unknown.empty()) {
    std::string msg = "unknown door id(s):";
    for (const auto& id : unknown) msg += " " + id;
    throw Error(msg);
  }
  for (std::size_t i = 0; i < doors.size(); ++i) {
    auto& v = out[i];
    if (v.open_votes == 0 && v.closed_votes == 0) {
      v.outcome = seen[i] ? Outcome::Undetected : Outcome::Unobserved;
    } else if (v.open_votes == v.closed_votes) {
      v.outcome = Outcome::Undecided;
    } else {
      v.inferred = v.open_votes > v.closed_votes ? DoorStatus::Open : DoorStatus::Closed;
      if (*v.inferred != doors[i].true_status) {
        v.outcome = Outcome::WrongStatus;
      } else {
        v.outcome = *v.inferred == DoorStatus::Open ? Outcome::CorrectOpen : Outcome::CorrectClosed;
      }
    }
  }
  return out;
}

double recognition_accuracy(const std::vector<DoorVerdict>& verdicts) {
  if (verdicts.empty()) throw Error("empty door set");
  const auto correct = std::count_if(verdicts.begin(), verdicts.end(), [](const auto& v) {
    return v.outcome == Outcome::CorrectOpen || v.outcome == Outcome::CorrectClosed;
  });
  return 100.0 * static_cast<double>(correct) / static_cast<double>(verdicts.size());
}

namespace {

DoorStatus used_status(const DoorVerdict& v, DoorStatus fallback) {
  return v.inferred.value_or(fallback);
}

const DoorVerdict& verdict_for(const std::vector<DoorVerdict>& verdicts, const std::string& id) {
  auto it = std::find_if(verdicts.begin(), verdicts.end(),
                         [&](const DoorVerdict& v) { return v.door_id == id; });
  if (it == verdicts.end()) throw Error("no verdict for door " + id);
  return *it;
}

}  // namespace

TopologyGraph build_topology(const std::vector<DoorRecord>& doors,
                             const std::vector<DoorVerdict>& verdicts, DoorStatus fallback) {
  TopologyGraph g;
  for (const auto& d : doors) {
    g.nodes.insert(d.rooms.first);
    g.nodes.insert(d.rooms.second);
    if (used_status(verdict_for(verdicts, d.door_id), fallback) == DoorStatus::Open) {
      g.edges.insert(ordered(d.rooms));
    }
  }
  return g;
}

TopologyGraph true_topology(const std::vector<DoorRecord>& doors) {
  TopologyGraph g;
  for (const auto& d : doors) {
    g.nodes.insert(d.rooms.first);
    g.nodes.insert(d.rooms.second);
    if (d.true_status == DoorStatus::Open) g.edges.insert(ordered(d.rooms));
  }
  return g;
}

TopologyComparison compare_topologies(const TopologyGraph& inferred, const TopologyGraph& truth) {
  if (inferred.nodes != truth.nodes) throw Error("topologies have different room sets");
  TopologyComparison c;
  std::size_t hit = 0;
  for (const auto& e : inferred.edges) {
    if (truth.edges.count(e)) ++hit;
    else c.spurious_edges.push_back(e);
  }
  for (const auto& e : truth.edges) {
    if (!inferred.edges.count(e)) c.missing_edges.push_back(e);
  }
  if (!inferred.edges.empty()) c.edge_precision = static_cast<double>(hit) / inferred.edges.size();
  if (!truth.edges.empty()) c.edge_recall = static_cast<double>(hit) / truth.edges.size();
  return c;
}

TopologyComparison compare_topologies(const TopologyGraph& inferred, const TopologyGraph& truth,
                                      const std::vector<DoorRecord>& doors,
                                      const std::vector<DoorVerdict>& verdicts,
                                      DoorStatus fallback) {
  auto c = compare_topologies(inferred, truth);
  for (const auto& d : doors) {
    const auto& v = verdict_for(verdicts, d.door_id);
    c.doors.push_back({d.door_id, d.rooms, v.outcome, d.true_status, used_status(v, fallback)});
  }
  return c;
}

}  // namespace doorkit::topo
