#include "doorkit/io/topo_io.hpp"

#include <sstream>

#include "doorkit/error.hpp"
#include "doorkit/io/dataset.hpp"
#include "doorkit/io/map_io.hpp"

namespace doorkit::io {

using nlohmann::json;

std::vector<topo::DoorRecord> parse_doors(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("$", std::string("invalid JSON: ") + e.what());
  }
  require_array(j, "$");
  std::vector<topo::DoorRecord> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string p = "[" + std::to_string(k) + "]";
    const auto& d = j[k];
    require_keys(d, p, {"door_id", "center", "rooms", "true_status"});
    topo::DoorRecord rec;
    rec.door_id = require_string(d["door_id"], p + ".door_id");
    const auto& c = d["center"];
    if (!c.is_array() || c.size() != 2) throw SchemaError(p + ".center", "expected [x, y]");
    rec.center = {require_number(c[0], p + ".center[0]"), require_number(c[1], p + ".center[1]")};
    const auto& r = d["rooms"];
    if (!r.is_array() || r.size() != 2) throw SchemaError(p + ".rooms", "expected [a, b]");
    rec.rooms = {require_string(r[0], p + ".rooms[0]"), require_string(r[1], p + ".rooms[1]")};
    if (rec.rooms.first == rec.rooms.second) throw SchemaError(p + ".rooms", "rooms must differ");
    rec.true_status = require_label(d["true_status"], p + ".true_status");
    out.push_back(std::move(rec));
  }
  return out;
}

std::string dump_doors(const std::vector<topo::DoorRecord>& doors) {
  json j = json::array();
  for (const auto& d : doors) {
    j.push_back({{"door_id", d.door_id},
                 {"center", {d.center.x, d.center.y}},
                 {"rooms", {d.rooms.first, d.rooms.second}},
                 {"true_status", to_string(d.true_status)}});
  }
  return j.dump(2) + "\n";
}

std::vector<topo::DoorRecord> load_doors(const std::filesystem::path& path) {
  return parse_doors(read_file(path));
}

std::vector<topo::Observation> parse_observations(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<topo::Observation> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string p = "line " + std::to_string(line_no);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw SchemaError(p, std::string("invalid JSON: ") + e.what());
    }
    require_keys(j, p, {"image_id", "pose", "votes"}, {"in_view"});
    topo::Observation o;
    o.image_id = require_string(j["image_id"], p + ".image_id");
    const auto& pose = j["pose"];
    if (!pose.is_array() || pose.size() != 3) throw SchemaError(p + ".pose", "expected [x, y, theta]");
    o.x = require_number(pose[0], p + ".pose[0]");
    o.y = require_number(pose[1], p + ".pose[1]");
    o.theta = require_number(pose[2], p + ".pose[2]");
    const auto& votes = require_array(j["votes"], p + ".votes");
    for (std::size_t k = 0; k < votes.size(); ++k) {
      const std::string vp = p + ".votes[" + std::to_string(k) + "]";
      require_keys(votes[k], vp, {"door_id", "label"});
      o.votes.push_back({require_string(votes[k]["door_id"], vp + ".door_id"),
                         require_label(votes[k]["label"], vp + ".label")});
    }
    if (j.contains("in_view")) {
      const auto& iv = require_array(j["in_view"], p + ".in_view");
      for (std::size_t k = 0; k < iv.size(); ++k) {
        o.in_view.push_back(require_string(iv[k], p + ".in_view[" + std::to_string(k) + "]"));
      }
    }
    out.push_back(std::move(o));
  }
  return out;
}

std::string dump_observations(const std::vector<topo::Observation>& obs) {
  std::string out;
  for (const auto& o : obs) {
    json votes = json::array();
    for (const auto& v : o.votes) votes.push_back({{"door_id", v.door_id}, {"label", to_string(v.label)}});
    json j = {{"image_id", o.image_id}, {"pose", {o.x, o.y, o.theta}}, {"votes", votes}};
    if (!o.in_view.empty()) j["in_view"] = o.in_view;
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<topo::Observation> load_observations(const std::filesystem::path& path) {
  return parse_observations(read_file(path));
}

}  // namespace doorkit::io
