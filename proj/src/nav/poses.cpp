#include "doorkit/nav/poses.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "doorkit/error.hpp"

namespace doorkit::nav {

namespace {

void validate(const PoseConfig& cfg) {
  if (!(cfg.distance_d > 0.0)) throw Error("distance D must be positive");
  if (!(cfg.h_low < cfg.h_high)) throw Error("h_low must be below h_high");
}

}  // namespace

PoseExtraction extract_poses_traced(const NavGraph& graph, const PoseConfig& cfg,
                                    std::optional<Cell> start) {
  validate(cfg);
  const auto cells = graph.cells.cells();
  if (cells.empty()) throw Error("empty navigation graph");

  PoseExtraction out;
  if (start) {
    if (!graph.cells.test(*start)) throw Error("start cell is not part of the graph");
    out.start = *start;
  } else {
    std::mt19937_64 gen(cfg.seed);
    out.start = cells[gen() % cells.size()];
  }

  struct Entry {
    Cell cell;
    Cell parent;
  };
  CellMask explored(graph.cells.width(), graph.cells.height());
  std::vector<Entry> stack{{out.start, out.start}};
  Cell cur = out.start;
  double d = 0.0;
  auto step = [&](Cell a, Cell b) {
    const auto pa = graph.center(a);
    const auto pb = graph.center(b);
    return std::hypot(pa.x - pb.x, pa.y - pb.y);
  };

  while (!stack.empty()) {
    const Entry e = stack.back();
    stack.pop_back();
    if (explored.test(e.cell)) continue;
    explored.set(e.cell);

    const double inc = cfg.accrual == DistanceAccrual::kTree ? step(e.parent, e.cell)
                                                             : step(cur, e.cell);
    d += inc;
    cur = e.cell;
    WalkStep ws{e.cell, inc, false};
    if (d >= cfg.distance_d) {
      const auto p = graph.center(e.cell);
      for (const double h : {cfg.h_high, cfg.h_low}) {
        for (int i = 0; i < 8; ++i) {
          out.poses.push_back({p.x, p.y, h, std::numbers::pi * i / 4.0});
        }
      }
      d = 0.0;
      ws.emitted = true;
    }
    out.steps.push_back(ws);

    for (const auto& n : geometry::kNeighbors8) {
      const Cell m{e.cell.row + n.row, e.cell.col + n.col};
      if (graph.cells.test(m) && !explored.test(m)) stack.push_back({m, e.cell});
    }
  }
  return out;
}

std::vector<PerceptionPose> extract_poses(const NavGraph& graph, const PoseConfig& cfg,
                                          std::optional<Cell> start) {
  return extract_poses_traced(graph, cfg, start).poses;
}

std::string poses_to_csv(const std::vector<PerceptionPose>& poses) {
  std::string out = "x,y,h,theta\n";
  char buf[160];
  for (const auto& p : poses) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f\n", p.x, p.y, p.h, p.theta);
    out += buf;
  }
  return out;
}

std::vector<PerceptionPose> csv_to_poses(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<PerceptionPose> out;
  auto fail = [&](const std::string& why) {
    throw Error("pose csv line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "x,y,h,theta") fail("expected header \"x,y,h,theta\"");
      continue;
    }
    if (line.empty()) continue;
    double v[4];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int k = 0; k < 4; ++k) {
      auto [next, ec] = std::from_chars(p, end, v[k]);
      if (ec != std::errc{} || !std::isfinite(v[k])) fail("malformed number");
      p = next;
      if (k < 3) {
        if (p == end || *p != ',') fail("expected 4 comma-separated fields");
        ++p;
      }
    }
    if (p != end) fail("trailing characters");
    out.push_back({v[0], v[1], v[2], v[3]});
  }
  if (line_no == 0) fail("missing header");
  return out;
}

}  // namespace doorkit::nav
