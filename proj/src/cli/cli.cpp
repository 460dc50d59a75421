#include "doorkit/cli/cli.hpp"

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "doorkit/annot/server.hpp"
#include "doorkit/annot/session.hpp"
#include "doorkit/error.hpp"
#include "doorkit/geometry/contours.hpp"
#include "doorkit/geometry/mesh.hpp"
#include "doorkit/geometry/morphology.hpp"
#include "doorkit/geometry/voronoi.hpp"
#include "doorkit/io/dataset.hpp"
#include "doorkit/io/map_io.hpp"
#include "doorkit/io/mesh_io.hpp"
#include "doorkit/io/semantic.hpp"
#include "doorkit/io/topo_io.hpp"
#include "doorkit/metrics/average_precision.hpp"
#include "doorkit/metrics/opi.hpp"
#include "doorkit/nav/nav_graph.hpp"
#include "doorkit/nav/poses.hpp"
#include "doorkit/topo/topology.hpp"

namespace doorkit::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Writes to the named file, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  io::write_file_atomic(path, text);
}

std::string graph_to_csv(const nav::NavGraph& g) {
  std::string s = "row,col,x,y\n";
  for (const auto c : g.cells.cells()) {
    const auto p = g.center(c);
    s += std::to_string(c.row) + "," + std::to_string(c.col) + "," + fixed(p.x, 6) + "," +
         fixed(p.y, 6) + "\n";
  }
  return s;
}

nav::NavGraph graph_from_csv(const std::string& text, const geometry::GridMap& map) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  geometry::CellMask cells(map.width(), map.height());
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line.rfind("row,col", 0) != 0) throw Error("graph csv: expected header row,col,...");
      continue;
    }
    if (line.empty()) continue;
    int r = 0;
    int c = 0;
    char comma = 0;
    std::istringstream ls(line);
    if (!(ls >> r >> comma >> c) || comma != ',') {
      throw Error("graph csv line " + std::to_string(line_no) + ": malformed row");
    }
    if (!cells.in_bounds({r, c})) {
      throw Error("graph csv line " + std::to_string(line_no) + ": cell outside the map");
    }
    cells.set({r, c});
  }
  return nav::NavGraph::on(map, std::move(cells));
}

json opi_json(const metrics::OpiReport& r) {
  return {{"tp_count", r.tp_count}, {"fp_count", r.fp_count}, {"bfd_count", r.bfd_count},
          {"y_bar", r.y_bar},       {"tp_rate", r.tp_rate},   {"fp_rate", r.fp_rate},
          {"bfd_rate", r.bfd_rate}, {"empty_ground_truth", r.empty_ground_truth}};
}

std::vector<double> default_thresholds() {
  std::vector<double> t;
  for (int i = 0; i <= 20; ++i) t.push_back(i / 20.0);
  return t;
}

struct Options {
  // map-from-mesh
  std::string mesh, out;
  geometry::SliceConfig slice;
  int close_radius = 1;
  int inflate_radius = 0;
  bool y_up = false;
  // navgraph / poses
  std::string map, graph;
  double site_separation = 0.3;
  double site_spacing = -1.0;  // < 0: one site per map cell along the contours
  nav::PoseConfig pose;
  std::string accrual = "tree";
  // proposals
  std::vector<std::string> frames;
  std::vector<int> door_classes;
  std::size_t min_area = 20;
  double min_fraction = 0.025;
  std::string label = "open";
  // eval / sweep
  std::string dataset;
  metrics::ApConfig ap;
  std::string ap_mode = "enriched";
  bool no_gate = false;
  bool as_json = false;
  bool dump_config = false;
  std::vector<double> thresholds = default_thresholds();
  // topology
  std::string doors, observations, fallback = "closed";
  topo::ViewConfig view;
  // annotate-serve
  std::string dir, store, host = "127.0.0.1", ui;
  double period = 1.0;
  int port = 8080;
};

int map_from_mesh(const Options& o, std::ostream& out) {
  const auto mesh = io::load_obj(o.mesh, o.y_up);
  const auto raw = geometry::slice_mesh_to_map(mesh, o.slice);
  const auto map = geometry::morph_cleanup(raw, o.close_radius, o.inflate_radius);
  io::save_map(map, o.out);
  out << "map " << map.width() << "x" << map.height() << " resolution=" << map.resolution()
      << " written to " << o.out << "\n";
  return kExitOk;
}

geometry::VoronoiConfig voronoi_config(const Options& o, const geometry::GridMap& map) {
  return {o.site_separation, o.site_spacing < 0.0 ? map.resolution() : o.site_spacing};
}

int navgraph(const Options& o, std::ostream& out) {
  const auto map = io::load_map(o.map);
  const auto graph = nav::compute_nav_graph(map, voronoi_config(o, map));
  emit(o.out, graph_to_csv(graph), out);
  return kExitOk;
}

int poses(const Options& o, std::ostream& out) {
  const auto map = io::load_map(o.map);
  const auto graph = o.graph.empty() ? nav::compute_nav_graph(map, voronoi_config(o, map))
                                     : graph_from_csv(io::read_file(o.graph), map);
  auto cfg = o.pose;
  cfg.accrual = o.accrual == "pop-order" ? nav::DistanceAccrual::kPopOrder
                                         : nav::DistanceAccrual::kTree;
  emit(o.out, nav::poses_to_csv(nav::extract_poses(graph, cfg)), out);
  return kExitOk;
}

int proposals(const Options& o, std::ostream& out) {
  const auto label = parse_door_status(o.label);
  io::DatasetFile d;
  const std::set<int> doors(o.door_classes.begin(), o.door_classes.end());
  for (const auto& file : o.frames) {
    const auto frame = io::frame_from_image(io::read_pgm(file), doors);
    if (!io::passes_door_filter(frame, o.min_fraction)) continue;
    const auto id = fs::path(file).stem().string();
    d.images.push_back({id, fs::path(file).filename().string(), frame.width, frame.height});
    for (const auto& b : io::propose_boxes(frame, o.min_area)) {
      d.annotations.push_back({id, b, *label});
    }
  }
  emit(o.out, io::dump_dataset(d), out);
  return kExitOk;
}

json config_json(const Options& o) {
  return {{"rho_c", o.ap.rho_c},
          {"rho_a", o.ap.rho_a},
          {"ap_mode", o.ap_mode},
          {"gate_confidence", !o.no_gate}};
}

int eval(const Options& o, std::ostream& out) {
  if (o.dump_config) {
    out << config_json(o).dump() << "\n";
    if (o.dataset.empty()) return kExitOk;
  }
  if (o.dataset.empty()) throw Error("eval needs --dataset");
  auto ap_cfg = o.ap;
  ap_cfg.mode = *metrics::parse_ap_mode(o.ap_mode);
  ap_cfg.gate_confidence = !o.no_gate;
  const auto d = io::load_dataset(o.dataset);
  const auto opi = metrics::opi_dataset(d.annotations, d.detections, {o.ap.rho_c, o.ap.rho_a});
  std::optional<metrics::ApReport> ap;
  if (!d.annotations.empty()) ap = metrics::map_score(d.annotations, d.detections, ap_cfg);

  if (o.as_json) {
    json per_class = json::object();
    if (ap) {
      for (const auto& [cls, c] : ap->per_class) {
        json pr = json::array();
        for (const auto& p : c.pr_points) pr.push_back({p.recall, p.precision});
        per_class[std::string(to_string(cls))] = {{"ap", c.ap}, {"ground_truths", c.ground_truths},
                                                  {"pr_points", pr}};
      }
    }
    json j = {{"config", config_json(o)},
              {"ap", {{"per_class", per_class}, {"map", ap ? json(ap->map_score) : json(nullptr)}}},
              {"opi", opi_json(opi)}};
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "rho_c=" << fixed(o.ap.rho_c, 2) << " rho_a=" << fixed(o.ap.rho_a, 2)
      << " ap_mode=" << o.ap_mode << "\n";
  if (ap) {
    for (const DoorStatus cls : {DoorStatus::Open, DoorStatus::Closed}) {
      auto it = ap->per_class.find(cls);
      out << "ap_" << to_string(cls) << "="
          << (it == ap->per_class.end() ? std::string("absent") : fixed(it->second.ap, 4)) << "\n";
    }
    out << "map=" << fixed(ap->map_score, 4) << "\n";
  } else {
    out << "map=undefined (no ground truth)\n";
  }
  out << "tp_rate=" << fixed(opi.tp_rate, 3) << "\n"
      << "fp_rate=" << fixed(opi.fp_rate, 3) << "\n"
      << "bfd_rate=" << fixed(opi.bfd_rate, 3) << "\n"
      << "tp=" << opi.tp_count << " fp=" << opi.fp_count << " bfd=" << opi.bfd_count
      << " y_bar=" << opi.y_bar << (opi.empty_ground_truth ? " (empty ground truth)" : "") << "\n";
  return kExitOk;
}

int sweep(const Options& o, std::ostream& out) {
  const auto d = io::load_dataset(o.dataset);
  auto th = o.thresholds;
  std::sort(th.begin(), th.end());
  const auto series = metrics::confidence_sweep(d.annotations, d.detections, o.ap.rho_a, th);
  if (o.as_json) {
    json j = json::array();
    for (const auto& p : series) j.push_back({{"threshold", p.threshold}, {"opi", opi_json(p.report)}});
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "threshold,tp_rate,fp_rate,bfd_rate,tp_count,fp_count,bfd_count,y_bar\n";
  for (const auto& p : series) {
    const auto& r = p.report;
    out << fixed(p.threshold, 4) << "," << fixed(r.tp_rate, 6) << "," << fixed(r.fp_rate, 6) << ","
        << fixed(r.bfd_rate, 6) << "," << r.tp_count << "," << r.fp_count << "," << r.bfd_count
        << "," << r.y_bar << "\n";
  }
  return kExitOk;
}

int topology(const Options& o, std::ostream& out) {
  const auto doors = io::load_doors(o.doors);
  auto obs = io::load_observations(o.observations);
  if (!o.map.empty()) {
    const auto map = io::load_map(o.map);
    for (auto& ob : obs) {
      for (auto& id : topo::associate(ob.x, ob.y, ob.theta, doors, map, o.view)) {
        if (std::find(ob.in_view.begin(), ob.in_view.end(), id) == ob.in_view.end()) {
          ob.in_view.push_back(std::move(id));
        }
      }
    }
  }
  const auto fallback = *parse_door_status(o.fallback);
  const auto verdicts = topo::majority_vote(doors, obs);
  const double ra = topo::recognition_accuracy(verdicts);
  const auto inferred = topo::build_topology(doors, verdicts, fallback);
  const auto truth = topo::true_topology(doors);
  const auto cmp = topo::compare_topologies(inferred, truth, doors, verdicts, fallback);

  std::map<topo::Outcome, int> tally;
  for (const auto& v : verdicts) ++tally[v.outcome];
  const int correct = tally[topo::Outcome::CorrectOpen] + tally[topo::Outcome::CorrectClosed];

  if (o.as_json) {
    json vj = json::array();
    for (const auto& v : verdicts) {
      vj.push_back({{"door_id", v.door_id},
                    {"open_votes", v.open_votes},
                    {"closed_votes", v.closed_votes},
                    {"outcome", to_string(v.outcome)}});
    }
    auto edges = [](const auto& set) {
      json e = json::array();
      for (const auto& [a, b] : set) e.push_back({a, b});
      return e;
    };
    json j = {{"recognition_accuracy", ra},
              {"counts",
               {{"correct", correct},
                {"wrong", tally[topo::Outcome::WrongStatus]},
                {"undecided", tally[topo::Outcome::Undecided]},
                {"undetected", tally[topo::Outcome::Undetected]},
                {"unobserved", tally[topo::Outcome::Unobserved]},
                {"doors", verdicts.size()}}},
              {"verdicts", vj},
              {"inferred_edges", edges(inferred.edges)},
              {"true_edges", edges(truth.edges)},
              {"edge_precision", cmp.edge_precision},
              {"edge_recall", cmp.edge_recall}};
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "doors=" << verdicts.size() << " correct=" << correct
      << " wrong=" << tally[topo::Outcome::WrongStatus]
      << " undecided=" << tally[topo::Outcome::Undecided]
      << " undetected=" << tally[topo::Outcome::Undetected]
      << " unobserved=" << tally[topo::Outcome::Unobserved] << "\n";
  out << "ra=" << fixed(ra, 2) << "%\n";
  out << "edge_precision=" << fixed(cmp.edge_precision, 4)
      << " edge_recall=" << fixed(cmp.edge_recall, 4) << "\n";
  for (const auto& d : cmp.doors) {
    out << d.door_id << " " << d.rooms.first << "-" << d.rooms.second << " " << to_string(d.outcome)
        << " true=" << to_string(d.true_status) << " used=" << to_string(d.used_status) << "\n";
  }
  return kExitOk;
}

annot::AnnotationServer* g_server = nullptr;

int annotate_serve(const Options& o, std::ostream& out) {
  annot::AnnotationSession session(o.dir, o.period,
                                   o.store.empty() ? std::nullopt : std::optional<fs::path>(o.store));
  annot::AnnotationServer server(session,
                                 o.ui.empty() ? std::nullopt : std::optional<fs::path>(o.ui));
  const int port = server.bind(o.host, o.port);
  if (port < 0) throw Error("cannot bind " + o.host + ":" + std::to_string(o.port));
  out << "serving " << session.frames().size() << " frames from " << o.dir << " on http://"
      << o.host << ":" << port << "\n"
      << std::flush;
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  server.serve();
  g_server = nullptr;
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Door-detection research toolkit: maps, poses, metrics, topology, annotation"};
  app.name("doorkit");
  app.require_subcommand(1);

  auto* mm = app.add_subcommand("map-from-mesh", "Slice a 3D mesh (OBJ) into an occupancy map");
  mm->add_option("--mesh", o.mesh, "Input OBJ mesh")->required();
  mm->add_option("--out", o.out, "Output map sidecar (.yaml); the .pgm goes next to it")->required();
  mm->add_option("--resolution", o.slice.resolution, "Metres per cell")->check(CLI::PositiveNumber);
  mm->add_option("--z-start", o.slice.z_start, "Lowest slicing plane (m)");
  mm->add_option("--z-step", o.slice.z_step, "Plane spacing (m)")->check(CLI::PositiveNumber);
  mm->add_option("--z-end", o.slice.z_end, "Highest slicing plane (m)");
  mm->add_option("--close-radius", o.close_radius, "Closing half-width (cells)")->check(CLI::NonNegativeNumber);
  mm->add_option("--inflate-radius", o.inflate_radius, "Obstacle inflation (cells)")->check(CLI::NonNegativeNumber);
  mm->add_flag("--y-up", o.y_up, "Mesh uses Y as the vertical axis");

  auto add_voronoi = [&](CLI::App* sub) {
    sub->add_option("--site-separation", o.site_separation,
                    "Min distance between same-contour sites that may split a region (m)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--site-spacing", o.site_spacing,
                    "Contour resampling step (m); 0 = vertices only; default = map resolution");
  };

  auto* ng = app.add_subcommand("navgraph", "Compute the navigation graph of a map");
  ng->add_option("--map", o.map, "Map sidecar (.yaml)")->required();
  ng->add_option("--out", o.out, "Output CSV (row,col,x,y); default stdout");
  add_voronoi(ng);

  auto* ps = app.add_subcommand("poses", "Extract perception poses along the navigation graph");
  ps->add_option("--map", o.map, "Map sidecar (.yaml)")->required();
  ps->add_option("--graph", o.graph, "Navigation graph CSV; computed from the map when absent");
  ps->add_option("--distance-d", o.pose.distance_d, "Distance between pose clusters (m)")->check(CLI::PositiveNumber);
  ps->add_option("--h-low", o.pose.h_low, "Low camera height (m)");
  ps->add_option("--h-high", o.pose.h_high, "High camera height (m)");
  ps->add_option("--seed", o.pose.seed, "Seed for the start cell");
  ps->add_option("--accrual", o.accrual, "Distance accrual: tree or pop-order")
      ->check(CLI::IsMember({"tree", "pop-order"}));
  ps->add_option("--out", o.out, "Output CSV; default stdout");
  add_voronoi(ps);

  auto* pr = app.add_subcommand("proposals", "Filter semantic frames and propose door boxes");
  pr->add_option("--frames", o.frames, "Semantic frames (PGM, pixel value = class id)")->required();
  pr->add_option("--door-class", o.door_classes, "Class ids meaning door")->required()->delimiter(',');
  pr->add_option("--min-area", o.min_area, "Smallest component kept (pixels)");
  pr->add_option("--min-fraction", o.min_fraction, "Smallest door-pixel share of a kept frame")
      ->check(CLI::Range(0.0, 1.0));
  pr->add_option("--label", o.label, "Placeholder label of proposed boxes")
      ->check(CLI::IsMember({"open", "closed"}));
  pr->add_option("--out", o.out, "Output dataset JSON; default stdout");

  auto add_metric = [&](CLI::App* sub) {
    sub->add_option("--rho-a", o.ap.rho_a, "IoU threshold")->check(CLI::Range(0.0, 1.0));
    sub->add_flag("--json", o.as_json, "Machine-readable output");
  };

  auto* ev = app.add_subcommand("eval", "AP/mAP and operational performance indicators");
  ev->add_option("--dataset", o.dataset, "Dataset JSON with annotations and detections");
  ev->add_option("--rho-c", o.ap.rho_c, "Confidence threshold")->check(CLI::Range(0.0, 1.0));
  ev->add_option("--ap-mode", o.ap_mode, "voc11 or enriched")->check(CLI::IsMember({"voc11", "enriched"}));
  ev->add_flag("--no-gate", o.no_gate, "Rank all detections for AP instead of those >= rho_c");
  ev->add_flag("--dump-config", o.dump_config, "Print the effective metric configuration");
  add_metric(ev);

  auto* sw = app.add_subcommand("sweep", "Indicators over a range of confidence thresholds");
  sw->add_option("--dataset", o.dataset, "Dataset JSON")->required();
  sw->add_option("--thresholds", o.thresholds, "Confidence thresholds")->delimiter(',');
  add_metric(sw);

  auto* tp = app.add_subcommand("topology", "Door status voting, recognition accuracy, room graph");
  tp->add_option("--doors", o.doors, "Doors JSON")->required();
  tp->add_option("--observations", o.observations, "Observation log (JSON lines)")->required();
  tp->add_option("--map", o.map, "Map sidecar; enables field-of-view association");
  tp->add_option("--fov", o.view.fov, "Field of view (rad)")->check(CLI::Range(1e-9, 2 * std::numbers::pi));
  tp->add_option("--max-range", o.view.max_range, "Association range (m)")->check(CLI::PositiveNumber);
  tp->add_option("--fallback", o.fallback, "Status of doors without a majority")
      ->check(CLI::IsMember({"open", "closed"}));
  tp->add_flag("--json", o.as_json, "Machine-readable output");

  auto* as = app.add_subcommand("annotate-serve", "Serve the annotation API over an image directory");
  as->add_option("--dir", o.dir, "Directory of <milliseconds>.<ext> images")->required();
  as->add_option("--period", o.period, "Sampling period (s)")->check(CLI::NonNegativeNumber);
  as->add_option("--port", o.port, "TCP port (0 = any)");
  as->add_option("--store", o.store, "Annotation store file; default <dir>/annotations.json");
  as->add_option("--host", o.host, "Bind address");
  as->add_option("--ui", o.ui, "Directory of static UI files served at /");

  std::vector<std::string> argv_store{"doorkit"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "doorkit: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*mm) return map_from_mesh(o, out);
    if (*ng) return navgraph(o, out);
    if (*ps) return poses(o, out);
    if (*pr) return proposals(o, out);
    if (*ev) return eval(o, out);
    if (*sw) return sweep(o, out);
    if (*tp) return topology(o, out);
    if (*as) return annotate_serve(o, out);
  } catch (const Error& e) {
    err << "doorkit: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}

}  // namespace doorkit::cli
