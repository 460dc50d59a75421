// Python module exposing the core operations of the library.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "doorkit/error.hpp"
#include "doorkit/geometry/grid_map.hpp"
#include "doorkit/geometry/voronoi.hpp"
#include "doorkit/io/dataset.hpp"
#include "doorkit/io/map_io.hpp"
#include "doorkit/io/semantic.hpp"
#include "doorkit/io/topo_io.hpp"
#include "doorkit/metrics/average_precision.hpp"
#include "doorkit/metrics/opi.hpp"
#include "doorkit/nav/nav_graph.hpp"
#include "doorkit/nav/poses.hpp"
#include "doorkit/topo/topology.hpp"

namespace py = pybind11;
using namespace doorkit;

namespace {

using geometry::Cell;
using geometry::CellMask;
using geometry::GridMap;

std::vector<std::pair<int, int>> cells_of(const CellMask& m) {
  std::vector<std::pair<int, int>> out;
  for (const auto c : m.cells()) out.emplace_back(c.row, c.col);
  return out;
}

nav::NavGraph graph_from_cells(const GridMap& map, const std::vector<std::pair<int, int>>& cells) {
  CellMask m(map.width(), map.height());
  for (const auto& [r, c] : cells) {
    if (!map.in_bounds({r, c})) throw Error("graph cell outside the map");
    m.set({r, c});
  }
  return nav::NavGraph::on(map, std::move(m));
}

py::dict report_dict(const metrics::OpiReport& r) {
  py::dict d;
  d["tp_count"] = r.tp_count;
  d["fp_count"] = r.fp_count;
  d["bfd_count"] = r.bfd_count;
  d["y_bar"] = r.y_bar;
  d["tp_rate"] = r.tp_rate;
  d["fp_rate"] = r.fp_rate;
  d["bfd_rate"] = r.bfd_rate;
  return d;
}

metrics::ApMode mode_from(const std::string& s) {
  const auto m = metrics::parse_ap_mode(s);
  if (!m) throw Error("unknown ap mode \"" + s + "\"");
  return *m;
}

}  // namespace

PYBIND11_MODULE(_doorkit, m) {
  m.doc() = "Door detection toolkit: maps, navigation poses, metrics, topology.";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<NotFoundError>(m, "NotFoundError", error.ptr());
  py::register_exception<SchemaError>(m, "SchemaError", error.ptr());

  py::enum_<DoorStatus>(m, "DoorStatus")
      .value("OPEN", DoorStatus::Open)
      .value("CLOSED", DoorStatus::Closed);

  py::enum_<geometry::CellState>(m, "CellState")
      .value("FREE", geometry::CellState::Free)
      .value("OBSTACLE", geometry::CellState::Obstacle)
      .value("UNKNOWN", geometry::CellState::Unknown);

  // ---------------------------------------------------------------- boxes

  py::class_<metrics::Box>(m, "Box")
      .def(py::init<double, double, double, double>(), py::arg("x"), py::arg("y"), py::arg("w"), py::arg("h"))
      .def_readwrite("x", &metrics::Box::x)
      .def_readwrite("y", &metrics::Box::y)
      .def_readwrite("w", &metrics::Box::w)
      .def_readwrite("h", &metrics::Box::h)
      .def("__eq__", [](const metrics::Box& a, const metrics::Box& b) { return a == b; })
      .def("__repr__", [](const metrics::Box& b) {
        return "Box(" + py::repr(py::float_(b.x)).cast<std::string>() + ", " +
               py::repr(py::float_(b.y)).cast<std::string>() + ", " +
               py::repr(py::float_(b.w)).cast<std::string>() + ", " +
               py::repr(py::float_(b.h)).cast<std::string>() + ")";
      });

  py::class_<metrics::GroundTruthBox>(m, "GroundTruthBox")
      .def(py::init([](std::string image_id, metrics::Box box, DoorStatus label) {
             return metrics::GroundTruthBox{std::move(image_id), box, label};
           }),
           py::arg("image_id"), py::arg("box"), py::arg("label"))
      .def_readwrite("image_id", &metrics::GroundTruthBox::image_id)
      .def_readwrite("box", &metrics::GroundTruthBox::box)
      .def_readwrite("label", &metrics::GroundTruthBox::label)
      .def("__eq__", [](const metrics::GroundTruthBox& a, const metrics::GroundTruthBox& b) { return a == b; });

  py::class_<metrics::Detection>(m, "Detection")
      .def(py::init([](std::string image_id, metrics::Box box, DoorStatus label, double confidence) {
             return metrics::Detection{std::move(image_id), box, label, confidence};
           }),
           py::arg("image_id"), py::arg("box"), py::arg("label"), py::arg("confidence"))
      .def_readwrite("image_id", &metrics::Detection::image_id)
      .def_readwrite("box", &metrics::Detection::box)
      .def_readwrite("label", &metrics::Detection::label)
      .def_readwrite("confidence", &metrics::Detection::confidence)
      .def("__eq__", [](const metrics::Detection& a, const metrics::Detection& b) { return a == b; });

  m.def("iou", &metrics::iou, py::arg("a"), py::arg("b"));

  // -------------------------------------------------------------- metrics

  m.def(
      "opi_image",
      [](const std::vector<metrics::GroundTruthBox>& gts, const std::vector<metrics::Detection>& dets,
         double rho_c, double rho_a) {
        const auto r = metrics::opi_image(gts, dets, {rho_c, rho_a});
        py::dict d;
        d["tp"] = r.tp;
        d["fp"] = r.fp;
        d["bfd"] = r.bfd;
        d["discarded"] = r.discarded;
        return d;
      },
      py::arg("ground_truths"), py::arg("detections"), py::arg("rho_c") = 0.75, py::arg("rho_a") = 0.5,
      "Detection indices classified as TP, FP, BFD and discarded for one image.");

  m.def(
      "opi",
      [](const std::vector<metrics::GroundTruthBox>& gts, const std::vector<metrics::Detection>& dets,
         double rho_c, double rho_a) { return report_dict(metrics::opi_dataset(gts, dets, {rho_c, rho_a})); },
      py::arg("ground_truths"), py::arg("detections"), py::arg("rho_c") = 0.75, py::arg("rho_a") = 0.5);

  m.def(
      "confidence_sweep",
      [](const std::vector<metrics::GroundTruthBox>& gts, const std::vector<metrics::Detection>& dets,
         const std::vector<double>& thresholds, double rho_a) {
        py::list out;
        for (const auto& p : metrics::confidence_sweep(gts, dets, rho_a, thresholds)) {
          auto d = report_dict(p.report);
          d["threshold"] = p.threshold;
          out.append(d);
        }
        return out;
      },
      py::arg("ground_truths"), py::arg("detections"), py::arg("thresholds"), py::arg("rho_a") = 0.5);

  m.def(
      "average_precision",
      [](const std::vector<metrics::GroundTruthBox>& gts, const std::vector<metrics::Detection>& dets,
         DoorStatus cls, double rho_a, double rho_c, const std::string& mode,
         bool gate_confidence) -> std::optional<double> {
        const auto r = metrics::average_precision(gts, dets, cls, {rho_a, rho_c, mode_from(mode), gate_confidence});
        if (!r) return std::nullopt;
        return r->ap;
      },
      py::arg("ground_truths"), py::arg("detections"), py::arg("label"), py::arg("rho_a") = 0.5,
      py::arg("rho_c") = 0.75, py::arg("mode") = "enriched", py::arg("gate_confidence") = true,
      "AP of one class, or None when the class has no ground truth.");

  m.def(
      "map_score",
      [](const std::vector<metrics::GroundTruthBox>& gts, const std::vector<metrics::Detection>& dets,
         double rho_a, double rho_c, const std::string& mode, bool gate_confidence) {
        const auto r = metrics::map_score(gts, dets, {rho_a, rho_c, mode_from(mode), gate_confidence});
        py::dict per_class;
        for (const auto& [cls, ap] : r.per_class) per_class[py::str(std::string(to_string(cls)))] = ap.ap;
        py::dict d;
        d["per_class"] = per_class;
        d["map"] = r.map_score;
        return d;
      },
      py::arg("ground_truths"), py::arg("detections"), py::arg("rho_a") = 0.5, py::arg("rho_c") = 0.75,
      py::arg("mode") = "enriched", py::arg("gate_confidence") = true);

  // ------------------------------------------------------------ datasets

  py::class_<io::ImageInfo>(m, "ImageInfo")
      .def(py::init([](std::string id, std::string file, int w, int h) {
             return io::ImageInfo{std::move(id), std::move(file), w, h};
           }),
           py::arg("image_id"), py::arg("file_name"), py::arg("width"), py::arg("height"))
      .def_readwrite("image_id", &io::ImageInfo::image_id)
      .def_readwrite("file_name", &io::ImageInfo::file_name)
      .def_readwrite("width", &io::ImageInfo::width)
      .def_readwrite("height", &io::ImageInfo::height);

  py::class_<io::DatasetFile>(m, "Dataset")
      .def(py::init<>())
      .def_readwrite("images", &io::DatasetFile::images)
      .def_readwrite("annotations", &io::DatasetFile::annotations)
      .def_readwrite("detections", &io::DatasetFile::detections)
      .def("__eq__", [](const io::DatasetFile& a, const io::DatasetFile& b) { return a == b; })
      .def("dumps", &io::dump_dataset)
      .def_static("loads", &io::parse_dataset, py::arg("text"));

  m.def("load_dataset", &io::load_dataset, py::arg("path"));
  m.def("save_dataset", &io::save_dataset, py::arg("dataset"), py::arg("path"));

  m.def(
      "propose_boxes",
      [](const std::vector<std::vector<int>>& classes, const std::set<int>& door_classes, std::size_t min_area) {
        io::SemanticFrame f;
        f.height = static_cast<int>(classes.size());
        f.width = classes.empty() ? 0 : static_cast<int>(classes[0].size());
        for (const auto& row : classes) {
          if (static_cast<int>(row.size()) != f.width) throw Error("ragged class image");
          f.class_of.insert(f.class_of.end(), row.begin(), row.end());
        }
        f.door_class_ids = door_classes;
        return io::propose_boxes(f, min_area);
      },
      py::arg("classes"), py::arg("door_classes"), py::arg("min_area") = 20,
      "Bounding boxes of the 4-connected door components of a class image.");

  // ---------------------------------------------------------------- maps

  py::class_<GridMap>(m, "GridMap")
      .def(py::init([](int w, int h, double res, double ox, double oy) { return GridMap(w, h, res, ox, oy); }),
           py::arg("width"), py::arg("height"), py::arg("resolution"), py::arg("origin_x") = 0.0,
           py::arg("origin_y") = 0.0)
      .def_property_readonly("width", &GridMap::width)
      .def_property_readonly("height", &GridMap::height)
      .def_property_readonly("resolution", &GridMap::resolution)
      .def_property_readonly("origin", [](const GridMap& g) { return std::pair{g.origin_x(), g.origin_y()}; })
      .def("__getitem__",
           [](const GridMap& g, std::pair<int, int> rc) {
             if (!g.in_bounds({rc.first, rc.second})) throw py::index_error("cell outside the map");
             return g.at({rc.first, rc.second});
           })
      .def("__setitem__",
           [](GridMap& g, std::pair<int, int> rc, geometry::CellState s) {
             if (!g.in_bounds({rc.first, rc.second})) throw py::index_error("cell outside the map");
             g.set({rc.first, rc.second}, s);
           })
      .def("cell_center",
           [](const GridMap& g, int row, int col) {
             const auto p = g.cell_center({row, col});
             return std::pair{p.x, p.y};
           })
      .def("__eq__", [](const GridMap& a, const GridMap& b) { return a == b; });

  m.def("load_map", &io::load_map, py::arg("sidecar"));
  m.def("save_map", &io::save_map, py::arg("map"), py::arg("sidecar"));

  // ----------------------------------------------------------- navigation

  m.def(
      "nav_graph",
      [](const GridMap& map, double site_separation, std::optional<double> site_spacing) {
        const double spacing = site_spacing.value_or(map.resolution());
        return cells_of(nav::compute_nav_graph(map, {site_separation, spacing}).cells);
      },
      py::arg("map"), py::arg("site_separation") = 0.3, py::arg("site_spacing") = py::none(),
      "Navigation graph cells as (row, col) pairs. Site spacing defaults to the map resolution.");

  m.def(
      "extract_poses",
      [](const GridMap& map, const std::vector<std::pair<int, int>>& cells, double distance_d, double h_low,
         double h_high, std::uint64_t seed, std::optional<std::pair<int, int>> start) {
        nav::PoseConfig cfg;
        cfg.distance_d = distance_d;
        cfg.h_low = h_low;
        cfg.h_high = h_high;
        cfg.seed = seed;
        std::optional<Cell> s;
        if (start) s = Cell{start->first, start->second};
        py::list out;
        for (const auto& p : nav::extract_poses(graph_from_cells(map, cells), cfg, s)) {
          out.append(py::make_tuple(p.x, p.y, p.h, p.theta));
        }
        return out;
      },
      py::arg("map"), py::arg("cells"), py::arg("distance_d") = 1.0, py::arg("h_low") = 0.1,
      py::arg("h_high") = 0.7, py::arg("seed") = 0, py::arg("start") = py::none(),
      "Perception poses (x, y, h, theta) along the given graph cells.");

  // ------------------------------------------------------------- topology

  m.def(
      "door_verdicts",
      [](const std::string& doors_json, const std::string& observations_jsonl) {
        const auto doors = io::parse_doors(doors_json);
        const auto verdicts = topo::majority_vote(doors, io::parse_observations(observations_jsonl));
        py::dict d;
        py::list rows;
        for (const auto& v : verdicts) {
          py::dict r;
          r["door_id"] = v.door_id;
          r["open_votes"] = v.open_votes;
          r["closed_votes"] = v.closed_votes;
          r["outcome"] = std::string(topo::to_string(v.outcome));
          rows.append(r);
        }
        d["verdicts"] = rows;
        d["recognition_accuracy"] = topo::recognition_accuracy(verdicts);
        std::vector<std::pair<std::string, std::string>> edges;
        for (const auto& e : topo::build_topology(doors, verdicts).edges) edges.push_back(e);
        d["inferred_edges"] = edges;
        return d;
      },
      py::arg("doors_json"), py::arg("observations_jsonl"),
      "Majority-vote verdicts, recognition accuracy (percent) and inferred room edges.");
}
