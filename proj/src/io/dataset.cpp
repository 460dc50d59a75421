#include "doorkit/io/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "doorkit/error.hpp"
#include "doorkit/io/map_io.hpp"

namespace doorkit::io {

using metrics::Box;
using metrics::Detection;
using metrics::GroundTruthBox;
using nlohmann::json;

void require_keys(const json& j, const std::string& path,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "$" : path, "expected an object");
  for (const char* k : required) {
    if (!j.contains(k)) throw SchemaError(path + (path.empty() ? "" : ".") + k, "missing");
  }
  for (const auto& [key, _] : j.items()) {
    const bool known =
        std::any_of(required.begin(), required.end(), [&](const char* k) { return key == k; }) ||
        std::any_of(optional.begin(), optional.end(), [&](const char* k) { return key == k; });
    if (!known) throw SchemaError(path + (path.empty() ? "" : ".") + key, "unknown key");
  }
}

const json& require_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

std::string require_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
  return v;
}

DoorStatus require_label(const json& j, const std::string& path) {
  const auto s = require_string(j, path);
  if (auto st = parse_door_status(s)) return *st;
  throw SchemaError(path, "label must be \"open\" or \"closed\", got \"" + s + "\"");
}

Box clamp_box(const Box& b, int width, int height) {
  Box out = b;
  // In-range boxes are returned untouched so values survive a round trip bit for bit.
  if (width > 0 && (b.x < 0.0 || b.x + b.w > width)) {
    const double x0 = std::clamp(b.x, 0.0, static_cast<double>(width));
    const double x1 = std::clamp(b.x + b.w, 0.0, static_cast<double>(width));
    out.x = x0;
    out.w = x1 - x0;
  }
  if (height > 0 && (b.y < 0.0 || b.y + b.h > height)) {
    const double y0 = std::clamp(b.y, 0.0, static_cast<double>(height));
    const double y1 = std::clamp(b.y + b.h, 0.0, static_cast<double>(height));
    out.y = y0;
    out.h = y1 - y0;
  }
  return out;
}

json box_to_json(const Box& b) { return json::array({b.x, b.y, b.w, b.h}); }

Box box_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 4) throw SchemaError(path, "box must be [x, y, w, h]");
  Box b{require_number(j[0], path + "[0]"), require_number(j[1], path + "[1]"),
        require_number(j[2], path + "[2]"), require_number(j[3], path + "[3]")};
  if (b.w < 0.0 || b.h < 0.0) throw SchemaError(path, "box extent must be non-negative");
  return b;
}

GroundTruthBox annotation_from_json(const json& j, const std::string& path) {
  require_keys(j, path, {"image_id", "box", "label"});
  return {require_string(j["image_id"], path + ".image_id"), box_from_json(j["box"], path + ".box"),
          require_label(j["label"], path + ".label")};
}

json annotation_to_json(const GroundTruthBox& a) {
  return {{"image_id", a.image_id}, {"box", box_to_json(a.box)}, {"label", to_string(a.label)}};
}

json dataset_to_json(const DatasetFile& d) {
  json images = json::array();
  for (const auto& im : d.images) {
    images.push_back({{"image_id", im.image_id},
                      {"file_name", im.file_name},
                      {"width", im.width},
                      {"height", im.height}});
  }
  json annotations = json::array();
  for (const auto& a : d.annotations) annotations.push_back(annotation_to_json(a));
  json detections = json::array();
  for (const auto& det : d.detections) {
    detections.push_back({{"image_id", det.image_id},
                          {"box", box_to_json(det.box)},
                          {"label", to_string(det.label)},
                          {"confidence", det.confidence}});
  }
  return {{"images", images}, {"annotations", annotations}, {"detections", detections}};
}

DatasetFile dataset_from_json(const json& j) {
  require_keys(j, "", {"images", "annotations", "detections"});
  DatasetFile d;
  std::map<std::string, std::pair<int, int>> dims;
  const auto& images = require_array(j["images"], "images");
  for (std::size_t k = 0; k < images.size(); ++k) {
    const std::string p = "images[" + std::to_string(k) + "]";
    const auto& im = images[k];
    require_keys(im, p, {"image_id", "file_name", "width", "height"});
    ImageInfo info;
    info.image_id = require_string(im["image_id"], p + ".image_id");
    info.file_name = require_string(im["file_name"], p + ".file_name");
    for (auto [key, field] : {std::pair{"width", &info.width}, std::pair{"height", &info.height}}) {
      const auto& v = im[key];
      if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 1'000'000'000) {
        throw SchemaError(p + "." + key, "expected a non-negative integer");
      }
      *field = v.get<int>();
    }
    if (!dims.emplace(info.image_id, std::pair{info.width, info.height}).second) {
      throw SchemaError(p + ".image_id", "duplicate image id \"" + info.image_id + "\"");
    }
    d.images.push_back(std::move(info));
  }
  auto image_dims = [&](const std::string& id, const std::string& p) {
    auto it = dims.find(id);
    if (it == dims.end()) throw SchemaError(p, "unknown image id \"" + id + "\"");
    return it->second;
  };
  const auto& annotations = require_array(j["annotations"], "annotations");
  for (std::size_t k = 0; k < annotations.size(); ++k) {
    const std::string p = "annotations[" + std::to_string(k) + "]";
    auto a = annotation_from_json(annotations[k], p);
    const auto [w, h] = image_dims(a.image_id, p + ".image_id");
    a.box = clamp_box(a.box, w, h);
    d.annotations.push_back(std::move(a));
  }
  const auto& detections = require_array(j["detections"], "detections");
  for (std::size_t k = 0; k < detections.size(); ++k) {
    const std::string p = "detections[" + std::to_string(k) + "]";
    const auto& dj = detections[k];
    require_keys(dj, p, {"image_id", "box", "label", "confidence"});
    Detection det{require_string(dj["image_id"], p + ".image_id"),
                  box_from_json(dj["box"], p + ".box"), require_label(dj["label"], p + ".label"),
                  require_number(dj["confidence"], p + ".confidence")};
    if (det.confidence < 0.0 || det.confidence > 1.0) {
      throw SchemaError(p + ".confidence", "confidence must lie in [0, 1]");
    }
    const auto [w, h] = image_dims(det.image_id, p + ".image_id");
    det.box = clamp_box(det.box, w, h);
    d.detections.push_back(std::move(det));
  }
  return d;
}

std::string dump_dataset(const DatasetFile& d) { return dataset_to_json(d).dump(2) + "\n"; }

DatasetFile parse_dataset(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("$", std::string("invalid JSON: ") + e.what());
  }
  return dataset_from_json(j);
}

DatasetFile load_dataset(const std::filesystem::path& path) { return parse_dataset(read_file(path)); }

void save_dataset(const DatasetFile& d, const std::filesystem::path& path) {
  write_file_atomic(path, dump_dataset(d));
}

}  // namespace doorkit::io
