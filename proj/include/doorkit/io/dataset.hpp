#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "doorkit/metrics/types.hpp"

namespace doorkit::io {

struct ImageInfo {
  std::string image_id;
  std::string file_name;
  int width = 0;
  int height = 0;

  friend bool operator==(const ImageInfo&, const ImageInfo&) = default;
};

/// Images with their ground-truth annotations and detector output.
///
/// JSON layout, no other keys allowed at any level:
///   {"images":      [{"image_id", "file_name", "width", "height"}],
///    "annotations": [{"image_id", "box": [x, y, w, h], "label": "open"|"closed"}],
///    "detections":  [{"image_id", "box", "label", "confidence"}]}
struct DatasetFile {
  std::vector<ImageInfo> images;
  std::vector<metrics::GroundTruthBox> annotations;
  std::vector<metrics::Detection> detections;

  friend bool operator==(const DatasetFile&, const DatasetFile&) = default;
};

// Clamps the box into [0, width] x [0, height]; no-op when a dimension is 0.
metrics::Box clamp_box(const metrics::Box& b, int width, int height);

nlohmann::json box_to_json(const metrics::Box& b);
metrics::Box box_from_json(const nlohmann::json& j, const std::string& path);
metrics::GroundTruthBox annotation_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json annotation_to_json(const metrics::GroundTruthBox& a);

nlohmann::json dataset_to_json(const DatasetFile& d);
// Validates the schema (SchemaError names the offending path), checks that
// every record references a known image, and clamps boxes to image bounds.
DatasetFile dataset_from_json(const nlohmann::json& j);

std::string dump_dataset(const DatasetFile& d);
DatasetFile parse_dataset(const std::string& text);

DatasetFile load_dataset(const std::filesystem::path& path);
void save_dataset(const DatasetFile& d, const std::filesystem::path& path);

// Helpers shared by the other file readers.
void require_keys(const nlohmann::json& j, const std::string& path,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {});
const nlohmann::json& require_array(const nlohmann::json& j, const std::string& path);
std::string require_string(const nlohmann::json& j, const std::string& path);
double require_number(const nlohmann::json& j, const std::string& path);
DoorStatus require_label(const nlohmann::json& j, const std::string& path);

}  // namespace doorkit::io
