#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace doorkit {

enum class DoorStatus { Open, Closed };

inline std::string_view to_string(DoorStatus s) { return s == DoorStatus::Open ? "open" : "closed"; }

inline std::optional<DoorStatus> parse_door_status(std::string_view s) {
  if (s == "open") return DoorStatus::Open;
  if (s == "closed") return DoorStatus::Closed;
  return std::nullopt;
}

}  // namespace doorkit

namespace doorkit::metrics {

// Pixel box, top-left corner plus extent.
struct Box {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
  friend bool operator==(const Box&, const Box&) = default;
};

struct GroundTruthBox {
  std::string image_id;
  Box box;
  DoorStatus label = DoorStatus::Open;

  friend bool operator==(const GroundTruthBox&, const GroundTruthBox&) = default;
};

struct Detection {
  std::string image_id;
  Box box;
  DoorStatus label = DoorStatus::Open;
  double confidence = 0.0;

  friend bool operator==(const Detection&, const Detection&) = default;
};

// Intersection over union; 0 when the union is empty.
double iou(const Box& a, const Box& b);

}  // namespace doorkit::metrics
