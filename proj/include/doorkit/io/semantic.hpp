#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "doorkit/io/map_io.hpp"
#include "doorkit/metrics/types.hpp"

namespace doorkit::io {

// Per-pixel class ids of a rendered frame.
struct SemanticFrame {
  int width = 0;
  int height = 0;
  std::vector<int> class_of;  // row-major
  std::set<int> door_class_ids;

  bool is_door(int x, int y) const {
    return door_class_ids.count(class_of[static_cast<std::size_t>(y) * width + x]) > 0;
  }
};

// Frame from a grayscale image whose pixel values are class ids.
SemanticFrame frame_from_image(const GrayImage& img, std::set<int> door_class_ids);

std::size_t door_pixel_count(const SemanticFrame& frame);
double door_pixel_fraction(const SemanticFrame& frame);

// Frames whose door pixels make up at least `min_fraction` of the image are
// kept. The comparison is done on integer counts when min_fraction is a whole
// number of per-mille, so 2.5% exactly is kept.
bool passes_door_filter(const SemanticFrame& frame, double min_fraction = 0.025);

/// One bounding box per 4-connected door component of at least min_area
/// pixels. Boxes are in pixel units: a component spanning columns x0..x1
/// gives x = x0, w = x1 - x0 + 1. Ordered by first pixel in row-major order.
std::vector<metrics::Box> propose_boxes(const SemanticFrame& frame, std::size_t min_area = 20);

}  // namespace doorkit::io
