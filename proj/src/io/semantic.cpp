#include "doorkit/io/semantic.hpp"

#include <algorithm>
#include <cmath>

#include "doorkit/error.hpp"

namespace doorkit::io {

SemanticFrame frame_from_image(const GrayImage& img, std::set<int> door_class_ids) {
  SemanticFrame f;
  f.width = img.width;
  f.height = img.height;
  f.class_of.assign(img.pixels.begin(), img.pixels.end());
  f.door_class_ids = std::move(door_class_ids);
  return f;
}

std::size_t door_pixel_count(const SemanticFrame& frame) {
  if (frame.width <= 0 || frame.height <= 0) throw Error("zero-size frame");
  if (frame.class_of.size() != static_cast<std::size_t>(frame.width) * frame.height) {
    throw Error("frame class map does not match its dimensions");
  }
  return static_cast<std::size_t>(std::count_if(
      frame.class_of.begin(), frame.class_of.end(),
      [&](int c) { return frame.door_class_ids.count(c) > 0; }));
}

double door_pixel_fraction(const SemanticFrame& frame) {
  const auto doors = door_pixel_count(frame);
  return static_cast<double>(doors) / static_cast<double>(frame.class_of.size());
}

bool passes_door_filter(const SemanticFrame& frame, double min_fraction) {
  const auto doors = door_pixel_count(frame);
  const auto total = frame.class_of.size();
  const double per_mille = min_fraction * 1000.0;
  if (std::abs(per_mille - std::round(per_mille)) < 1e-9) {
    return doors * 1000 >= total * static_cast<std::size_t>(std::llround(per_mille));
  }
  return static_cast<double>(doors) >= min_fraction * static_cast<double>(total);
}

std::vector<metrics::Box> propose_boxes(const SemanticFrame& frame, std::size_t min_area) {
  door_pixel_count(frame);  // validates the frame
  const int w = frame.width;
  const int h = frame.height;
  std::vector<std::uint8_t> seen(frame.class_of.size(), 0);
  std::vector<metrics::Box> out;
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto at = static_cast<std::size_t>(y) * w + x;
      if (seen[at] || !frame.is_door(x, y)) continue;
      int x0 = x, x1 = x, y0 = y, y1 = y;
      std::size_t area = 0;
      seen[at] = 1;
      stack.push_back({x, y});
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        ++area;
        x0 = std::min(x0, cx);
        x1 = std::max(x1, cx);
        y0 = std::min(y0, cy);
        y1 = std::max(y1, cy);
        constexpr int dx[4] = {1, -1, 0, 0};
        constexpr int dy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int nx = cx + dx[k];
          const int ny = cy + dy[k];
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const auto n = static_cast<std::size_t>(ny) * w + nx;
          if (!seen[n] && frame.is_door(nx, ny)) {
            seen[n] = 1;
            stack.push_back({nx, ny});
          }
        }
      }
      if (area >= min_area) {
        out.push_back({static_cast<double>(x0), static_cast<double>(y0),
                       static_cast<double>(x1 - x0 + 1), static_cast<double>(y1 - y0 + 1)});
      }
    }
  }
  return out;
}

}  // namespace doorkit::io
