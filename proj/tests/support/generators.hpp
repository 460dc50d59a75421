#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doorkit/geometry/grid_map.hpp"
#include "doorkit/io/dataset.hpp"
#include "doorkit/metrics/types.hpp"

namespace gen {

using doorkit::DoorStatus;
using doorkit::geometry::Cell;
using doorkit::geometry::CellMask;
using doorkit::geometry::CellState;
using doorkit::geometry::GridMap;
using doorkit::metrics::Box;
using doorkit::metrics::Detection;
using doorkit::metrics::GroundTruthBox;

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}
inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// Blob of random rectangles and discs, optionally speckled.
inline CellMask blob(Rng& rng, int max_side) {
  const int w = uniform_int(rng, 3, max_side);
  const int h = uniform_int(rng, 3, max_side);
  CellMask m(w, h);
  const int shapes = uniform_int(rng, 1, 6);
  for (int s = 0; s < shapes; ++s) {
    const int r0 = uniform_int(rng, 0, h - 1);
    const int c0 = uniform_int(rng, 0, w - 1);
    if (coin(rng)) {
      const int r1 = std::min(h - 1, r0 + uniform_int(rng, 0, h / 2 + 1));
      const int c1 = std::min(w - 1, c0 + uniform_int(rng, 0, w / 2 + 1));
      for (int r = r0; r <= r1; ++r)
        for (int c = c0; c <= c1; ++c) m.set({r, c});
    } else {
      const int rad = uniform_int(rng, 1, std::max(1, std::min(w, h) / 3));
      for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
          if ((r - r0) * (r - r0) + (c - c0) * (c - c0) <= rad * rad) m.set({r, c});
    }
  }
  if (coin(rng, 0.3)) {
    for (int k = 0; k < w * h / 20; ++k) {
      const Cell c{uniform_int(rng, 0, h - 1), uniform_int(rng, 0, w - 1)};
      m.set(c, !m.test(c));
    }
  }
  return m;
}

// Room-like map: border walls, some rectangles and sprinkled obstacle cells.
inline GridMap room_map(Rng& rng, int max_side, double resolution) {
  const int w = uniform_int(rng, 6, max_side);
  const int h = uniform_int(rng, 6, max_side);
  GridMap g(w, h, resolution, uniform(rng, -5, 5), uniform(rng, -5, 5));
  if (coin(rng, 0.7)) {
    for (int c = 0; c < w; ++c) {
      g.set({0, c}, CellState::Obstacle);
      g.set({h - 1, c}, CellState::Obstacle);
    }
    for (int r = 0; r < h; ++r) {
      g.set({r, 0}, CellState::Obstacle);
      g.set({r, w - 1}, CellState::Obstacle);
    }
  }
  const int rects = uniform_int(rng, 1, 4);
  for (int k = 0; k < rects; ++k) {
    const int r0 = uniform_int(rng, 0, h - 1);
    const int c0 = uniform_int(rng, 0, w - 1);
    const int r1 = std::min(h - 1, r0 + uniform_int(rng, 0, 4));
    const int c1 = std::min(w - 1, c0 + uniform_int(rng, 0, 4));
    const auto s = coin(rng, 0.85) ? CellState::Obstacle : CellState::Unknown;
    for (int r = r0; r <= r1; ++r)
      for (int c = c0; c <= c1; ++c) g.set({r, c}, s);
  }
  for (int k = uniform_int(rng, 0, 6); k > 0; --k) {
    g.set({uniform_int(rng, 0, h - 1), uniform_int(rng, 0, w - 1)}, CellState::Obstacle);
  }
  // Guarantee some free space.
  g.set({h / 2, w / 2}, CellState::Free);
  return g;
}

// Integer-valued boxes on a small canvas so IoU ties and exact thresholds occur.
inline Box small_box(Rng& rng, int canvas = 12) {
  const int x = uniform_int(rng, 0, canvas - 2);
  const int y = uniform_int(rng, 0, canvas - 2);
  return {static_cast<double>(x), static_cast<double>(y),
          static_cast<double>(uniform_int(rng, 1, canvas - x)),
          static_cast<double>(uniform_int(rng, 1, canvas - y))};
}

inline DoorStatus label(Rng& rng) { return coin(rng) ? DoorStatus::Open : DoorStatus::Closed; }

// Confidences from a coarse grid so equal confidences are common.
inline double confidence(Rng& rng) { return uniform_int(rng, 0, 20) / 20.0; }

struct OpiInstance {
  std::vector<GroundTruthBox> gts;
  std::vector<Detection> dets;
};

inline OpiInstance opi_instance(Rng& rng, const std::string& image_id = "img", int max_gt = 4,
                                int max_det = 6) {
  OpiInstance in;
  for (int k = uniform_int(rng, 0, max_gt); k > 0; --k) {
    in.gts.push_back({image_id, small_box(rng), label(rng)});
  }
  for (int k = uniform_int(rng, 0, max_det); k > 0; --k) {
    Box b = small_box(rng);
    // Half of the detections perturb a ground truth so matches are frequent.
    if (!in.gts.empty() && coin(rng)) {
      b = in.gts[uniform_int(rng, 0, static_cast<int>(in.gts.size()) - 1)].box;
      b.x += uniform_int(rng, -1, 1);
      b.w = std::max(1.0, b.w + uniform_int(rng, -1, 1));
    }
    in.dets.push_back({image_id, b, label(rng), confidence(rng)});
  }
  return in;
}

// Multi-image instance for dataset-level metrics.
inline OpiInstance multi_image_instance(Rng& rng, int images) {
  OpiInstance all;
  for (int i = 0; i < images; ++i) {
    auto one = opi_instance(rng, "img" + std::to_string(i), 4, 8);
    all.gts.insert(all.gts.end(), one.gts.begin(), one.gts.end());
    all.dets.insert(all.dets.end(), one.dets.begin(), one.dets.end());
  }
  return all;
}

inline doorkit::io::DatasetFile dataset(Rng& rng) {
  doorkit::io::DatasetFile d;
  const int images = uniform_int(rng, 0, 5);
  for (int i = 0; i < images; ++i) {
    const int w = uniform_int(rng, 1, 4000);
    const int h = uniform_int(rng, 1, 3000);
    d.images.push_back({"frame_" + std::to_string(i) + (coin(rng) ? "" : "\"q\"\\ü"),
                        "f" + std::to_string(i) + ".png", w, h});
  }
  auto any_box = [&](const doorkit::io::ImageInfo& im) {
    const double x = uniform(rng, 0, im.width);
    const double y = uniform(rng, 0, im.height);
    return Box{x, y, uniform(rng, 0, im.width - x), uniform(rng, 0, im.height - y)};
  };
  for (const auto& im : d.images) {
    for (int k = uniform_int(rng, 0, 4); k > 0; --k) d.annotations.push_back({im.image_id, any_box(im), label(rng)});
    for (int k = uniform_int(rng, 0, 4); k > 0; --k)
      d.detections.push_back({im.image_id, any_box(im), label(rng), uniform(rng, 0, 1)});
  }
  return d;
}

}  // namespace gen
