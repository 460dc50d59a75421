#pragma once

#include <span>
#include <vector>

#include "doorkit/metrics/types.hpp"

namespace doorkit::metrics {

struct OpiConfig {
  double rho_c = 0.75;  // confidence threshold
  double rho_a = 0.50;  // IoU threshold
};

// Indices into the detection list of one image.
struct OpiImageResult {
  std::vector<std::size_t> tp;
  std::vector<std::size_t> fp;
  std::vector<std::size_t> bfd;
  std::vector<std::size_t> discarded;  // confident, localized, but not the top prediction
  std::size_t ground_truths = 0;
};

struct OpiReport {
  std::size_t tp_count = 0;
  std::size_t fp_count = 0;
  std::size_t bfd_count = 0;
  std::size_t y_bar = 0;
  double tp_rate = 0.0;
  double fp_rate = 0.0;
  double bfd_rate = 0.0;
  bool empty_ground_truth = false;  // y_bar == 0, rates forced to 0

  friend bool operator==(const OpiReport&, const OpiReport&) = default;
};

/// Operational performance indicators for one image.
///
/// Detections with confidence >= rho_c are kept. A kept detection whose best
/// IoU with every ground truth is below rho_a is a background false detection
/// (BFD). Every other kept detection goes to its best-IoU ground truth (ties to
/// the lower ground-truth index). For each ground truth the most confident of
/// its detections (ties to input order) is a TP when the labels agree and an
/// FP otherwise; the rest are discarded.
///
/// All records must share one image_id.
OpiImageResult opi_image(std::span<const GroundTruthBox> gts, std::span<const Detection> dets,
                         const OpiConfig& cfg);

OpiReport opi_aggregate(std::span<const OpiImageResult> per_image, std::size_t y_bar);

// Groups by image_id (ground truths and detections) and aggregates.
OpiReport opi_dataset(std::span<const GroundTruthBox> gts, std::span<const Detection> dets,
                      const OpiConfig& cfg);

struct SweepPoint {
  double threshold = 0.0;
  OpiReport report;
};

std::vector<SweepPoint> confidence_sweep(std::span<const GroundTruthBox> gts,
                                         std::span<const Detection> dets, double rho_a,
                                         std::span<const double> thresholds);

}  // namespace doorkit::metrics
