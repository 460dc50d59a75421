#pragma once

#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "doorkit/metrics/types.hpp"

namespace doorkit::metrics {

enum class ApMode {
  kVoc11,     // mean of interpolated precision at recall 0, 0.1, ..., 1
  kEnriched,  // Riemann sum over the 11 levels plus every precision peak
};

std::string_view to_string(ApMode m);
std::optional<ApMode> parse_ap_mode(std::string_view s);

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
};

struct ApConfig {
  double rho_a = 0.50;
  double rho_c = 0.75;
  ApMode mode = ApMode::kEnriched;
  bool gate_confidence = true;  // drop detections below rho_c before ranking
};

struct ClassAp {
  double ap = 0.0;
  std::vector<PrPoint> pr_points;  // one per ranked detection
  std::size_t ground_truths = 0;
};

/// Ranks the class's detections by confidence (stable on ties) and matches
/// each greedily to the unmatched same-image ground truth with the highest
/// IoU >= rho_a. Returns nullopt when the class has no ground truth.
std::optional<ClassAp> average_precision(std::span<const GroundTruthBox> gts,
                                         std::span<const Detection> dets, DoorStatus cls,
                                         const ApConfig& cfg);

// Interpolated precision max{p : recall >= r}, 0 past the last point.
double interpolated_precision(std::span<const PrPoint> pr, double recall);

// The sampling recalls used in enriched mode, sorted and deduplicated.
std::vector<double> enriched_recalls(std::span<const PrPoint> pr);

double ap_from_curve(std::span<const PrPoint> pr, ApMode mode);

struct ApReport {
  std::map<DoorStatus, ClassAp> per_class;  // classes present in the ground truth
  double map_score = 0.0;
};

ApReport map_score(std::span<const GroundTruthBox> gts, std::span<const Detection> dets,
                   const ApConfig& cfg);

}  // namespace doorkit::metrics
