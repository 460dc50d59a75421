#include "doorkit/metrics/average_precision.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "doorkit/error.hpp"

namespace doorkit::metrics {

std::string_view to_string(ApMode m) { return m == ApMode::kVoc11 ? "voc11" : "enriched"; }

std::optional<ApMode> parse_ap_mode(std::string_view s) {
  if (s == "voc11") return ApMode::kVoc11;
  if (s == "enriched") return ApMode::kEnriched;
  return std::nullopt;
}

std::optional<ClassAp> average_precision(std::span<const GroundTruthBox> gts,
                                         std::span<const Detection> dets, DoorStatus cls,
                                         const ApConfig& cfg) {
  std::unordered_map<std::string, std::vector<std::size_t>> gt_by_image;
  std::size_t n_gt = 0;
  for (std::size_t g = 0; g < gts.size(); ++g) {
    if (gts[g].label != cls) continue;
    gt_by_image[gts[g].image_id].push_back(g);
    ++n_gt;
  }
  if (n_gt == 0) return std::nullopt;

  std::vector<std::size_t> ranked;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    if (dets[i].label != cls) continue;
    if (cfg.gate_confidence && dets[i].confidence < cfg.rho_c) continue;
    ranked.push_back(i);
  }
  std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
    return dets[a].confidence > dets[b].confidence;
  });

  ClassAp out;
  out.ground_truths = n_gt;
  std::vector<bool> taken(gts.size(), false);
  std::size_t tp = 0;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    const Detection& d = dets[ranked[k]];
    double best = -1.0;
    std::size_t arg = 0;
    if (auto it = gt_by_image.find(d.image_id); it != gt_by_image.end()) {
      for (std::size_t g : it->second) {
        if (taken[g]) continue;
        const double v = iou(d.box, gts[g].box);
        if (v > best) {
          best = v;
          arg = g;
        }
      }
    }
    if (best >= cfg.rho_a) {
      taken[arg] = true;
      ++tp;
    }
    out.pr_points.push_back({static_cast<double>(tp) / static_cast<double>(n_gt),
                             static_cast<double>(tp) / static_cast<double>(k + 1)});
  }
  out.ap = ap_from_curve(out.pr_points, cfg.mode);
  return out;
}

double interpolated_precision(std::span<const PrPoint> pr, double recall) {
  double best = 0.0;
  for (const auto& p : pr) {
    if (p.recall >= recall) best = std::max(best, p.precision);
  }
  return best;
}

std::vector<double> enriched_recalls(std::span<const PrPoint> pr) {
  std::vector<double> r;
  for (int i = 0; i <= 10; ++i) r.push_back(i / 10.0);
  // A peak is no lower than its predecessor and strictly above its successor;
  // the last point only compares backwards. This keeps the right end of
  // precision plateaus, where the interpolated curve steps down.
  const std::size_t n = pr.size();
  for (std::size_t k = 0; k < n; ++k) {
    const bool left = k == 0 || pr[k].precision >= pr[k - 1].precision;
    const bool right = k + 1 == n || pr[k].precision > pr[k + 1].precision;
    if (left && right) r.push_back(pr[k].recall);
  }
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

double ap_from_curve(std::span<const PrPoint> pr, ApMode mode) {
  if (mode == ApMode::kVoc11) {
    double sum = 0.0;
    for (int i = 0; i <= 10; ++i) sum += interpolated_precision(pr, i / 10.0);
    return sum / 11.0;
  }
  const auto samples = enriched_recalls(pr);
  double ap = 0.0;
  double prev = 0.0;
  for (const double r : samples) {
    ap += (r - prev) * interpolated_precision(pr, r);
    prev = r;
  }
  return ap;
}

ApReport map_score(std::span<const GroundTruthBox> gts, std::span<const Detection> dets,
                   const ApConfig& cfg) {
  if (gts.empty()) throw Error("empty ground truth");
  ApReport report;
  double sum = 0.0;
  for (const DoorStatus cls : {DoorStatus::Open, DoorStatus::Closed}) {
    if (auto ap = average_precision(gts, dets, cls, cfg)) {
      sum += ap->ap;
      report.per_class.emplace(cls, std::move(*ap));
    }
  }
  report.map_score = sum / static_cast<double>(report.per_class.size());
  return report;
}

}  // namespace doorkit::metrics
