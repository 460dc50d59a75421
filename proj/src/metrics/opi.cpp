#include "doorkit/metrics/opi.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "doorkit/error.hpp"

namespace doorkit::metrics {

double iou(const Box& a, const Box& b) {
  const double ix = std::max(0.0, std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
  const double iy = std::max(0.0, std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

OpiImageResult opi_image(std::span<const GroundTruthBox> gts, std::span<const Detection> dets,
                         const OpiConfig& cfg) {
  const std::string* image = nullptr;
  auto check = [&](const std::string& id) {
    if (!image) image = &id;
    else if (*image != id) throw Error("cross-image input");
  };
  for (const auto& g : gts) check(g.image_id);
  for (const auto& d : dets) check(d.image_id);

  OpiImageResult out;
  out.ground_truths = gts.size();
  // Best ground truth per confident, localized detection.
  std::vector<std::vector<std::size_t>> matched(gts.size());
  for (std::size_t i = 0; i < dets.size(); ++i) {
    if (dets[i].confidence < cfg.rho_c) continue;
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      const double v = iou(dets[i].box, gts[g].box);
      if (v > best) {
        best = v;
        arg = g;
      }
    }
    if (gts.empty() || best < cfg.rho_a) {
      out.bfd.push_back(i);
    } else {
      matched[arg].push_back(i);
    }
  }
  for (std::size_t g = 0; g < gts.size(); ++g) {
    if (matched[g].empty()) continue;
    std::size_t top = matched[g].front();
    for (std::size_t i : matched[g]) {
      if (dets[i].confidence > dets[top].confidence) top = i;
    }
    (dets[top].label == gts[g].label ? out.tp : out.fp).push_back(top);
    for (std::size_t i : matched[g]) {
      if (i != top) out.discarded.push_back(i);
    }
  }
  std::sort(out.tp.begin(), out.tp.end());
  std::sort(out.fp.begin(), out.fp.end());
  std::sort(out.discarded.begin(), out.discarded.end());
  return out;
}

OpiReport opi_aggregate(std::span<const OpiImageResult> per_image, std::size_t y_bar) {
  OpiReport r;
  r.y_bar = y_bar;
  for (const auto& img : per_image) {
    r.tp_count += img.tp.size();
    r.fp_count += img.fp.size();
    r.bfd_count += img.bfd.size();
  }
  if (y_bar == 0) {
    r.empty_ground_truth = true;
    return r;
  }
  const auto denom = static_cast<double>(y_bar);
  r.tp_rate = static_cast<double>(r.tp_count) / denom;
  r.fp_rate = static_cast<double>(r.fp_count) / denom;
  r.bfd_rate = static_cast<double>(r.bfd_count) / denom;
  return r;
}

OpiReport opi_dataset(std::span<const GroundTruthBox> gts, std::span<const Detection> dets,
                      const OpiConfig& cfg) {
  std::map<std::string, std::pair<std::vector<GroundTruthBox>, std::vector<Detection>>> images;
  for (const auto& g : gts) images[g.image_id].first.push_back(g);
  for (const auto& d : dets) images[d.image_id].second.push_back(d);
  std::vector<OpiImageResult> results;
  results.reserve(images.size());
  for (const auto& [id, records] : images) {
    results.push_back(opi_image(records.first, records.second, cfg));
  }
  return opi_aggregate(results, gts.size());
}

std::vector<SweepPoint> confidence_sweep(std::span<const GroundTruthBox> gts,
                                         std::span<const Detection> dets, double rho_a,
                                         std::span<const double> thresholds) {
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw Error("sweep thresholds must be sorted ascending");
  }
  std::vector<SweepPoint> out;
  out.reserve(thresholds.size());
  for (const double t : thresholds) {
    out.push_back({t, opi_dataset(gts, dets, {t, rho_a})});
  }
  return out;
}

}  // namespace doorkit::metrics
