#include <algorithm>
#include <set>

#include "doctest.h"

#include "doorkit/error.hpp"
#include "doorkit/metrics/average_precision.hpp"
#include "doorkit/metrics/opi.hpp"

#include "../oracles/oracles.hpp"
#include "../support/generators.hpp"

using namespace doorkit::metrics;
using doorkit::DoorStatus;

namespace {

const Box kGtBox{0, 0, 10, 10};

std::set<std::size_t> as_set(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

// The single-image example: p1 IoU .6, p2 IoU .55, p3 IoU .1.
struct Worked {
  std::vector<GroundTruthBox> gts{{"a", kGtBox, DoorStatus::Open}};
  std::vector<Detection> dets{{"a", {0, 0, 6, 10}, DoorStatus::Open, 0.9},
                              {"a", {0, 0, 5.5, 10}, DoorStatus::Open, 0.8},
                              {"a", {0, 0, 1, 10}, DoorStatus::Closed, 0.8}};
};

}  // namespace

TEST_CASE("iou") {
  CHECK(iou(kGtBox, kGtBox) == 1.0);
  CHECK(iou(kGtBox, {20, 20, 5, 5}) == 0.0);
  CHECK(iou({0, 0, 10, 10}, {5, 0, 10, 10}) == doctest::Approx(1.0 / 3.0));
  CHECK(iou({0, 0, 0, 0}, {0, 0, 0, 0}) == 0.0);
}

TEST_CASE("iou is symmetric and bounded") {
  gen::Rng rng(71);
  for (int k = 0; k < 500; ++k) {
    const auto a = gen::small_box(rng);
    const auto b = gen::small_box(rng);
    CHECK(iou(a, b) == iou(b, a));
    CHECK(iou(a, b) >= 0.0);
    CHECK(iou(a, b) <= 1.0);
    CHECK(iou(a, a) == 1.0);
  }
}

TEST_CASE("opi worked example") {
  Worked w;
  const auto r = opi_image(w.gts, w.dets, {});
  CHECK(as_set(r.bfd) == std::set<std::size_t>{2});
  CHECK(as_set(r.tp) == std::set<std::size_t>{0});
  CHECK(r.fp.empty());
  CHECK(as_set(r.discarded) == std::set<std::size_t>{1});

  const auto rep = opi_aggregate(std::vector{r}, 1);
  CHECK(rep.tp_rate == 1.0);
  CHECK(rep.fp_rate == 0.0);
  CHECK(rep.bfd_rate == 1.0);
}

TEST_CASE("opi without detections") {
  Worked w;
  const auto r = opi_image(w.gts, {}, {});
  CHECK(r.tp.empty());
  CHECK(r.fp.empty());
  CHECK(r.bfd.empty());
}

TEST_CASE("a confident well-placed wrong label is a false positive") {
  const std::vector<GroundTruthBox> gts{{"a", kGtBox, DoorStatus::Open}};
  const std::vector<Detection> dets{{"a", {0, 0, 7, 10}, DoorStatus::Closed, 0.8}};
  const auto r = opi_image(gts, dets, {});
  CHECK(as_set(r.fp) == std::set<std::size_t>{0});
  CHECK(r.tp.empty());
}

TEST_CASE("opi rejects mixed images") {
  const std::vector<GroundTruthBox> gts{{"a", kGtBox, DoorStatus::Open}};
  const std::vector<Detection> dets{{"b", kGtBox, DoorStatus::Open, 0.9}};
  CHECK_THROWS_WITH_AS(opi_image(gts, dets, {}), "cross-image input", doorkit::Error);
}

TEST_CASE("opi aggregation") {
  Worked w;
  const std::vector<Detection> only_tp{w.dets[0]};
  auto a = opi_image(w.gts, only_tp, {});
  auto rep = opi_aggregate(std::vector{a, a}, 2);
  CHECK(rep.tp_rate == 1.0);
  CHECK(rep.tp_count == 2);
  const auto empty = opi_aggregate(std::vector<OpiImageResult>{}, 0);
  CHECK(empty.empty_ground_truth);
  CHECK(empty.tp_rate == 0.0);
  CHECK(empty.fp_rate == 0.0);
  CHECK(empty.bfd_rate == 0.0);
}

TEST_CASE("opi matches the brute-force trace") {
  gen::Rng rng(72);
  for (int k = 0; k < 300; ++k) {
    const auto in = gen::opi_instance(rng);
    const double rho_c = gen::confidence(rng);
    const double rho_a = gen::uniform_int(rng, 1, 9) / 10.0;
    const auto got = opi_image(in.gts, in.dets, {rho_c, rho_a});
    const auto want = oracle::opi(in.gts, in.dets, rho_c, rho_a);
    CHECK(as_set(got.tp) == want.tp);
    CHECK(as_set(got.fp) == want.fp);
    CHECK(as_set(got.bfd) == want.bfd);
    CHECK(as_set(got.discarded) == want.discarded);
  }
}

TEST_CASE("opi partitions the confident detections") {
  gen::Rng rng(73);
  for (int k = 0; k < 300; ++k) {
    const auto in = gen::opi_instance(rng);
    const auto r = opi_image(in.gts, in.dets, {0.5, 0.5});
    std::multiset<std::size_t> all;
    for (auto* v : {&r.tp, &r.fp, &r.bfd, &r.discarded}) all.insert(v->begin(), v->end());
    std::multiset<std::size_t> confident;
    for (std::size_t i = 0; i < in.dets.size(); ++i)
      if (in.dets[i].confidence >= 0.5) confident.insert(i);
    CHECK(all == confident);
    CHECK(r.tp.size() + r.fp.size() <= in.gts.size());
  }
}

TEST_CASE("raising rho_c never adds detections to the indicators") {
  gen::Rng rng(74);
  for (int k = 0; k < 50; ++k) {
    const auto in = gen::multi_image_instance(rng, 5);
    std::size_t prev = SIZE_MAX;
    for (int t = 0; t <= 20; ++t) {
      const auto rep = opi_dataset(in.gts, in.dets, {t / 20.0, 0.5});
      const auto total = rep.tp_count + rep.fp_count + rep.bfd_count;
      CHECK(total <= prev);
      prev = total;
    }
  }
}

TEST_CASE("sweep matches independent runs") {
  gen::Rng rng(75);
  const auto in = gen::multi_image_instance(rng, 20);
  const std::vector<double> th{0, 0.25, 0.5, 0.75, 1.0};
  const auto series = confidence_sweep(in.gts, in.dets, 0.5, th);
  REQUIRE(series.size() == th.size());
  std::size_t max_tp = 0;
  for (std::size_t k = 0; k < th.size(); ++k) {
    CHECK(series[k].threshold == th[k]);
    CHECK(series[k].report == opi_dataset(in.gts, in.dets, {th[k], 0.5}));
    max_tp = std::max(max_tp, series[k].report.tp_count);
  }
  CHECK(series[0].report.tp_count == max_tp);
}

TEST_CASE("sweep above every confidence is all zero") {
  Worked w;
  const std::vector<double> th{1.01};
  const auto s = confidence_sweep(w.gts, w.dets, 0.5, th);
  CHECK(s[0].report.tp_count == 0);
  CHECK(s[0].report.fp_count == 0);
  CHECK(s[0].report.bfd_count == 0);
  CHECK(s[0].report.tp_rate == 0.0);
}

TEST_CASE("sweep needs sorted thresholds") {
  Worked w;
  const std::vector<double> th{0.5, 0.2};
  CHECK_THROWS_AS(confidence_sweep(w.gts, w.dets, 0.5, th), doorkit::Error);
}

TEST_CASE("average precision hand checks") {
  ApConfig voc{0.5, 0.75, ApMode::kVoc11, true};
  ApConfig enr{0.5, 0.75, ApMode::kEnriched, true};
  const GroundTruthBox g1{"a", kGtBox, DoorStatus::Open};
  const GroundTruthBox g2{"a", {30, 30, 10, 10}, DoorStatus::Open};
  const Detection hit{"a", kGtBox, DoorStatus::Open, 0.9};
  const Detection miss{"a", {60, 60, 5, 5}, DoorStatus::Open, 0.8};

  SUBCASE("one ground truth, one correct detection") {
    const std::vector gts{g1};
    const std::vector dets{hit};
    CHECK(average_precision(gts, dets, DoorStatus::Open, voc)->ap == 1.0);
    CHECK(average_precision(gts, dets, DoorStatus::Open, enr)->ap == 1.0);
  }
  SUBCASE("two ground truths, one found") {
    const std::vector gts{g1, g2};
    const std::vector dets{hit};
    CHECK(average_precision(gts, dets, DoorStatus::Open, voc)->ap == doctest::Approx(6.0 / 11.0));
    CHECK(average_precision(gts, dets, DoorStatus::Open, enr)->ap == doctest::Approx(0.5));
  }
  SUBCASE("correct detection ranked above a false one") {
    const std::vector gts{g1};
    const std::vector dets{hit, miss};
    CHECK(average_precision(gts, dets, DoorStatus::Open, voc)->ap == 1.0);
  }
  SUBCASE("no ground truth of the class") {
    const std::vector gts{g1};
    const std::vector dets{hit};
    CHECK_FALSE(average_precision(gts, dets, DoorStatus::Closed, voc).has_value());
  }
}

TEST_CASE("the confidence gate") {
  const std::vector<GroundTruthBox> gts{{"a", kGtBox, DoorStatus::Open}};
  const std::vector<Detection> dets{{"a", kGtBox, DoorStatus::Open, 0.5}};
  ApConfig cfg;
  CHECK(average_precision(gts, dets, DoorStatus::Open, cfg)->ap == 0.0);
  cfg.gate_confidence = false;
  CHECK(average_precision(gts, dets, DoorStatus::Open, cfg)->ap == 1.0);
}

TEST_CASE("a detection matches only within its image") {
  const std::vector<GroundTruthBox> gts{{"a", kGtBox, DoorStatus::Open}};
  const std::vector<Detection> dets{{"b", kGtBox, DoorStatus::Open, 0.9}};
  CHECK(average_precision(gts, dets, DoorStatus::Open, {})->ap == 0.0);
}

TEST_CASE("enriched recalls contain the eleven levels and the precision peaks") {
  const std::vector<PrPoint> pr{{0.25, 1.0}, {0.25, 0.5}, {0.5, 0.67}, {0.5, 0.5}, {0.75, 0.6}};
  const auto r = enriched_recalls(pr);
  for (int k = 0; k <= 10; ++k) {
    CHECK(std::find_if(r.begin(), r.end(), [&](double v) { return std::abs(v - k / 10.0) < 1e-12; }) !=
          r.end());
  }
  CHECK(std::count(r.begin(), r.end(), 0.25) == 1);
  CHECK(std::count(r.begin(), r.end(), 0.75) == 1);
  CHECK(std::is_sorted(r.begin(), r.end()));
}

TEST_CASE("enriched equals the eleven-level Riemann sum when no peak adds a level") {
  // A single detection at recall 1 adds no new level.
  const std::vector<PrPoint> pr{{1.0, 0.5}};
  CHECK(ap_from_curve(pr, ApMode::kEnriched) == doctest::Approx(0.5));
}

TEST_CASE("enriched AP agrees with the dense integral") {
  gen::Rng rng(76);
  for (int k = 0; k < 100; ++k) {
    const auto in = gen::multi_image_instance(rng, 4);
    for (const auto cls : {DoorStatus::Open, DoorStatus::Closed}) {
      const auto got = average_precision(in.gts, in.dets, cls, {0.5, 0.0, ApMode::kEnriched, true});
      const auto pr = oracle::pr_curve(in.gts, in.dets, cls, 0.5, 0.0);
      if (!got) continue;
      CHECK(std::abs(got->ap - oracle::dense_ap(pr)) <= 1e-3);
      const auto voc = average_precision(in.gts, in.dets, cls, {0.5, 0.0, ApMode::kVoc11, true});
      CHECK(voc->ap == doctest::Approx(oracle::voc11_ap(pr)));
      CHECK(got->ap >= 0.0);
      CHECK(got->ap <= 1.0);
    }
  }
}

TEST_CASE("mean average precision") {
  const GroundTruthBox open{"a", kGtBox, DoorStatus::Open};
  const GroundTruthBox open2{"a", {30, 30, 10, 10}, DoorStatus::Open};
  const GroundTruthBox closed{"a", {50, 0, 10, 10}, DoorStatus::Closed};
  const Detection hit_open{"a", kGtBox, DoorStatus::Open, 0.9};
  const Detection hit_closed{"a", {50, 0, 10, 10}, DoorStatus::Closed, 0.9};
  ApConfig voc{0.5, 0.75, ApMode::kVoc11, true};

  CHECK(map_score(std::vector{open, closed}, std::vector{hit_open, hit_closed}, voc).map_score == 1.0);
  const auto one_class = map_score(std::vector{open}, std::vector{hit_open}, voc);
  CHECK(one_class.map_score == 1.0);
  CHECK(one_class.per_class.size() == 1);
  CHECK(map_score(std::vector{open, open2, closed}, std::vector{hit_open}, voc).map_score ==
        doctest::Approx(3.0 / 11.0));
  CHECK_THROWS_WITH_AS(map_score(std::vector<GroundTruthBox>{}, std::vector{hit_open}, voc),
                       "empty ground truth", doorkit::Error);
}

TEST_CASE("ap mode names") {
  CHECK(parse_ap_mode("voc11") == ApMode::kVoc11);
  CHECK(parse_ap_mode("enriched") == ApMode::kEnriched);
  CHECK_FALSE(parse_ap_mode("coco").has_value());
  CHECK(to_string(ApMode::kEnriched) == "enriched");
}
