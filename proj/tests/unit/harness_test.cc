// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

#include "tiou/harness.h"

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "tiou/aggregate.h"
#include "tiou/errors.h"
#include "tiou/pair_metrics.h"

namespace {

using tiou::Polygon;

const Polygon kGt = Polygon::rectangle(0, 0, 100, 20);

}  // namespace

TEST_CASE("cut detection") {
  const tiou::Detection d = tiou::make_cut_detection(kGt, 0.2, 2.0 / 3.0);
  const tiou::Box& b = d.polygon.bounds();
  CHECK(b.min_x == doctest::Approx(20));
  CHECK(b.max_x == doctest::Approx(120));
  CHECK(b.min_y == 0);
  CHECK(b.max_y == 20);
  CHECK(std::abs(tiou::iou(kGt, d.polygon) - 2.0 / 3.0) < 1e-9);

  // Wider than the shifted copy when the target asks for it.
  const tiou::Detection wide = tiou::make_cut_detection(kGt, 0.1, 0.6);
  CHECK(std::abs(tiou::iou(kGt, wide.polygon) - 0.6) < 1e-9);

  const double c = 1e-9;
  const tiou::Detection near_gt =
      tiou::make_cut_detection(kGt, c, (1 - c) / (1 + c));
  CHECK(tiou::iou(kGt, near_gt.polygon) == doctest::Approx(1.0));

  CHECK_THROWS_AS(tiou::make_cut_detection(kGt, 0.5, 0.9),
                  tiou::ValidationError);
  CHECK_THROWS_AS(tiou::make_cut_detection(kGt, 0.0), tiou::ValidationError);
  CHECK_THROWS_AS(tiou::make_cut_detection(kGt, 1.0), tiou::ValidationError);
  const Polygon tri = Polygon::from_vertices({{0, 0}, {1, 0}, {0, 1}});
  CHECK_THROWS_AS(tiou::make_cut_detection(tri, 0.2), tiou::ValidationError);
}

TEST_CASE("quartet geometry") {
  for (double t : {0.55, 2.0 / 3.0, 0.8, 0.95}) {
    CAPTURE(t);
    const auto scenes = tiou::make_equal_iou_quartet(kGt, t);
    REQUIRE(scenes.size() == 4);
    CHECK(scenes[0].label == "cutting");
    CHECK(scenes[3].label == "cutting+outlier");
    for (const tiou::Scene& s : scenes) {
      CAPTURE(s.label);
      CHECK(std::abs(tiou::iou(s.gts[0].polygon, s.dets[0].polygon) - t) <
            1e-9);
      // The neighbour never touches the target.
      CHECK(tiou::intersection_area(s.gts[0].polygon, s.gts[1].polygon) ==
            0.0);
      // Rotating the solved scene keeps its IoU.
      const tiou::Scene r = tiou::rotate_scene(s, 0.7, {50, 10});
      CHECK(std::abs(tiou::iou(r.gts[0].polygon, r.dets[0].polygon) - t) <
            1e-9);
    }
    // Same outlier share of the detection in both outlier scenes.
    auto share = [](const tiou::Scene& s) {
      const std::vector<Polygon> others = {s.gts[1].polygon};
      return tiou::outlier_area(s.dets[0].polygon, s.gts[0].polygon, others) /
             s.dets[0].polygon.area();
    };
    CHECK(share(scenes[2]) > 0.0);
    CHECK(share(scenes[2]) == doctest::Approx(share(scenes[3])));
  }
  CHECK_THROWS_AS(tiou::make_equal_iou_quartet(kGt, 0.5), tiou::ValidationError);
  CHECK_THROWS_AS(tiou::make_equal_iou_quartet(kGt, 1.0), tiou::ValidationError);
}

TEST_CASE("over-segmentation") {
  const auto slices = tiou::make_oversegmentation(kGt, 2);
  REQUIRE(slices.size() == 2);
  const tiou::Scene two = {"two", {tiou::GtInstance{0, kGt, "w"}}, slices, {}};
  CHECK(tiou::match_deteval(two.gts, two.dets, {}).om_groups.size() == 1);
  CHECK_THROWS_AS(tiou::make_oversegmentation(kGt, 1), tiou::ValidationError);

  double total = 0.0;
  for (const auto& d : tiou::make_oversegmentation(kGt, 7)) {
    total += d.polygon.area();
  }
  CHECK(total == doctest::Approx(kGt.area()));
}

TEST_CASE("perturbations have closed-form IoU") {
  for (std::uint64_t seed : {0u, 1u}) {
    tiou::PerturbSpec cut{tiou::PerturbKind::kCut, 0.25, seed};
    CHECK(tiou::iou(kGt, tiou::perturb(kGt, cut)[0].polygon) ==
          doctest::Approx(0.75 / 1.25));
    tiou::PerturbSpec dilate{tiou::PerturbKind::kDilate, 0.3, seed};
    CHECK(tiou::iou(kGt, tiou::perturb(kGt, dilate)[0].polygon) ==
          doctest::Approx(0.7));
    std::vector<Polygon> extra;
    tiou::PerturbSpec outlier{tiou::PerturbKind::kOutlier, 0.4, seed};
    const auto d = tiou::perturb(kGt, outlier, &extra);
    REQUIRE(extra.size() == 1);
    CHECK(tiou::outlier_area(d[0].polygon, kGt, extra) ==
          doctest::Approx(0.2 * kGt.area()));
    tiou::PerturbSpec overseg{tiou::PerturbKind::kOversegment, 4, seed};
    CHECK(tiou::perturb(kGt, overseg).size() == 4);
  }
  tiou::PerturbSpec bad{tiou::PerturbKind::kDilate, 1.5, 0};
  CHECK_THROWS_AS(tiou::perturb(kGt, bad), tiou::ValidationError);
}

TEST_CASE("metric comparison table") {
  const auto quartet = tiou::make_equal_iou_quartet(kGt, 2.0 / 3.0);
  const auto rows = tiou::compare_metrics(quartet);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) CHECK(r.iou_f == rows[0].iou_f);
  CHECK(tiou::compare_metrics({}).empty());

  const std::vector<tiou::Scene> overseg = {
      tiou::make_oversegmentation_scene(kGt, 20, 3)};
  const auto o = tiou::compare_metrics(overseg);
  CHECK(o[0].deteval_f > 0.7);
  CHECK(o[0].tiou_f == 0.0);
}

TEST_CASE("random scenes are reproducible") {
  tiou::RandomSceneOptions opts;
  opts.line_probability = 0.5;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CAPTURE(seed);
    const tiou::Scene a = tiou::random_scene(seed, opts);
    const tiou::Scene b = tiou::random_scene(seed, opts);
    CHECK(a.gts == b.gts);
    CHECK(a.dets == b.dets);
    CHECK(a.lines == b.lines);
    CHECK(!a.gts.empty());
    for (std::size_t i = 0; i < a.dets.size(); ++i) CHECK(a.dets[i].id == i);
  }
  CHECK(tiou::random_scene(1).gts != tiou::random_scene(2).gts);
  tiou::RandomSceneOptions bad;
  bad.min_words = 5;
  bad.max_words = 2;
  CHECK_THROWS_AS(tiou::random_scene(0, bad), tiou::ValidationError);
}

TEST_CASE("dumped scenes load back") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "tiou_harness_dump";
  fs::remove_all(dir);
  tiou::RandomSceneOptions opts;
  opts.line_probability = 0.5;
  opts.line_detections = true;
  std::vector<tiou::Scene> scenes;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    scenes.push_back(tiou::random_scene(seed, opts));
  }
  const tiou::DetectionLayout layout =
      tiou::dump_scenes(scenes, dir / "gt", dir / "det", dir / "lines");
  CHECK(layout.confidence);
  CHECK(layout.transcription);
  tiou::DatasetOptions ds;
  ds.det_layout = layout;
  const auto records =
      tiou::load_dataset(dir / "gt", dir / "det", dir / "lines", ds);
  REQUIRE(records.size() == scenes.size());
  for (const auto& rec : records) {
    const auto it = std::find_if(scenes.begin(), scenes.end(),
                                 [&](const auto& s) { return s.label == rec.key; });
    REQUIRE(it != scenes.end());
    CHECK(rec.gts == it->gts);
    CHECK(rec.dets == it->dets);
    CHECK(rec.lines->size() <= it->lines.size());
  }
}
