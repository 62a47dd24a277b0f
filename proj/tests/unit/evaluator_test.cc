// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

#include "tiou/evaluator.h"

#include <algorithm>
#include <stdexcept>

#include "doctest.h"
#include "tiou/errors.h"
#include "tiou/harness.h"
#include "tiou/joint_line.h"

namespace {

namespace fs = std::filesystem;
using tiou::MetricId;

std::vector<tiou::ImageRecord> records_from(
    const std::vector<tiou::Scene>& scenes, bool with_lines) {
  std::vector<tiou::ImageRecord> out;
  for (const tiou::Scene& s : scenes) {
    tiou::ImageRecord r{s.label, s.gts, s.dets, std::nullopt};
    if (with_lines) r.lines = tiou::build_line_index(s.gts, s.lines);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<tiou::Scene> corpus(int n, const tiou::RandomSceneOptions& o) {
  std::vector<tiou::Scene> scenes;
  for (int i = 0; i < n; ++i) {
    scenes.push_back(tiou::random_scene(static_cast<std::uint64_t>(i), o));
  }
  return scenes;
}

const tiou::MetricSummary& find(const tiou::EvalReport& r, MetricId id) {
  for (const auto& m : r.metrics) {
    if (m.metric == id) return m;
  }
  throw std::runtime_error("metric missing");
}

}  // namespace

TEST_CASE("summaries are the micro-average of per-image tallies") {
  const auto records = records_from(corpus(40, {}), false);
  tiou::EvalOptions opt;
  opt.metrics = {MetricId::kIoU, MetricId::kSIoU, MetricId::kTIoU,
                 MetricId::kDetEvalIc13Order, MetricId::kDetEvalOrder,
                 MetricId::kIc03, MetricId::kAp, MetricId::kEndToEnd};
  opt.per_image = true;
  const tiou::EvalReport r = tiou::evaluate_records(records, opt);
  REQUIRE(r.images.size() == records.size());
  REQUIRE(r.metrics.size() == opt.metrics.size());
  for (const tiou::MetricSummary& m : r.metrics) {
    tiou::Tally sum;
    for (const auto& img : r.images) {
      sum += img.tallies.at(std::string(tiou::metric_name(m.metric)));
    }
    tiou::MetricSummary again = tiou::summarize(m.metric, sum);
    again.average_precision = m.average_precision;
    CHECK(again == m);
  }
  CHECK(find(r, MetricId::kAp).average_precision.has_value());
}

TEST_CASE("reports do not depend on worker count or image order") {
  const auto records = records_from(corpus(60, {}), false);
  tiou::EvalOptions opt;
  opt.per_image = true;
  const std::string one = tiou::report_to_json(tiou::evaluate_records(records, opt));
  opt.jobs = 4;
  CHECK(tiou::report_to_json(tiou::evaluate_records(records, opt)) == one);

  // Summaries survive reordering of the images.
  auto reversed = records;
  std::reverse(reversed.begin(), reversed.end());
  opt.per_image = false;
  const auto a = tiou::evaluate_records(records, opt);
  const auto b = tiou::evaluate_records(reversed, opt);
  for (std::size_t i = 0; i < a.metrics.size(); ++i) {
    CHECK(a.metrics[i].recall == doctest::Approx(b.metrics[i].recall).epsilon(1e-12));
    CHECK(a.metrics[i].precision ==
          doctest::Approx(b.metrics[i].precision).epsilon(1e-12));
  }
}

TEST_CASE("joint mode") {
  tiou::RandomSceneOptions o;
  o.min_words = 2;
  o.line_probability = 0.8;
  o.line_detections = true;
  const auto scenes = corpus(30, o);
  tiou::EvalOptions opt;
  opt.metrics = {MetricId::kIoU, MetricId::kTIoU};
  const auto joint = tiou::evaluate_records(records_from(scenes, true), opt);
  const auto words = tiou::evaluate_records(records_from(scenes, false), opt);
  CHECK(find(joint, MetricId::kIoU).recall > find(words, MetricId::kIoU).recall);
  CHECK(joint.config.at("joint_lines") == "true");

  opt.metrics = {MetricId::kSIoU};
  CHECK_THROWS_AS(tiou::evaluate_records(records_from(scenes, true), opt),
                  tiou::EvaluationError);
}

TEST_CASE("run_eval over files, including an empty submission") {
  const fs::path dir = fs::temp_directory_path() / "tiou_eval_files";
  fs::remove_all(dir);
  const auto scenes = tiou::make_equal_iou_quartet(
      tiou::Polygon::rectangle(0, 0, 100, 20), 2.0 / 3.0);
  tiou::RunConfig cfg;
  cfg.dataset.det_layout =
      tiou::dump_scenes(scenes, dir / "gt", dir / "det");
  cfg.gt = dir / "gt";
  cfg.det = dir / "det";
  cfg.eval.metrics = {MetricId::kIoU, MetricId::kTIoU};
  cfg.eval.per_image = true;
  const tiou::EvalReport r = tiou::run_eval(cfg);
  REQUIRE(r.images.size() == 4);
  // Every scene matches both detections.
  for (const auto& img : r.images) {
    CHECK(img.tallies.at("iou").recall_sum == 2.0);
  }
  CHECK(r.config.at("gt_format") == "icdar15-quad");

  fs::create_directories(dir / "empty");
  cfg.det = dir / "empty";
  const tiou::EvalReport e = tiou::run_eval(cfg);
  CHECK(find(e, MetricId::kIoU).recall == 0.0);
  CHECK(find(e, MetricId::kIoU).precision == 0.0);
  CHECK(e.warnings.size() == 4);
}

TEST_CASE("invalid configuration is rejected") {
  tiou::EvalOptions opt;
  opt.match.iou_threshold = 0.0;
  CHECK_THROWS_AS(tiou::evaluate_records({}, opt), tiou::ValidationError);
}
