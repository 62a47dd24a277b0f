// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

// tiou: evaluate text-detection submissions, print the metric comparison
// demo, or generate synthetic datasets.
//
//   tiou eval --gt gt.zip --det submit.zip [--lines lines.zip] [--metrics ...]
//   tiou demo
//   tiou gen --out DIR [--count N] [--seed S] [--lines]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tiou/errors.h"
#include "tiou/evaluator.h"
#include "tiou/harness.h"

namespace {

std::vector<tiou::MetricId> parse_metric_list(const std::string& list) {
  std::vector<tiou::MetricId> out;
  std::stringstream in(list);
  for (std::string name; std::getline(in, name, ',');) {
    if (name == "all") {
      const auto all = tiou::all_metrics();
      out.insert(out.end(), all.begin(), all.end());
    } else if (!name.empty()) {
      out.push_back(tiou::parse_metric(name));
    }
  }
  return out;
}

void print_rows(const std::string& title,
                const std::vector<tiou::ComparisonRow>& rows) {
  std::printf("%s\n%-22s %8s %8s %8s %8s %8s\n", title.c_str(), "scene",
              "iou", "siou", "tiou", "deteval", "ic03");
  for (const auto& r : rows) {
    std::printf("%-22s %8.4f %8.4f %8.4f %8.4f %8.4f\n", r.label.c_str(),
                r.iou_f, r.siou_f, r.tiou_f, r.deteval_f, r.ic03_f);
  }
  std::printf("\n");
}

int run_demo(double iou_target) {
  const tiou::Polygon gt = tiou::Polygon::rectangle(0, 0, 100, 20);
  print_rows("Equal-IoU detections (IoU " + std::to_string(iou_target) + ")",
             tiou::compare_metrics(tiou::make_equal_iou_quartet(gt, iou_target)));

  const std::vector<tiou::Scene> overseg = {
      tiou::make_oversegmentation_scene(gt, 20, 3)};
  print_rows("Over-segmentation", tiou::compare_metrics(overseg));

  const std::vector<tiou::Scene> order = {tiou::make_matching_order_scene()};
  tiou::MatchConfig many_first;
  many_first.order = tiou::MatchOrder::kManyFirst;
  print_rows("Matching order: one-to-one first", tiou::compare_metrics(order));
  print_rows("Matching order: many first",
             tiou::compare_metrics(order, many_first));
  return 0;
}

int run_gen(const std::string& out, int count, std::uint64_t seed,
            bool lines) {
  namespace fs = std::filesystem;
  std::vector<tiou::Scene> scenes;
  const tiou::Polygon gt = tiou::Polygon::rectangle(0, 0, 100, 20);
  if (!lines) {
    scenes = tiou::make_equal_iou_quartet(gt, 2.0 / 3.0);
    scenes.push_back(tiou::make_oversegmentation_scene(gt, 20, 3));
    scenes.push_back(tiou::make_matching_order_scene());
  }
  tiou::RandomSceneOptions opts;
  if (lines) {
    opts.min_words = 2;
    opts.line_probability = 0.6;
    opts.line_detections = true;
  }
  for (int i = 0; i < count; ++i) {
    scenes.push_back(
        tiou::random_scene(seed + static_cast<std::uint64_t>(i), opts));
  }
  const fs::path root(out);
  const tiou::DetectionLayout layout = tiou::dump_scenes(
      scenes, root / "gt", root / "det",
      lines ? std::optional<fs::path>(root / "lines") : std::nullopt);
  std::printf("wrote %zu scenes to %s (detections: confidence=%s, "
              "transcription=%s)\n",
              scenes.size(), out.c_str(), layout.confidence ? "yes" : "no",
              layout.transcription ? "yes" : "no");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tightness-aware text-detection evaluation"};
  app.require_subcommand(1);

  // eval
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a submission");
  tiou::RunConfig cfg;
  std::string lines_path, metrics = "iou,siou,tiou,deteval-ic13-order,ic03";
  std::string gt_format = "icdar15-quad", det_format = "icdar15-quad";
  std::string format = "text", report_path;
  bool inclusive = false, eleven_point = false;
  eval->add_option("--gt", cfg.gt, "Ground-truth zip or directory")
      ->required();
  eval->add_option("--det", cfg.det, "Detection zip or directory")->required();
  eval->add_option("--lines", lines_path,
                   "Text-line zip or directory (enables joint evaluation)");
  eval->add_option("--metrics", metrics,
                   "Comma-separated: ic03, deteval-ic13-order, "
                   "deteval-deteval-order, iou, siou, tiou, ap, e2e, all")
      ->capture_default_str();
  eval->add_option("--iou-threshold", cfg.eval.match.iou_threshold)
      ->capture_default_str();
  eval->add_option("--tr", cfg.eval.match.tr, "DetEval recall threshold")
      ->capture_default_str();
  eval->add_option("--tp", cfg.eval.match.tp, "DetEval precision threshold")
      ->capture_default_str();
  eval->add_option("--om-score", cfg.eval.match.om_score)
      ->capture_default_str();
  eval->add_option("--mo-score", cfg.eval.match.mo_score)
      ->capture_default_str();
  eval->add_option("--dont-care-overlap", cfg.eval.match.dont_care_overlap)
      ->capture_default_str();
  eval->add_flag("--inclusive", inclusive,
                 "Compare thresholds with >= instead of >");
  eval->add_option("--gt-format", gt_format, "icdar15-quad or icdar13-rect")
      ->capture_default_str();
  eval->add_option("--det-format", det_format, "icdar15-quad or icdar13-rect")
      ->capture_default_str();
  eval->add_flag("--det-confidence", cfg.dataset.det_layout.confidence,
                 "Detections carry a confidence column");
  eval->add_flag("--det-transcription", cfg.dataset.det_layout.transcription,
                 "Detections carry a transcription column");
  eval->add_option("--gt-pattern", cfg.dataset.gt_pattern)
      ->capture_default_str();
  eval->add_option("--det-pattern", cfg.dataset.det_pattern)
      ->capture_default_str();
  eval->add_option("--line-pattern", cfg.dataset.line_pattern)
      ->capture_default_str();
  eval->add_option("--membership-pattern", cfg.dataset.membership_pattern)
      ->capture_default_str();
  eval->add_option("--dont-care", cfg.dataset.parse.dont_care_sentinel,
                   "Don't-care transcription")
      ->capture_default_str();
  eval->add_flag("--strict-formats", cfg.dataset.parse.strict,
                 "Reject degenerate polygons instead of warning");
  eval->add_flag("--case-sensitive", cfg.eval.end_to_end.case_sensitive);
  eval->add_flag("--ap-11-point", eleven_point,
                 "11-point interpolated average precision");
  eval->add_option("--format", format)
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  eval->add_option("--report", report_path, "Also write the JSON report here");
  eval->add_flag("--per-image", cfg.eval.per_image, "Per-image breakdown");
  eval->add_option("--jobs", cfg.eval.jobs, "Worker threads (0: all cores)")
      ->capture_default_str();

  // demo
  CLI::App* demo = app.add_subcommand("demo", "Compare metrics on "
                                              "synthetic failure cases");
  double iou_target = 2.0 / 3.0;
  demo->add_option("--iou", iou_target, "IoU of the equal-IoU detections")
      ->capture_default_str();

  // gen
  CLI::App* gen = app.add_subcommand("gen", "Write a synthetic dataset");
  std::string out_dir;
  int count = 100;
  std::uint64_t seed = 1;
  bool gen_lines = false;
  gen->add_option("--out", out_dir, "Output directory")->required();
  gen->add_option("--count", count, "Random scenes")->capture_default_str();
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_flag("--lines", gen_lines,
                "Text-line scenes with line-level detections");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*demo) return run_demo(iou_target);
    if (*gen) return run_gen(out_dir, count, seed, gen_lines);

    if (!lines_path.empty()) cfg.lines = lines_path;
    cfg.eval.metrics = parse_metric_list(metrics);
    if (inclusive) cfg.eval.match.comparison = tiou::Comparison::kInclusive;
    if (eleven_point) cfg.eval.ap = tiou::ApInterpolation::kElevenPoint;
    cfg.dataset.gt_format = tiou::parse_box_format(gt_format);
    cfg.dataset.det_layout.format = tiou::parse_box_format(det_format);

    const tiou::EvalReport report = tiou::run_eval(cfg);
    const std::string json = tiou::report_to_json(report);
    if (!report_path.empty()) {
      std::ofstream f(report_path, std::ios::binary | std::ios::trunc);
      if (!f) throw tiou::EvaluationError("cannot write " + report_path);
      f << json;
    }
    std::cout << (format == "json" ? json : tiou::report_to_text(report));
    for (const std::string& w : report.warnings) {
      std::cerr << "warning: " << w << "\n";
    }
    return 0;
  } catch (const tiou::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const tiou::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
  } catch (const tiou::EvaluationError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}
