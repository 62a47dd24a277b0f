// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

// Synthetic scenes with closed-form geometry.
//
// The constructions reproduce the classic failure modes of threshold
// metrics: a detection cutting its target, a loose detection, a detection
// swallowing a neighbouring word, over-segmentation gaming DetEval's
// one-to-many rule, and matching-order artefacts. Every scene is built from
// axis-aligned rectangles so its areas are known analytically; rotated
// variants come from rotating a solved scene.

#ifndef TIOU_HARNESS_H_
#define TIOU_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tiou/annotation_io.h"
#include "tiou/instances.h"
#include "tiou/matching.h"

namespace tiou {

struct Scene {
  std::string label;
  std::vector<GtInstance> gts;
  std::vector<Detection> dets;
  // Text-line polygons, for joint evaluation.
  std::vector<Polygon> lines;
};

enum class PerturbKind { kCut, kDilate, kOutlier, kOversegment };

struct PerturbSpec {
  PerturbKind kind = PerturbKind::kCut;
  // Fraction in (0, 1) for cut / dilate / outlier, count >= 2 for
  // oversegment.
  double magnitude = 0.2;
  std::uint64_t seed = 0;
};

// Shifts a copy of the axis-aligned rectangle `gt` along x by
// cut_fraction * width, then widens it on the far side until IoU with `gt`
// equals target_iou. Without a target the shifted copy is returned as is.
// Throws ValidationError when the target exceeds
// (1 - cut) / (1 + cut), the best a shifted copy can reach.
Detection make_cut_detection(const Polygon& gt, double cut_fraction,
                             std::optional<double> target_iou = std::nullopt);

// Four scenes with IoU(target, detection) == iou_target: "cutting",
// "pure" (detection contains the target), "outlier" (pure, also clipping a
// second word) and "cutting+outlier". Each scene also holds that second word
// with a perfect detection of its own, so threshold metrics see identical
// scenes. The outlier share of the detection is the same in both outlier
// scenes. `gt` must be an axis-aligned rectangle; iou_target in (0.5, 1).
std::vector<Scene> make_equal_iou_quartet(const Polygon& gt, double iou_target);

// k equal slices tiling the axis-aligned rectangle `gt` along x. k >= 2.
std::vector<Detection> make_oversegmentation(const Polygon& gt, int k);

// `gt` covered by k slices, plus `false_positives` detections placed away
// from it.
Scene make_oversegmentation_scene(const Polygon& gt, int k,
                                  int false_positives);

// Three words in a row under one long detection; a small detection sits
// exactly on the first word. OO-first matching pairs the small detection
// with that word and the long detection can no longer form a many-to-one
// group; OM/MO-first matching lets the long detection recall all three.
Scene make_matching_order_scene();

// Applies one perturbation to a rectangle ground truth. Cut and dilate
// return one detection; outlier returns a detection plus the outlier word
// it clips (appended to `extra_gts`); oversegment returns the slices.
std::vector<Detection> perturb(const Polygon& gt, const PerturbSpec& spec,
                               std::vector<Polygon>* extra_gts = nullptr);

struct RandomSceneOptions {
  int min_words = 1;
  int max_words = 8;
  double canvas = 1000.0;
  // Probability that a word is grouped into a text line with its successor.
  double line_probability = 0.0;
  // Emit detections for whole text lines instead of their words.
  bool line_detections = false;
  bool confidences = true;
  bool rotate = true;
};

// Random words with a mix of exact, jittered, cut, dilated, missed and
// spurious detections. Same seed, same options: bit-identical scene.
Scene random_scene(std::uint64_t seed, const RandomSceneOptions& options = {});

// Rotates every polygon of the scene about `center`.
Scene rotate_scene(const Scene& scene, double radians, Point center);

struct ComparisonRow {
  std::string label;
  double iou_f = 0.0;
  double siou_f = 0.0;
  double tiou_f = 0.0;
  double deteval_f = 0.0;
  double ic03_f = 0.0;
};

// One row per scene; DetEval uses cfg.order.
std::vector<ComparisonRow> compare_metrics(std::span<const Scene> scenes,
                                           const MatchConfig& cfg = {});

// Writes gt_<key>.txt, res_<key>.txt and lines_<key>.txt into gt_dir /
// det_dir / line_dir, keyed by scene label. The detection files carry a
// confidence (transcription) column when every detection of every scene has
// one; the layout used is returned.
DetectionLayout dump_scenes(std::span<const Scene> scenes,
                 const std::filesystem::path& gt_dir,
                 const std::filesystem::path& det_dir,
                 const std::optional<std::filesystem::path>& line_dir =
                     std::nullopt);

}  // namespace tiou

#endif  // TIOU_HARNESS_H_
