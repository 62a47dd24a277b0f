// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

// Joint word & text-line evaluation.
//
// Detections are first scored against auxiliary text-line annotations. A
// detection matching a line is consumed; every member word it covers well
// enough is credited with the line-level TIoU recall and turned into a
// don't-care region. The remaining detections and words then go through the
// ordinary one-to-one word-level pass.

#ifndef TIOU_JOINT_LINE_H_
#define TIOU_JOINT_LINE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tiou/aggregate.h"
#include "tiou/instances.h"
#include "tiou/matching.h"

namespace tiou {

struct LineAnnotation {
  Polygon polygon;
  std::vector<std::size_t> member_word_ids;  // sorted, never don't-care

  friend bool operator==(const LineAnnotation&, const LineAnnotation&) =
      default;
};

// Assigns each care word to the line holding more than half of its area.
// Lines with fewer than two members are dropped with a warning. A word that
// qualifies for two lines is an error (EvaluationError).
std::vector<LineAnnotation> build_line_index(
    std::span<const GtInstance> words, std::span<const Polygon> lines,
    Diagnostics* diagnostics = nullptr);

// Same contract with membership given explicitly (one id list per line).
// Don't-care and unknown ids are rejected, as is a word listed twice.
std::vector<LineAnnotation> build_line_index(
    std::span<const GtInstance> words, std::span<const Polygon> lines,
    std::span<const std::vector<std::size_t>> membership,
    Diagnostics* diagnostics = nullptr);

struct LineMatch {
  std::size_t line = 0;  // index into the line list
  std::size_t det = 0;
  double iou = 0.0;
  double tiou_precision = 0.0;
  // (A(T ∩ D) / A(T))^2: the recall credited to each recalled word.
  double word_recall = 0.0;
  std::vector<std::size_t> recalled_words;

  friend bool operator==(const LineMatch&, const LineMatch&) = default;
};

struct JointResult {
  std::vector<LineMatch> line_matches;
  // Word-level pass over what the line stage left.
  MatchSet word_stage;
  Tally binary;
  Tally tiou;
};

// Lines must come from build_line_index over the same words.
JointResult evaluate_joint(std::span<const GtInstance> words,
                           std::span<const LineAnnotation> lines,
                           std::span<const Detection> dets,
                           const MatchConfig& cfg,
                           Diagnostics* diagnostics = nullptr);

}  // namespace tiou

#endif  // TIOU_JOINT_LINE_H_
