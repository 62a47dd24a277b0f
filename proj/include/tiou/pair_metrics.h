// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

// Scores for a single (ground truth, detection) pair.

#ifndef TIOU_PAIR_METRICS_H_
#define TIOU_PAIR_METRICS_H_

#include <span>

#include "tiou/geometry.h"

namespace tiou {

struct PairScore {
  double iou = 0.0;
  double intersection = 0.0;
  // Area of the ground truth left uncovered by the detection.
  double ct = 0.0;
  // Area of the detection covered by other ground truth, outside the target.
  double ot = 0.0;
  double tiou_recall = 0.0;
  double tiou_precision = 0.0;

  friend bool operator==(const PairScore&, const PairScore&) = default;
};

struct CoverageRatios {
  double recall = 0.0;     // |G ∩ D| / |G|
  double precision = 0.0;  // |G ∩ D| / |D|
};

double iou(const Polygon& gt, const Polygon& det);

// IoU scaled by the covered fraction of the ground truth. Penalises
// detections that cut the target.
double tiou_recall(const Polygon& gt, const Polygon& det);

// IoU scaled by the fraction of the detection not taken up by other ground
// truth lying outside the target. `others` must exclude `gt` and any
// don't-care regions.
double tiou_precision(const Polygon& gt, const Polygon& det,
                      std::span<const Polygon> others);

CoverageRatios coverage_ratios(const Polygon& gt, const Polygon& det);

// 2|a ∩ b| / (|a| + |b|).
double ic03_match_value(const Polygon& a, const Polygon& b);

// All of the above for one pair, sharing a single intersection computation.
PairScore score_pair(const Polygon& gt, const Polygon& det,
                     std::span<const Polygon> others);

}  // namespace tiou

#endif  // TIOU_PAIR_METRICS_H_
