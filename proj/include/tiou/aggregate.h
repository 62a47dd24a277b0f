// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

// Dataset-level recall / precision / Hmean.
//
// Every protocol reduces an image to a Tally: a recall numerator over the
// care ground-truth count and a precision numerator over the care detection
// count. Tallies are summed across images (micro-averaging) and only then
// turned into a MetricSummary, so the reduction is associative and
// order-independent.

#ifndef TIOU_AGGREGATE_H_
#define TIOU_AGGREGATE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tiou/instances.h"
#include "tiou/matching.h"

namespace tiou {

enum class MetricId {
  kIc03,
  kDetEvalIc13Order,
  kDetEvalOrder,
  kIoU,
  kSIoU,
  kTIoU,
  kAp,
  kEndToEnd,
};

std::string_view metric_name(MetricId id);
// Throws EvaluationError for an unknown name.
MetricId parse_metric(std::string_view name);
std::span<const MetricId> all_metrics();

struct Tally {
  double recall_sum = 0.0;
  double precision_sum = 0.0;
  std::size_t num_gt = 0;
  std::size_t num_det = 0;

  Tally& operator+=(const Tally& o) {
    recall_sum += o.recall_sum;
    precision_sum += o.precision_sum;
    num_gt += o.num_gt;
    num_det += o.num_det;
    return *this;
  }
  friend bool operator==(const Tally&, const Tally&) = default;
};

struct MetricSummary {
  MetricId metric = MetricId::kIoU;
  double recall = 0.0;
  double precision = 0.0;
  double hmean = 0.0;
  std::size_t num_gt = 0;
  std::size_t num_det = 0;
  // Only set for MetricId::kAp.
  std::optional<double> average_precision;

  friend bool operator==(const MetricSummary&, const MetricSummary&) = default;
};

// 2rp / (r + p), and 0 when r + p == 0.
double hmean(double recall, double precision);

// Empty denominators: no ground truth gives recall 1, no detections gives
// precision 0.
MetricSummary summarize(MetricId metric, const Tally& tally);

Tally binary_tally(const MatchSet& ms);
Tally siou_tally(const MatchSet& ms);
Tally tiou_tally(const MatchSet& ms);
// OO pairs score 1/1, OM groups cfg.om_score per ground truth and per
// detection, MO groups cfg.mo_score likewise.
Tally deteval_tally(const MatchSet& ms, const MatchConfig& cfg);
Tally ic03_tally(const Ic03Result& result);

struct EndToEndOptions {
  bool case_sensitive = false;
};

// Transcription equality after trimming surrounding whitespace; case folding
// covers ASCII letters only.
bool transcriptions_match(std::string_view gt, std::string_view det,
                          const EndToEndOptions& options);

// A matched pair counts only when its transcriptions agree. A missing
// detection transcription is a mismatch.
Tally end_to_end_tally(const MatchSet& ms, std::span<const GtInstance> gts,
                       std::span<const Detection> dets,
                       const EndToEndOptions& options = {});

MetricSummary binary_scores(const MatchSet& ms);
MetricSummary siou_scores(const MatchSet& ms);
MetricSummary tiou_scores(const MatchSet& ms);
MetricSummary ic03_scores(const Ic03Result& result);
MetricSummary end_to_end_scores(const MatchSet& ms,
                                std::span<const GtInstance> gts,
                                std::span<const Detection> dets,
                                const EndToEndOptions& options = {});

struct RankedDetection {
  double confidence = 0.0;
  bool correct = false;

  friend bool operator==(const RankedDetection&, const RankedDetection&) =
      default;
};

enum class ApInterpolation { kAllPoints, kElevenPoint };

// Confidence/correctness of every non-don't-care detection of one image,
// in detection-id order. Throws EvaluationError when a detection has no
// confidence.
std::vector<RankedDetection> rank_detections(const MatchSet& ms,
                                             std::span<const Detection> dets);

// Interpolated average precision. Detections are stably sorted by
// descending confidence, so ties keep their input order.
double average_precision(std::span<const RankedDetection> dets,
                         std::size_t num_gt,
                         ApInterpolation interpolation =
                             ApInterpolation::kAllPoints);

}  // namespace tiou

#endif  // TIOU_AGGREGATE_H_
