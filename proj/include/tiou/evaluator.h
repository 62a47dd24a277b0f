// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

// Dataset-level evaluation: per-image matching on a worker pool, then an
// in-order reduction, so the report does not depend on the worker count.

#ifndef TIOU_EVALUATOR_H_
#define TIOU_EVALUATOR_H_

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "tiou/aggregate.h"
#include "tiou/annotation_io.h"
#include "tiou/matching.h"
#include "tiou/report.h"

namespace tiou {

struct EvalOptions {
  // Empty selects default_metrics().
  std::vector<MetricId> metrics;
  MatchConfig match;
  EndToEndOptions end_to_end;
  ApInterpolation ap = ApInterpolation::kAllPoints;
  bool per_image = false;
  int jobs = 1;
};

struct RunConfig {
  std::filesystem::path gt;
  std::filesystem::path det;
  std::optional<std::filesystem::path> lines;
  DatasetOptions dataset;
  EvalOptions eval;
};

// iou, siou, tiou, deteval-ic13-order and ic03.
std::vector<MetricId> default_metrics();

// Evaluates already-loaded records. When the records carry line
// annotations, iou and tiou use joint word/line evaluation and siou, ap and
// e2e are rejected (EvaluationError). `warnings` are prepended to the
// report's warnings.
EvalReport evaluate_records(std::span<const ImageRecord> records,
                            const EvalOptions& options,
                            std::vector<std::string> warnings = {});

// Loads the dataset and evaluates it.
EvalReport run_eval(const RunConfig& config);

}  // namespace tiou

#endif  // TIOU_EVALUATOR_H_
