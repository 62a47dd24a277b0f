// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

// Evaluation reports: a versioned JSON document plus a plain-text table.
//
// The JSON form is canonical: keys are sorted, doubles are written with
// round-trip precision, and the same report always serializes to the same
// bytes.

#ifndef TIOU_REPORT_H_
#define TIOU_REPORT_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tiou/aggregate.h"

namespace tiou {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "0.1.0";

struct PairRecord {
  std::size_t gt = 0;
  std::size_t det = 0;
  double iou = 0.0;
  double tiou_recall = 0.0;
  double tiou_precision = 0.0;

  friend bool operator==(const PairRecord&, const PairRecord&) = default;
};

struct ImageReport {
  std::string key;
  // Keyed by metric name.
  std::map<std::string, Tally> tallies;
  // One-to-one pairs behind iou / siou / tiou.
  std::vector<PairRecord> pairs;
  std::vector<std::string> warnings;

  friend bool operator==(const ImageReport&, const ImageReport&) = default;
};

struct EvalReport {
  int schema_version = kReportSchemaVersion;
  std::string tool_version{kToolVersion};
  // Echo of the effective configuration, as strings.
  std::map<std::string, std::string> config;
  // In the requested metric order.
  std::vector<MetricSummary> metrics;
  // Filled only when per-image output was requested, in key order.
  std::vector<ImageReport> images;
  std::vector<std::string> warnings;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

// Pretty-printed (two-space indent), newline-terminated.
std::string report_to_json(const EvalReport& report);

// Inverse of report_to_json. Throws ParseError on malformed input or an
// unsupported schema version.
EvalReport report_from_json(std::string_view text);

// One row per metric: recall, precision, hmean (and AP where present).
std::string report_to_text(const EvalReport& report);

}  // namespace tiou

#endif  // TIOU_REPORT_H_
