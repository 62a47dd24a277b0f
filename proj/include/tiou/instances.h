// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TIOU_INSTANCES_H_
#define TIOU_INSTANCES_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tiou/geometry.h"

namespace tiou {

enum class Granularity { kWord, kLine };

struct GtInstance {
  std::size_t id = 0;
  Polygon polygon;
  std::optional<std::string> transcription;
  bool dont_care = false;
  Granularity granularity = Granularity::kWord;

  friend bool operator==(const GtInstance&, const GtInstance&) = default;
};

struct Detection {
  std::size_t id = 0;
  Polygon polygon;
  std::optional<double> confidence;
  std::optional<std::string> transcription;

  friend bool operator==(const Detection&, const Detection&) = default;
};

// Warnings raised while loading or evaluating. Kept in emission order.
struct Diagnostics {
  std::vector<std::string> warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
};

}  // namespace tiou

#endif  // TIOU_INSTANCES_H_
