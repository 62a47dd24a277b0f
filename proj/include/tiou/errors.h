// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TIOU_ERRORS_H_
#define TIOU_ERRORS_H_

#include <stdexcept>
#include <string>

namespace tiou {

// Invalid geometry: too few vertices, non-finite coordinates, self-intersection.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed annotation or detection input. The message carries the source
// name and 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dataset-level problems: orphan detection files, duplicate keys,
// unreadable archives, a metric that cannot be computed on the inputs.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tiou

#endif  // TIOU_ERRORS_H_
