// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

// Assignment of detections to ground truth.
//
// Three families are supported: greedy one-to-one IoU matching (IC15 style,
// also used by SIoU/TIoU/AP/end-to-end), IC03 repeated best match, and the
// DetEval one-to-one / one-to-many / many-to-one stages in either of the two
// historical orders. Ids in every result are the `id` fields of the inputs.

#ifndef TIOU_MATCHING_H_
#define TIOU_MATCHING_H_

#include <cstddef>
#include <span>
#include <vector>

#include "tiou/instances.h"
#include "tiou/pair_metrics.h"

namespace tiou {

enum class MatchOrder {
  kOneToOneFirst,  // IC13: OO, then OM, then MO
  kManyFirst,      // DetEval: OM, then MO, then OO
};

enum class Comparison {
  kStrict,     // value > threshold
  kInclusive,  // value >= threshold
};

struct MatchConfig {
  double iou_threshold = 0.5;
  double tr = 0.8;  // DetEval recall-coverage threshold
  double tp = 0.4;  // DetEval precision-coverage threshold
  MatchOrder order = MatchOrder::kOneToOneFirst;
  double om_score = 0.8;
  double mo_score = 1.0;
  double dont_care_overlap = 0.5;
  Comparison comparison = Comparison::kStrict;

  // Throws ValidationError unless every fraction lies in (0, 1].
  void validate() const;
  bool passes(double value, double threshold) const {
    return comparison == Comparison::kStrict ? value > threshold
                                             : value >= threshold;
  }
};

struct MatchedPair {
  std::size_t gt = 0;
  std::size_t det = 0;
  PairScore score;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

// One ground truth covered by several detections.
struct OneToManyGroup {
  std::size_t gt = 0;
  std::vector<std::size_t> dets;

  friend bool operator==(const OneToManyGroup&, const OneToManyGroup&) =
      default;
};

// One detection covering several ground truths.
struct ManyToOneGroup {
  std::size_t det = 0;
  std::vector<std::size_t> gts;

  friend bool operator==(const ManyToOneGroup&, const ManyToOneGroup&) =
      default;
};

// Don't-care ground truth appears nowhere. Every other ground truth id
// appears exactly once across pairs / om_groups / mo_groups / unmatched_gt,
// and every detection id exactly once across pairs / om_groups / mo_groups /
// unmatched_det / dont_care_det.
struct MatchSet {
  std::vector<MatchedPair> pairs;
  std::vector<OneToManyGroup> om_groups;
  std::vector<ManyToOneGroup> mo_groups;
  std::vector<std::size_t> unmatched_gt;
  std::vector<std::size_t> unmatched_det;
  std::vector<std::size_t> dont_care_det;

  // Ground truth and detections that count towards the denominators.
  std::size_t num_gt() const;
  std::size_t num_det() const;

  friend bool operator==(const MatchSet&, const MatchSet&) = default;
};

// Ids of detections with more than `threshold` of their area inside a single
// don't-care region.
std::vector<std::size_t> filter_dont_care(
    std::span<const Detection> dets, std::span<const GtInstance> dont_care_gts,
    double threshold);

// Greedy one-to-one matching on IoU above cfg.iou_threshold. When every
// detection carries a confidence, detections are visited by descending
// confidence and each takes its best free ground truth; otherwise candidate
// pairs are accepted by descending IoU. Ties go to the lower detection id,
// then the lower ground-truth id. Don't-care ground truth is taken from the
// `dont_care` flags and the detections it absorbs are filtered first.
MatchSet match_one_to_one(std::span<const GtInstance> gts,
                          std::span<const Detection> dets,
                          const MatchConfig& cfg,
                          Diagnostics* diagnostics = nullptr);

struct BestMatch {
  std::size_t id = 0;
  double value = 0.0;

  friend bool operator==(const BestMatch&, const BestMatch&) = default;
};

struct Ic03Result {
  std::vector<BestMatch> gt_best;
  std::vector<BestMatch> det_best;
};

// Per-item best ic03_match_value over the other side. Repeated matching is
// allowed. Don't-care ground truth and the detections it absorbs are left
// out of both lists.
Ic03Result match_ic03(std::span<const GtInstance> gts,
                      std::span<const Detection> dets, const MatchConfig& cfg);

// DetEval OO/OM/MO matching in cfg.order. "Enough detections cover the
// ground truth" in OM is read as: summed recall coverage > tr.
MatchSet match_deteval(std::span<const GtInstance> gts,
                       std::span<const Detection> dets,
                       const MatchConfig& cfg);

}  // namespace tiou

#endif  // TIOU_MATCHING_H_
