// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

#include "tiou/joint_line.h"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "tiou/errors.h"

namespace tiou {

namespace {

constexpr double kMembershipShare = 0.5;
// A member word at or above this coverage is recalled by the line match.
constexpr double kWordCoverage = 0.5;

std::vector<LineAnnotation> keep_populated(
    std::span<const Polygon> lines,
    std::vector<std::vector<std::size_t>> members, Diagnostics* diagnostics) {
  std::vector<LineAnnotation> out;
  for (std::size_t j = 0; j < lines.size(); ++j) {
    if (members[j].size() < 2) {
      if (diagnostics != nullptr) {
        diagnostics->warn("text line " + std::to_string(j) + " holds " +
                          std::to_string(members[j].size()) +
                          " word(s); dropped (a line needs at least two)");
      }
      continue;
    }
    std::sort(members[j].begin(), members[j].end());
    out.push_back({lines[j], std::move(members[j])});
  }
  return out;
}

}  // namespace

std::vector<LineAnnotation> build_line_index(std::span<const GtInstance> words,
                                             std::span<const Polygon> lines,
                                             Diagnostics* diagnostics) {
  std::vector<std::vector<std::size_t>> members(lines.size());
  std::unordered_map<std::size_t, std::size_t> owner;
  for (const GtInstance& w : words) {
    if (w.dont_care || !(w.polygon.area() > 0.0)) continue;
    for (std::size_t j = 0; j < lines.size(); ++j) {
      if (!lines[j].bounds().overlaps(w.polygon.bounds())) continue;
      const double share =
          intersection_area(lines[j], w.polygon) / w.polygon.area();
      if (!(share > kMembershipShare)) continue;
      if (const auto it = owner.find(w.id); it != owner.end()) {
        throw EvaluationError("word " + std::to_string(w.id) +
                              " belongs to text lines " +
                              std::to_string(it->second) + " and " +
                              std::to_string(j) + "; line annotations overlap");
      }
      owner.emplace(w.id, j);
      members[j].push_back(w.id);
    }
  }
  return keep_populated(lines, std::move(members), diagnostics);
}

std::vector<LineAnnotation> build_line_index(
    std::span<const GtInstance> words, std::span<const Polygon> lines,
    std::span<const std::vector<std::size_t>> membership,
    Diagnostics* diagnostics) {
  if (membership.size() != lines.size()) {
    throw EvaluationError("line membership lists " +
                          std::to_string(membership.size()) +
                          " lines but the annotation has " +
                          std::to_string(lines.size()));
  }
  std::unordered_map<std::size_t, const GtInstance*> by_id;
  for (const GtInstance& w : words) by_id[w.id] = &w;
  std::unordered_map<std::size_t, std::size_t> owner;
  std::vector<std::vector<std::size_t>> members(lines.size());
  for (std::size_t j = 0; j < lines.size(); ++j) {
    for (std::size_t id : membership[j]) {
      const auto it = by_id.find(id);
      if (it == by_id.end()) {
        throw EvaluationError("line " + std::to_string(j) +
                              " lists unknown word " + std::to_string(id));
      }
      if (it->second->dont_care) {
        throw EvaluationError("line " + std::to_string(j) +
                              " lists don't-care word " + std::to_string(id));
      }
      if (!owner.emplace(id, j).second) {
        throw EvaluationError("word " + std::to_string(id) +
                              " is listed by more than one line");
      }
      members[j].push_back(id);
    }
  }
  return keep_populated(lines, std::move(members), diagnostics);
}

JointResult evaluate_joint(std::span<const GtInstance> words,
                           std::span<const LineAnnotation> lines,
                           std::span<const Detection> dets,
                           const MatchConfig& cfg, Diagnostics* diagnostics) {
  cfg.validate();
  JointResult result;

  std::vector<GtInstance> dont_care_words;
  std::unordered_map<std::size_t, const GtInstance*> care_by_id;
  for (const GtInstance& w : words) {
    if (w.dont_care) {
      dont_care_words.push_back(w);
    } else {
      care_by_id[w.id] = &w;
    }
  }
  const std::vector<std::size_t> dont_care_det =
      filter_dont_care(dets, dont_care_words, cfg.dont_care_overlap);

  std::vector<const Detection*> order;
  for (const Detection& d : dets) order.push_back(&d);
  std::sort(order.begin(), order.end(),
            [](const Detection* a, const Detection* b) { return a->id < b->id; });

  std::vector<std::size_t> consumed_det;
  std::vector<std::size_t> demoted;
  double binary_recall = 0.0;
  double binary_precision = 0.0;
  double tiou_recall = 0.0;
  double tiou_precision = 0.0;

  // Stage 1: detections against text lines.
  for (const Detection* d : order) {
    if (std::binary_search(dont_care_det.begin(), dont_care_det.end(), d->id)) {
      continue;
    }
    std::size_t best = lines.size();
    double best_iou = 0.0;
    for (std::size_t j = 0; j < lines.size(); ++j) {
      if (!lines[j].polygon.bounds().overlaps(d->polygon.bounds())) continue;
      const double v = iou(lines[j].polygon, d->polygon);
      if (cfg.passes(v, cfg.iou_threshold) &&
          (best == lines.size() || v > best_iou)) {
        best = j;
        best_iou = v;
      }
    }
    if (best == lines.size()) continue;

    const LineAnnotation& line = lines[best];
    std::vector<Polygon> outliers;
    for (const GtInstance& w : words) {
      if (!w.dont_care &&
          !std::binary_search(line.member_word_ids.begin(),
                              line.member_word_ids.end(), w.id)) {
        outliers.push_back(w.polygon);
      }
    }
    const PairScore s = score_pair(line.polygon, d->polygon, outliers);

    LineMatch match;
    match.line = best;
    match.det = d->id;
    match.iou = s.iou;
    match.tiou_precision = s.tiou_precision;
    const double line_area = line.polygon.area();
    match.word_recall =
        s.intersection * (1.0 - s.ct / line_area) / line_area;

    for (std::size_t wid : line.member_word_ids) {
      if (std::find(demoted.begin(), demoted.end(), wid) != demoted.end()) {
        continue;
      }
      const Polygon& wp = care_by_id.at(wid)->polygon;
      const double coverage = intersection_area(wp, d->polygon) / wp.area();
      if (coverage < kWordCoverage) continue;  // left to the word stage
      match.recalled_words.push_back(wid);
      demoted.push_back(wid);
      binary_recall += 1.0;
      tiou_recall += match.word_recall;
    }
    binary_precision += 1.0;
    tiou_precision += match.tiou_precision;
    consumed_det.push_back(d->id);
    result.line_matches.push_back(std::move(match));
  }

  // Stages 2 and 3: recalled words become don't-care, which also re-runs the
  // don't-care detection filter, then the plain word-level pass.
  std::sort(consumed_det.begin(), consumed_det.end());
  std::vector<GtInstance> word_stage_words(words.begin(), words.end());
  for (GtInstance& w : word_stage_words) {
    if (std::find(demoted.begin(), demoted.end(), w.id) != demoted.end()) {
      w.dont_care = true;
    }
  }
  std::vector<Detection> word_stage_dets;
  for (const Detection& d : dets) {
    if (!std::binary_search(consumed_det.begin(), consumed_det.end(), d.id)) {
      word_stage_dets.push_back(d);
    }
  }
  result.word_stage =
      match_one_to_one(word_stage_words, word_stage_dets, cfg, diagnostics);

  const auto demoted_count = demoted.size();
  const auto consumed_count = consumed_det.size();
  result.binary = binary_tally(result.word_stage);
  result.binary.recall_sum += binary_recall;
  result.binary.precision_sum += binary_precision;
  result.binary.num_gt += demoted_count;
  result.binary.num_det += consumed_count;

  result.tiou = tiou_tally(result.word_stage);
  result.tiou.recall_sum += tiou_recall;
  result.tiou.precision_sum += tiou_precision;
  result.tiou.num_gt += demoted_count;
  result.tiou.num_det += consumed_count;
  return result;
}

}  // namespace tiou
