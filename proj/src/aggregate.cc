// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

#include "tiou/aggregate.h"

#include <algorithm>
#include <array>
#include <string>
#include <unordered_map>

#include "tiou/errors.h"

namespace tiou {

namespace {

constexpr std::array kMetrics = {
    MetricId::kIc03, MetricId::kDetEvalIc13Order, MetricId::kDetEvalOrder,
    MetricId::kIoU,  MetricId::kSIoU,             MetricId::kTIoU,
    MetricId::kAp,   MetricId::kEndToEnd,
};

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(kSpace);
  return s.substr(b, e - b + 1);
}

char fold(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace

std::string_view metric_name(MetricId id) {
  switch (id) {
    case MetricId::kIc03: return "ic03";
    case MetricId::kDetEvalIc13Order: return "deteval-ic13-order";
    case MetricId::kDetEvalOrder: return "deteval-deteval-order";
    case MetricId::kIoU: return "iou";
    case MetricId::kSIoU: return "siou";
    case MetricId::kTIoU: return "tiou";
    case MetricId::kAp: return "ap";
    case MetricId::kEndToEnd: return "e2e";
  }
  return "unknown";
}

MetricId parse_metric(std::string_view name) {
  for (MetricId id : kMetrics) {
    if (metric_name(id) == name) return id;
  }
  throw EvaluationError("unknown metric '" + std::string(name) + "'");
}

std::span<const MetricId> all_metrics() { return kMetrics; }

double hmean(double recall, double precision) {
  if (recall <= 0.0 || precision <= 0.0) return 0.0;
  // Harmonic form: every step is a correctly rounded monotone operation, so
  // the result never increases when either input decreases.
  return 2.0 / (1.0 / recall + 1.0 / precision);
}

MetricSummary summarize(MetricId metric, const Tally& tally) {
  MetricSummary s;
  s.metric = metric;
  s.num_gt = tally.num_gt;
  s.num_det = tally.num_det;
  s.recall = tally.num_gt == 0
                 ? 1.0
                 : tally.recall_sum / static_cast<double>(tally.num_gt);
  s.precision = tally.num_det == 0
                    ? 0.0
                    : tally.precision_sum / static_cast<double>(tally.num_det);
  s.hmean = hmean(s.recall, s.precision);
  return s;
}

Tally binary_tally(const MatchSet& ms) {
  const auto hits = static_cast<double>(ms.pairs.size());
  return {hits, hits, ms.num_gt(), ms.num_det()};
}

Tally siou_tally(const MatchSet& ms) {
  Tally t{0.0, 0.0, ms.num_gt(), ms.num_det()};
  for (const MatchedPair& p : ms.pairs) {
    t.recall_sum += p.score.iou;
    t.precision_sum += p.score.iou;
  }
  return t;
}

Tally tiou_tally(const MatchSet& ms) {
  Tally t{0.0, 0.0, ms.num_gt(), ms.num_det()};
  for (const MatchedPair& p : ms.pairs) {
    t.recall_sum += p.score.tiou_recall;
    t.precision_sum += p.score.tiou_precision;
  }
  return t;
}

Tally deteval_tally(const MatchSet& ms, const MatchConfig& cfg) {
  Tally t{0.0, 0.0, ms.num_gt(), ms.num_det()};
  const auto oo = static_cast<double>(ms.pairs.size());
  t.recall_sum += oo;
  t.precision_sum += oo;
  for (const OneToManyGroup& g : ms.om_groups) {
    t.recall_sum += cfg.om_score;
    t.precision_sum += cfg.om_score * static_cast<double>(g.dets.size());
  }
  for (const ManyToOneGroup& g : ms.mo_groups) {
    t.recall_sum += cfg.mo_score * static_cast<double>(g.gts.size());
    t.precision_sum += cfg.mo_score;
  }
  return t;
}

Tally ic03_tally(const Ic03Result& result) {
  Tally t{0.0, 0.0, result.gt_best.size(), result.det_best.size()};
  for (const BestMatch& b : result.gt_best) t.recall_sum += b.value;
  for (const BestMatch& b : result.det_best) t.precision_sum += b.value;
  return t;
}

bool transcriptions_match(std::string_view gt, std::string_view det,
                          const EndToEndOptions& options) {
  gt = trim(gt);
  det = trim(det);
  if (gt.size() != det.size()) return false;
  if (options.case_sensitive) return gt == det;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (fold(gt[i]) != fold(det[i])) return false;
  }
  return true;
}

Tally end_to_end_tally(const MatchSet& ms, std::span<const GtInstance> gts,
                       std::span<const Detection> dets,
                       const EndToEndOptions& options) {
  std::unordered_map<std::size_t, const GtInstance*> gt_by_id;
  std::unordered_map<std::size_t, const Detection*> det_by_id;
  for (const GtInstance& g : gts) gt_by_id[g.id] = &g;
  for (const Detection& d : dets) det_by_id[d.id] = &d;

  Tally t{0.0, 0.0, ms.num_gt(), ms.num_det()};
  for (const MatchedPair& p : ms.pairs) {
    const GtInstance* g = gt_by_id.at(p.gt);
    const Detection* d = det_by_id.at(p.det);
    if (g->transcription && d->transcription &&
        transcriptions_match(*g->transcription, *d->transcription, options)) {
      t.recall_sum += 1.0;
      t.precision_sum += 1.0;
    }
  }
  return t;
}

MetricSummary binary_scores(const MatchSet& ms) {
  return summarize(MetricId::kIoU, binary_tally(ms));
}

MetricSummary siou_scores(const MatchSet& ms) {
  return summarize(MetricId::kSIoU, siou_tally(ms));
}

MetricSummary tiou_scores(const MatchSet& ms) {
  return summarize(MetricId::kTIoU, tiou_tally(ms));
}

MetricSummary ic03_scores(const Ic03Result& result) {
  return summarize(MetricId::kIc03, ic03_tally(result));
}

MetricSummary end_to_end_scores(const MatchSet& ms,
                                std::span<const GtInstance> gts,
                                std::span<const Detection> dets,
                                const EndToEndOptions& options) {
  return summarize(MetricId::kEndToEnd,
                   end_to_end_tally(ms, gts, dets, options));
}

std::vector<RankedDetection> rank_detections(const MatchSet& ms,
                                             std::span<const Detection> dets) {
  std::vector<std::size_t> matched;
  for (const MatchedPair& p : ms.pairs) matched.push_back(p.det);
  std::sort(matched.begin(), matched.end());

  std::vector<RankedDetection> out;
  for (const Detection& d : dets) {
    if (std::binary_search(ms.dont_care_det.begin(), ms.dont_care_det.end(),
                           d.id)) {
      continue;
    }
    if (!d.confidence) {
      throw EvaluationError(
          "average precision needs a confidence on every detection (detection " +
          std::to_string(d.id) +
          " has none); use iou, siou or tiou for confidence-free submissions");
    }
    out.push_back({*d.confidence,
                   std::binary_search(matched.begin(), matched.end(), d.id)});
  }
  return out;
}

double average_precision(std::span<const RankedDetection> dets,
                         std::size_t num_gt, ApInterpolation interpolation) {
  if (num_gt == 0) return 0.0;
  std::vector<RankedDetection> sorted(dets.begin(), dets.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const RankedDetection& a, const RankedDetection& b) {
                     return a.confidence > b.confidence;
                   });

  std::vector<double> recall;
  std::vector<double> precision;
  double tp = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].correct) tp += 1.0;
    recall.push_back(tp / static_cast<double>(num_gt));
    precision.push_back(tp / static_cast<double>(i + 1));
  }

  if (interpolation == ApInterpolation::kElevenPoint) {
    double sum = 0.0;
    for (int k = 0; k <= 10; ++k) {
      const double level = k / 10.0;
      double best = 0.0;
      for (std::size_t i = 0; i < recall.size(); ++i) {
        if (recall[i] >= level) best = std::max(best, precision[i]);
      }
      sum += best;
    }
    return sum / 11.0;
  }

  // All-points: precision envelope integrated over recall steps.
  std::vector<double> envelope = precision;
  for (std::size_t i = envelope.size(); i-- > 1;) {
    envelope[i - 1] = std::max(envelope[i - 1], envelope[i]);
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t i = 0; i < recall.size(); ++i) {
    if (recall[i] > prev_recall) {
      ap += (recall[i] - prev_recall) * envelope[i];
      prev_recall = recall[i];
    }
  }
  return ap;
}

}  // namespace tiou
