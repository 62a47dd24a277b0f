// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

#include "tiou/evaluator.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <map>
#include <thread>

#include "tiou/errors.h"
#include "tiou/joint_line.h"

namespace tiou {

namespace {

struct ImageResult {
  std::map<MetricId, Tally> tallies;
  std::vector<RankedDetection> ranked;
  std::vector<PairRecord> pairs;
  std::vector<std::string> warnings;
};

bool wants(std::span<const MetricId> metrics, MetricId id) {
  return std::find(metrics.begin(), metrics.end(), id) != metrics.end();
}

std::string number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<PairRecord> pair_records(const MatchSet& ms) {
  std::vector<PairRecord> out;
  for (const MatchedPair& p : ms.pairs) {
    out.push_back({p.gt, p.det, p.score.iou, p.score.tiou_recall,
                   p.score.tiou_precision});
  }
  return out;
}

ImageResult evaluate_image(const ImageRecord& rec,
                           std::span<const MetricId> metrics,
                           const EvalOptions& opt) {
  ImageResult r;
  Diagnostics diag;
  const MatchConfig& cfg = opt.match;
  const bool joint = rec.lines.has_value();

  const bool need_oo = wants(metrics, MetricId::kIoU) ||
                       wants(metrics, MetricId::kSIoU) ||
                       wants(metrics, MetricId::kTIoU) ||
                       wants(metrics, MetricId::kAp) ||
                       wants(metrics, MetricId::kEndToEnd);
  if (need_oo && joint) {
    const JointResult jr =
        evaluate_joint(rec.gts, *rec.lines, rec.dets, cfg, &diag);
    if (wants(metrics, MetricId::kIoU)) r.tallies[MetricId::kIoU] = jr.binary;
    if (wants(metrics, MetricId::kTIoU)) r.tallies[MetricId::kTIoU] = jr.tiou;
    r.pairs = pair_records(jr.word_stage);
  } else if (need_oo) {
    const MatchSet ms = match_one_to_one(rec.gts, rec.dets, cfg, &diag);
    if (wants(metrics, MetricId::kIoU)) {
      r.tallies[MetricId::kIoU] = binary_tally(ms);
    }
    if (wants(metrics, MetricId::kSIoU)) {
      r.tallies[MetricId::kSIoU] = siou_tally(ms);
    }
    if (wants(metrics, MetricId::kTIoU)) {
      r.tallies[MetricId::kTIoU] = tiou_tally(ms);
    }
    if (wants(metrics, MetricId::kEndToEnd)) {
      r.tallies[MetricId::kEndToEnd] =
          end_to_end_tally(ms, rec.gts, rec.dets, opt.end_to_end);
    }
    if (wants(metrics, MetricId::kAp)) {
      r.tallies[MetricId::kAp] = binary_tally(ms);
      r.ranked = rank_detections(ms, rec.dets);
    }
    r.pairs = pair_records(ms);
  }
  for (MetricId id : {MetricId::kDetEvalIc13Order, MetricId::kDetEvalOrder}) {
    if (!wants(metrics, id)) continue;
    MatchConfig c = cfg;
    c.order = id == MetricId::kDetEvalIc13Order ? MatchOrder::kOneToOneFirst
                                                : MatchOrder::kManyFirst;
    r.tallies[id] = deteval_tally(match_deteval(rec.gts, rec.dets, c), c);
  }
  if (wants(metrics, MetricId::kIc03)) {
    r.tallies[MetricId::kIc03] = ic03_tally(match_ic03(rec.gts, rec.dets, cfg));
  }
  for (std::string& w : diag.warnings) {
    r.warnings.push_back(rec.key + ": " + std::move(w));
  }
  return r;
}

std::map<std::string, std::string> config_echo(
    std::span<const MetricId> metrics, const EvalOptions& opt, bool joint) {
  std::string names;
  for (MetricId id : metrics) {
    if (!names.empty()) names += ',';
    names += metric_name(id);
  }
  const MatchConfig& c = opt.match;
  return {
      {"metrics", names},
      {"iou_threshold", number(c.iou_threshold)},
      {"tr", number(c.tr)},
      {"tp", number(c.tp)},
      {"om_score", number(c.om_score)},
      {"mo_score", number(c.mo_score)},
      {"dont_care_overlap", number(c.dont_care_overlap)},
      {"comparison", c.comparison == Comparison::kStrict ? "strict"
                                                         : "inclusive"},
      {"case_sensitive", opt.end_to_end.case_sensitive ? "true" : "false"},
      {"ap_interpolation",
       opt.ap == ApInterpolation::kAllPoints ? "all-points" : "11-point"},
      {"joint_lines", joint ? "true" : "false"},
  };
}

}  // namespace

std::vector<MetricId> default_metrics() {
  return {MetricId::kIoU, MetricId::kSIoU, MetricId::kTIoU,
          MetricId::kDetEvalIc13Order, MetricId::kIc03};
}

EvalReport evaluate_records(std::span<const ImageRecord> records,
                            const EvalOptions& options,
                            std::vector<std::string> warnings) {
  options.match.validate();
  const std::vector<MetricId> metrics =
      options.metrics.empty() ? default_metrics() : options.metrics;
  const bool joint =
      std::any_of(records.begin(), records.end(),
                  [](const ImageRecord& r) { return r.lines.has_value(); });
  if (joint) {
    for (MetricId id : {MetricId::kSIoU, MetricId::kAp, MetricId::kEndToEnd}) {
      if (wants(metrics, id)) {
        throw EvaluationError("metric " + std::string(metric_name(id)) +
                              " is not defined for joint word/line evaluation");
      }
    }
  }

  // Workers claim images by index and write into their own slot; the
  // reduction below runs in image order.
  std::vector<ImageResult> results(records.size());
  std::vector<std::exception_ptr> errors(records.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < records.size();) {
      try {
        results[i] = evaluate_image(records[i], metrics, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t jobs = options.jobs > 0
                         ? static_cast<std::size_t>(options.jobs)
                         : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(records.size(), 1));
  if (jobs <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  EvalReport report;
  report.config = config_echo(metrics, options, joint);
  report.warnings = std::move(warnings);
  std::map<MetricId, Tally> totals;
  std::vector<RankedDetection> ranked;
  for (std::size_t i = 0; i < records.size(); ++i) {
    ImageResult& r = results[i];
    for (const auto& [id, t] : r.tallies) totals[id] += t;
    ranked.insert(ranked.end(), r.ranked.begin(), r.ranked.end());
    report.warnings.insert(report.warnings.end(), r.warnings.begin(),
                           r.warnings.end());
    if (options.per_image) {
      ImageReport img;
      img.key = records[i].key;
      for (const auto& [id, t] : r.tallies) {
        img.tallies[std::string(metric_name(id))] = t;
      }
      img.pairs = std::move(r.pairs);
      img.warnings = std::move(r.warnings);
      report.images.push_back(std::move(img));
    }
  }
  for (MetricId id : metrics) {
    MetricSummary s = summarize(id, totals[id]);
    if (id == MetricId::kAp) {
      s.average_precision =
          average_precision(ranked, totals[id].num_gt, options.ap);
    }
    report.metrics.push_back(s);
  }
  return report;
}

EvalReport run_eval(const RunConfig& config) {
  Diagnostics diag;
  const std::vector<ImageRecord> records = load_dataset(
      config.gt, config.det, config.lines, config.dataset, &diag);
  EvalReport report =
      evaluate_records(records, config.eval, std::move(diag.warnings));
  report.config["gt_format"] =
      std::string(box_format_name(config.dataset.gt_format));
  report.config["det_format"] =
      std::string(box_format_name(config.dataset.det_layout.format));
  return report;
}

}  // namespace tiou
