// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

#include "tiou/report.h"

#include <cstdio>

#include "json.hpp"
#include "tiou/errors.h"

namespace tiou {

namespace {

using nlohmann::json;

json tally_json(const Tally& t) {
  return {{"recall_sum", t.recall_sum},
          {"precision_sum", t.precision_sum},
          {"num_gt", t.num_gt},
          {"num_det", t.num_det}};
}

Tally tally_from(const json& j) {
  Tally t;
  t.recall_sum = j.at("recall_sum").get<double>();
  t.precision_sum = j.at("precision_sum").get<double>();
  t.num_gt = j.at("num_gt").get<std::size_t>();
  t.num_det = j.at("num_det").get<std::size_t>();
  return t;
}

json summary_json(const MetricSummary& m) {
  json j = {{"metric", std::string(metric_name(m.metric))},
            {"recall", m.recall},
            {"precision", m.precision},
            {"hmean", m.hmean},
            {"num_gt", m.num_gt},
            {"num_det", m.num_det}};
  if (m.average_precision) j["average_precision"] = *m.average_precision;
  return j;
}

MetricSummary summary_from(const json& j) {
  MetricSummary m;
  m.metric = parse_metric(j.at("metric").get<std::string>());
  m.recall = j.at("recall").get<double>();
  m.precision = j.at("precision").get<double>();
  m.hmean = j.at("hmean").get<double>();
  m.num_gt = j.at("num_gt").get<std::size_t>();
  m.num_det = j.at("num_det").get<std::size_t>();
  if (j.contains("average_precision")) {
    m.average_precision = j.at("average_precision").get<double>();
  }
  return m;
}

}  // namespace

std::string report_to_json(const EvalReport& report) {
  json metrics = json::array();
  for (const MetricSummary& m : report.metrics) {
    metrics.push_back(summary_json(m));
  }
  json doc = {{"schema_version", report.schema_version},
              {"tool_version", report.tool_version},
              {"config", report.config},
              {"metrics", std::move(metrics)},
              {"warnings", report.warnings}};
  if (!report.images.empty()) {
    json images = json::array();
    for (const ImageReport& img : report.images) {
      json tallies = json::object();
      for (const auto& [name, t] : img.tallies) tallies[name] = tally_json(t);
      json pairs = json::array();
      for (const PairRecord& p : img.pairs) {
        pairs.push_back({{"gt", p.gt},
                         {"det", p.det},
                         {"iou", p.iou},
                         {"tiou_recall", p.tiou_recall},
                         {"tiou_precision", p.tiou_precision}});
      }
      images.push_back({{"key", img.key},
                        {"tallies", std::move(tallies)},
                        {"pairs", std::move(pairs)},
                        {"warnings", img.warnings}});
    }
    doc["images"] = std::move(images);
  }
  return doc.dump(2) + "\n";
}

EvalReport report_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    EvalReport r;
    r.schema_version = doc.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion) {
      throw ParseError("unsupported report schema version " +
                       std::to_string(r.schema_version));
    }
    r.tool_version = doc.at("tool_version").get<std::string>();
    r.config = doc.at("config").get<std::map<std::string, std::string>>();
    for (const json& m : doc.at("metrics")) r.metrics.push_back(summary_from(m));
    r.warnings = doc.at("warnings").get<std::vector<std::string>>();
    if (doc.contains("images")) {
      for (const json& j : doc.at("images")) {
        ImageReport img;
        img.key = j.at("key").get<std::string>();
        for (const auto& [name, t] : j.at("tallies").items()) {
          img.tallies[name] = tally_from(t);
        }
        for (const json& p : j.at("pairs")) {
          img.pairs.push_back({p.at("gt").get<std::size_t>(),
                               p.at("det").get<std::size_t>(),
                               p.at("iou").get<double>(),
                               p.at("tiou_recall").get<double>(),
                               p.at("tiou_precision").get<double>()});
        }
        img.warnings = j.at("warnings").get<std::vector<std::string>>();
        r.images.push_back(std::move(img));
      }
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  } catch (const EvaluationError& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

std::string report_to_text(const EvalReport& report) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-22s %8s %8s %8s %8s %7s %7s\n", "metric",
                "recall", "prec", "hmean", "ap", "gt", "det");
  out += buf;
  for (const MetricSummary& m : report.metrics) {
    char ap[16] = "-";
    if (m.average_precision) {
      std::snprintf(ap, sizeof ap, "%.4f", *m.average_precision);
    }
    std::snprintf(buf, sizeof buf, "%-22s %8.4f %8.4f %8.4f %8s %7zu %7zu\n",
                  std::string(metric_name(m.metric)).c_str(), m.recall,
                  m.precision, m.hmean, ap, m.num_gt, m.num_det);
    out += buf;
  }
  if (!report.warnings.empty()) {
    out += std::to_string(report.warnings.size()) + " warning(s)\n";
  }
  return out;
}

}  // namespace tiou
