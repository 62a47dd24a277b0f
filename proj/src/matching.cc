// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

#include "tiou/matching.h"

#include <algorithm>
#include <string>
#include <tuple>

#include "tiou/errors.h"

namespace tiou {

namespace {

void check_fraction(double v, const char* name) {
  if (!(v > 0.0 && v <= 1.0)) {
    throw ValidationError(std::string("match config: ") + name +
                          " must lie in (0, 1], got " + std::to_string(v));
  }
}

// Care ground truth and non-don't-care detections, plus the filtered ids.
struct Prepared {
  std::vector<const GtInstance*> gts;
  std::vector<const Detection*> dets;
  std::vector<Polygon> care_polygons;
  std::vector<std::size_t> dont_care_det;
};

Prepared prepare(std::span<const GtInstance> gts,
                 std::span<const Detection> dets, const MatchConfig& cfg) {
  cfg.validate();
  Prepared p;
  std::vector<GtInstance> dont_care;
  for (const GtInstance& g : gts) {
    if (g.dont_care) {
      dont_care.push_back(g);
    } else {
      p.gts.push_back(&g);
      p.care_polygons.push_back(g.polygon);
    }
  }
  p.dont_care_det = filter_dont_care(dets, dont_care, cfg.dont_care_overlap);
  for (const Detection& d : dets) {
    if (!std::binary_search(p.dont_care_det.begin(), p.dont_care_det.end(),
                            d.id)) {
      p.dets.push_back(&d);
    }
  }
  return p;
}

void sort_ids(std::vector<std::size_t>& ids) {
  std::sort(ids.begin(), ids.end());
}

void finish(MatchSet& ms) {
  std::sort(ms.pairs.begin(), ms.pairs.end(),
            [](const MatchedPair& a, const MatchedPair& b) {
              return std::tie(a.gt, a.det) < std::tie(b.gt, b.det);
            });
  std::sort(ms.om_groups.begin(), ms.om_groups.end(),
            [](const auto& a, const auto& b) { return a.gt < b.gt; });
  std::sort(ms.mo_groups.begin(), ms.mo_groups.end(),
            [](const auto& a, const auto& b) { return a.det < b.det; });
  for (auto& g : ms.om_groups) sort_ids(g.dets);
  for (auto& g : ms.mo_groups) sort_ids(g.gts);
  sort_ids(ms.unmatched_gt);
  sort_ids(ms.unmatched_det);
  sort_ids(ms.dont_care_det);
}

}  // namespace

void MatchConfig::validate() const {
  check_fraction(iou_threshold, "iou_threshold");
  check_fraction(tr, "tr");
  check_fraction(tp, "tp");
  check_fraction(om_score, "om_score");
  check_fraction(mo_score, "mo_score");
  check_fraction(dont_care_overlap, "dont_care_overlap");
}

std::size_t MatchSet::num_gt() const {
  std::size_t n = pairs.size() + om_groups.size() + unmatched_gt.size();
  for (const auto& g : mo_groups) n += g.gts.size();
  return n;
}

std::size_t MatchSet::num_det() const {
  std::size_t n = pairs.size() + mo_groups.size() + unmatched_det.size();
  for (const auto& g : om_groups) n += g.dets.size();
  return n;
}

std::vector<std::size_t> filter_dont_care(
    std::span<const Detection> dets, std::span<const GtInstance> dont_care_gts,
    double threshold) {
  std::vector<std::size_t> out;
  if (dont_care_gts.empty()) return out;
  for (const Detection& d : dets) {
    if (!(d.polygon.area() > 0.0)) continue;
    for (const GtInstance& w : dont_care_gts) {
      if (intersection_area(w.polygon, d.polygon) / d.polygon.area() >
          threshold) {
        out.push_back(d.id);
        break;
      }
    }
  }
  sort_ids(out);
  return out;
}

MatchSet match_one_to_one(std::span<const GtInstance> gts,
                          std::span<const Detection> dets,
                          const MatchConfig& cfg, Diagnostics* diagnostics) {
  Prepared p = prepare(gts, dets, cfg);
  MatchSet ms;
  ms.dont_care_det = p.dont_care_det;

  struct Candidate {
    std::size_t gi;
    std::size_t di;
    double iou;
  };
  std::vector<Candidate> candidates;
  for (std::size_t gi = 0; gi < p.gts.size(); ++gi) {
    const Polygon& g = p.gts[gi]->polygon;
    for (std::size_t di = 0; di < p.dets.size(); ++di) {
      const Polygon& d = p.dets[di]->polygon;
      if (!g.bounds().overlaps(d.bounds())) continue;
      const double v = iou(g, d);
      if (cfg.passes(v, cfg.iou_threshold)) candidates.push_back({gi, di, v});
    }
  }

  const std::size_t with_conf = static_cast<std::size_t>(
      std::count_if(p.dets.begin(), p.dets.end(),
                    [](const Detection* d) { return d->confidence.has_value(); }));
  const bool by_confidence = !p.dets.empty() && with_conf == p.dets.size();
  if (with_conf > 0 && !by_confidence && diagnostics != nullptr) {
    diagnostics->warn(
        "only some detections carry a confidence; matching greedily by IoU");
  }

  std::vector<bool> gt_used(p.gts.size(), false);
  std::vector<bool> det_used(p.dets.size(), false);
  auto accept = [&](const Candidate& c) {
    gt_used[c.gi] = det_used[c.di] = true;
    ms.pairs.push_back({p.gts[c.gi]->id, p.dets[c.di]->id,
                        score_pair(p.gts[c.gi]->polygon,
                                   p.dets[c.di]->polygon, p.care_polygons)});
  };

  auto det_id = [&](std::size_t di) { return p.dets[di]->id; };
  auto gt_id = [&](std::size_t gi) { return p.gts[gi]->id; };
  if (by_confidence) {
    std::vector<std::size_t> order(p.dets.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double ca = *p.dets[a]->confidence;
      const double cb = *p.dets[b]->confidence;
      if (ca != cb) return ca > cb;
      return det_id(a) < det_id(b);
    });
    for (std::size_t di : order) {
      const Candidate* best = nullptr;
      for (const Candidate& c : candidates) {
        if (c.di != di || gt_used[c.gi]) continue;
        if (best == nullptr || c.iou > best->iou ||
            (c.iou == best->iou && gt_id(c.gi) < gt_id(best->gi))) {
          best = &c;
        }
      }
      if (best != nullptr) accept(*best);
    }
  } else {
    std::sort(candidates.begin(), candidates.end(),
              [&](const Candidate& a, const Candidate& b) {
                if (a.iou != b.iou) return a.iou > b.iou;
                if (det_id(a.di) != det_id(b.di))
                  return det_id(a.di) < det_id(b.di);
                return gt_id(a.gi) < gt_id(b.gi);
              });
    for (const Candidate& c : candidates) {
      if (!gt_used[c.gi] && !det_used[c.di]) accept(c);
    }
  }

  for (std::size_t gi = 0; gi < p.gts.size(); ++gi) {
    if (!gt_used[gi]) ms.unmatched_gt.push_back(gt_id(gi));
  }
  for (std::size_t di = 0; di < p.dets.size(); ++di) {
    if (!det_used[di]) ms.unmatched_det.push_back(det_id(di));
  }
  finish(ms);
  return ms;
}

Ic03Result match_ic03(std::span<const GtInstance> gts,
                      std::span<const Detection> dets, const MatchConfig& cfg) {
  Prepared p = prepare(gts, dets, cfg);
  Ic03Result r;
  r.gt_best.reserve(p.gts.size());
  r.det_best.reserve(p.dets.size());
  for (const GtInstance* g : p.gts) r.gt_best.push_back({g->id, 0.0});
  for (const Detection* d : p.dets) r.det_best.push_back({d->id, 0.0});
  for (std::size_t gi = 0; gi < p.gts.size(); ++gi) {
    for (std::size_t di = 0; di < p.dets.size(); ++di) {
      const Polygon& g = p.gts[gi]->polygon;
      const Polygon& d = p.dets[di]->polygon;
      if (!g.bounds().overlaps(d.bounds())) continue;
      const double v = ic03_match_value(g, d);
      r.gt_best[gi].value = std::max(r.gt_best[gi].value, v);
      r.det_best[di].value = std::max(r.det_best[di].value, v);
    }
  }
  return r;
}

MatchSet match_deteval(std::span<const GtInstance> gts,
                       std::span<const Detection> dets,
                       const MatchConfig& cfg) {
  Prepared p = prepare(gts, dets, cfg);
  MatchSet ms;
  ms.dont_care_det = p.dont_care_det;

  const std::size_t n = p.gts.size();
  const std::size_t m = p.dets.size();
  std::vector<CoverageRatios> cov(n * m);
  for (std::size_t gi = 0; gi < n; ++gi) {
    for (std::size_t di = 0; di < m; ++di) {
      const Polygon& g = p.gts[gi]->polygon;
      const Polygon& d = p.dets[di]->polygon;
      if (g.bounds().overlaps(d.bounds())) cov[gi * m + di] = coverage_ratios(g, d);
    }
  }
  auto at = [&](std::size_t gi, std::size_t di) -> const CoverageRatios& {
    return cov[gi * m + di];
  };
  auto oo_ok = [&](std::size_t gi, std::size_t di) {
    return cfg.passes(at(gi, di).recall, cfg.tr) &&
           cfg.passes(at(gi, di).precision, cfg.tp);
  };

  std::vector<bool> gt_used(n, false);
  std::vector<bool> det_used(m, false);

  auto one_to_one = [&] {
    for (std::size_t gi = 0; gi < n; ++gi) {
      if (gt_used[gi]) continue;
      for (std::size_t di = 0; di < m; ++di) {
        if (det_used[di] || !oo_ok(gi, di)) continue;
        std::size_t row = 0;
        std::size_t col = 0;
        for (std::size_t k = 0; k < m; ++k) row += !det_used[k] && oo_ok(gi, k);
        for (std::size_t k = 0; k < n; ++k) col += !gt_used[k] && oo_ok(k, di);
        if (row != 1 || col != 1) continue;
        gt_used[gi] = det_used[di] = true;
        ms.pairs.push_back({p.gts[gi]->id, p.dets[di]->id,
                            score_pair(p.gts[gi]->polygon, p.dets[di]->polygon,
                                       p.care_polygons)});
        break;
      }
    }
  };

  auto one_to_many = [&] {
    for (std::size_t gi = 0; gi < n; ++gi) {
      if (gt_used[gi]) continue;
      std::vector<std::size_t> parts;
      double covered = 0.0;
      for (std::size_t di = 0; di < m; ++di) {
        if (det_used[di] || !cfg.passes(at(gi, di).precision, cfg.tp)) continue;
        parts.push_back(di);
        covered += at(gi, di).recall;
      }
      if (parts.size() < 2 || !cfg.passes(covered, cfg.tr)) continue;
      OneToManyGroup group{p.gts[gi]->id, {}};
      gt_used[gi] = true;
      for (std::size_t di : parts) {
        det_used[di] = true;
        group.dets.push_back(p.dets[di]->id);
      }
      ms.om_groups.push_back(std::move(group));
    }
  };

  auto many_to_one = [&] {
    for (std::size_t di = 0; di < m; ++di) {
      if (det_used[di]) continue;
      std::vector<std::size_t> parts;
      double covered = 0.0;
      for (std::size_t gi = 0; gi < n; ++gi) {
        if (gt_used[gi] || !cfg.passes(at(gi, di).recall, cfg.tr)) continue;
        parts.push_back(gi);
        covered += at(gi, di).precision;
      }
      if (parts.size() < 2 || !cfg.passes(covered, cfg.tp)) continue;
      ManyToOneGroup group{p.dets[di]->id, {}};
      det_used[di] = true;
      for (std::size_t gi : parts) {
        gt_used[gi] = true;
        group.gts.push_back(p.gts[gi]->id);
      }
      ms.mo_groups.push_back(std::move(group));
    }
  };

  if (cfg.order == MatchOrder::kOneToOneFirst) {
    one_to_one();
    one_to_many();
    many_to_one();
  } else {
    one_to_many();
    many_to_one();
    one_to_one();
  }

  for (std::size_t gi = 0; gi < n; ++gi) {
    if (!gt_used[gi]) ms.unmatched_gt.push_back(p.gts[gi]->id);
  }
  for (std::size_t di = 0; di < m; ++di) {
    if (!det_used[di]) ms.unmatched_det.push_back(p.dets[di]->id);
  }
  finish(ms);
  return ms;
}

}  // namespace tiou
