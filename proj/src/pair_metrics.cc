// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

#include "tiou/pair_metrics.h"

namespace tiou {

namespace {

double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

// f(x) = 1 - x with x the penalised share of `whole`.
double completeness(double penalised, double whole) {
  return 1.0 - ratio(penalised, whole);
}

}  // namespace

double iou(const Polygon& gt, const Polygon& det) {
  const double inter = intersection_area(gt, det);
  return ratio(inter, gt.area() + det.area() - inter);
}

double tiou_recall(const Polygon& gt, const Polygon& det) {
  const double inter = intersection_area(gt, det);
  const double uni = gt.area() + det.area() - inter;
  const double ct = gt.area() - inter;
  return ratio(inter * completeness(ct, gt.area()), uni);
}

double tiou_precision(const Polygon& gt, const Polygon& det,
                      std::span<const Polygon> others) {
  return score_pair(gt, det, others).tiou_precision;
}

CoverageRatios coverage_ratios(const Polygon& gt, const Polygon& det) {
  const double inter = intersection_area(gt, det);
  return {ratio(inter, gt.area()), ratio(inter, det.area())};
}

double ic03_match_value(const Polygon& a, const Polygon& b) {
  return ratio(2.0 * intersection_area(a, b), a.area() + b.area());
}

PairScore score_pair(const Polygon& gt, const Polygon& det,
                     std::span<const Polygon> others) {
  PairScore s;
  s.intersection = intersection_area(gt, det);
  const double uni = gt.area() + det.area() - s.intersection;
  s.iou = ratio(s.intersection, uni);
  s.ct = gt.area() - s.intersection;
  s.ot = s.intersection > 0.0 ? outlier_area(det, gt, others) : 0.0;
  s.tiou_recall = ratio(s.intersection * completeness(s.ct, gt.area()), uni);
  s.tiou_precision =
      ratio(s.intersection * completeness(s.ot, det.area()), uni);
  return s;
}

}  // namespace tiou
