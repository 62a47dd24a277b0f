// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

#include "tiou/harness.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "tiou/aggregate.h"
#include "tiou/errors.h"

namespace tiou {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Rect {
  double x0, y0, x1, y1;
  double w() const { return x1 - x0; }
  double h() const { return y1 - y0; }
  Polygon poly() const { return Polygon::rectangle(x0, y0, x1, y1); }
};

Rect require_rect(const Polygon& p, const char* who) {
  if (!p.is_axis_aligned_rectangle()) {
    throw ValidationError(std::string(who) +
                          ": ground truth must be an axis-aligned rectangle");
  }
  const Box& b = p.bounds();
  return {b.min_x, b.min_y, b.max_x, b.max_y};
}

GtInstance word(std::size_t id, const Polygon& p, std::string text = "w") {
  GtInstance g;
  g.id = id;
  g.polygon = p;
  g.transcription = std::move(text);
  return g;
}

Detection det(std::size_t id, const Polygon& p,
              std::optional<double> confidence = std::nullopt) {
  Detection d;
  d.id = id;
  d.polygon = p;
  d.confidence = confidence;
  return d;
}

// Portable uniform draws: the std distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(engine_() %
                                 static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

std::string random_text(Rng& rng) {
  std::string s(static_cast<std::size_t>(rng.integer(2, 7)), 'a');
  for (char& c : s) c = static_cast<char>('a' + rng.integer(0, 25));
  return s;
}

}  // namespace

Detection make_cut_detection(const Polygon& gt, double cut_fraction,
                             std::optional<double> target_iou) {
  const Rect g = require_rect(gt, "make_cut_detection");
  if (!(cut_fraction > 0.0 && cut_fraction < 1.0)) {
    throw ValidationError("cut fraction must lie in (0, 1)");
  }
  const double c = cut_fraction;
  const double w = g.w();
  double extra = 0.0;
  if (target_iou) {
    const double t = *target_iou;
    const double best = (1.0 - c) / (1.0 + c);
    if (!(t > 0.0) || t > best) {
      throw ValidationError("target IoU " + std::to_string(t) +
                            " is unreachable with cut " + std::to_string(c));
    }
    extra = (1.0 - c) * w / t - (1.0 + c) * w;
    extra = std::max(extra, 0.0);
  }
  return det(0, Rect{g.x0 + c * w, g.y0, g.x1 + c * w + extra, g.y1}.poly());
}

std::vector<Scene> make_equal_iou_quartet(const Polygon& gt, double iou_target) {
  const Rect g = require_rect(gt, "make_equal_iou_quartet");
  const double t = iou_target;
  if (!(t > 0.5 && t < 1.0)) {
    throw ValidationError("iou_target must lie in (0.5, 1)");
  }
  const double w = g.w();
  const double c = (1.0 - t) / (1.0 + t);  // cut giving IoU t
  // Outlier share of the detection; small enough that the neighbour never
  // overlaps the target in either outlier scene.
  const double phi = 0.5 * std::min(c, 1.0 - t);

  const Rect cut{g.x0 + c * w, g.y0, g.x1 + c * w, g.y1};
  const Rect loose{g.x0, g.y0, g.x0 + w / t, g.y1};
  const double far = g.x0 + 3.0 * w / t + 2.0 * w;

  auto scene = [&](std::string label, const Rect& d, double neighbour_x0) {
    const Rect n{neighbour_x0, g.y0, neighbour_x0 + w, g.y1};
    Scene s;
    s.label = std::move(label);
    s.gts = {word(0, gt), word(1, n.poly())};
    s.dets = {det(0, d.poly(), 0.9), det(1, n.poly(), 0.8)};
    for (std::size_t i = 0; i < 2; ++i) {
      s.dets[i].transcription = s.gts[i].transcription;
    }
    return s;
  };
  // The detection's area is w*h in the cut scenes and w*h/t in the loose
  // ones, so the overlap widths below give an outlier area of phi * A(D).
  return {
      scene("cutting", cut, far),
      scene("pure", loose, far),
      scene("outlier", loose, loose.x1 - phi * loose.w()),
      scene("cutting+outlier", cut, cut.x1 - phi * cut.w()),
  };
}

std::vector<Detection> make_oversegmentation(const Polygon& gt, int k) {
  const Rect g = require_rect(gt, "make_oversegmentation");
  if (k < 2) throw ValidationError("oversegmentation needs k >= 2");
  std::vector<Detection> out;
  for (int i = 0; i < k; ++i) {
    const double a = g.x0 + g.w() * i / k;
    const double b = i + 1 == k ? g.x1 : g.x0 + g.w() * (i + 1) / k;
    out.push_back(det(static_cast<std::size_t>(i),
                      Rect{a, g.y0, b, g.y1}.poly(),
                      1.0 - 0.5 * i / k));
  }
  return out;
}

Scene make_oversegmentation_scene(const Polygon& gt, int k,
                                  int false_positives) {
  const Rect g = require_rect(gt, "make_oversegmentation_scene");
  if (false_positives < 0) throw ValidationError("negative false positives");
  Scene s;
  s.label = "oversegmentation-" + std::to_string(k);
  s.gts = {word(0, gt)};
  s.dets = make_oversegmentation(gt, k);
  for (Detection& d : s.dets) d.transcription = "fragment";
  for (int i = 0; i < false_positives; ++i) {
    const double x0 = g.x1 + g.w() * (i + 1) + 10.0 * (i + 1);
    s.dets.push_back(det(s.dets.size(), Rect{x0, g.y0, x0 + g.w(), g.y1}.poly(),
                         0.3));
    s.dets.back().transcription = "noise";
  }
  return s;
}

Scene make_matching_order_scene() {
  // Each word covers 0.18 of the long detection; once the first word is
  // taken by the exact detection the other two cover only 0.36 <= tp.
  Scene s;
  s.label = "matching-order";
  s.gts = {word(0, Polygon::rectangle(0, 0, 54, 20), "alpha"),
           word(1, Polygon::rectangle(123, 0, 177, 20), "beta"),
           word(2, Polygon::rectangle(246, 0, 300, 20), "gamma")};
  s.dets = {det(0, Polygon::rectangle(0, 0, 300, 20), 0.9),
            det(1, Polygon::rectangle(0, 0, 54, 20), 0.8)};
  s.dets[0].transcription = "alpha beta gamma";
  s.dets[1].transcription = "alpha";
  return s;
}

std::vector<Detection> perturb(const Polygon& gt, const PerturbSpec& spec,
                               std::vector<Polygon>* extra_gts) {
  const Rect g = require_rect(gt, "perturb");
  const double m = spec.magnitude;
  // The seed only picks a side, so magnitudes keep their closed forms.
  const bool mirror = (spec.seed & 1) != 0;
  auto flip = [&](const Rect& r) {
    if (!mirror) return r;
    return Rect{g.x0 + g.x1 - r.x1, r.y0, g.x0 + g.x1 - r.x0, r.y1};
  };
  auto fraction = [&] {
    if (!(m > 0.0 && m < 1.0)) {
      throw ValidationError("perturbation magnitude must lie in (0, 1)");
    }
  };
  switch (spec.kind) {
    case PerturbKind::kCut: {
      fraction();
      const Rect d{g.x0 + m * g.w(), g.y0, g.x1 + m * g.w(), g.y1};
      return {det(0, flip(d).poly())};
    }
    case PerturbKind::kDilate: {
      // Symmetric growth to IoU 1 - m.
      fraction();
      const double f = std::sqrt(1.0 / (1.0 - m));
      const double cx = 0.5 * (g.x0 + g.x1), cy = 0.5 * (g.y0 + g.y1);
      const double hw = 0.5 * g.w() * f, hh = 0.5 * g.h() * f;
      return {det(0, Polygon::rectangle(cx - hw, cy - hh, cx + hw, cy + hh))};
    }
    case PerturbKind::kOutlier: {
      // Grow to the right by m * w; a neighbour word starts halfway into the
      // growth, so the outlier area is m/2 of the target.
      fraction();
      const Rect d{g.x0, g.y0, g.x1 + m * g.w(), g.y1};
      const double nx = g.x1 + 0.5 * m * g.w();
      const Rect n{nx, g.y0, nx + g.w(), g.y1};
      if (extra_gts) extra_gts->push_back(flip(n).poly());
      return {det(0, flip(d).poly())};
    }
    case PerturbKind::kOversegment: {
      const int k = static_cast<int>(std::lround(m));
      return make_oversegmentation(gt, k);
    }
  }
  return {};
}

Scene random_scene(std::uint64_t seed, const RandomSceneOptions& options) {
  if (options.min_words < 1 || options.max_words < options.min_words) {
    throw ValidationError("invalid word count range");
  }
  Rng rng(seed);
  const double canvas = options.canvas;
  const double margin = 0.02 * canvas;
  const int n = rng.integer(options.min_words, options.max_words);

  Scene s;
  s.label = "random-" + std::to_string(seed);

  // Lay words out in rows. Words of one text line share their size and are
  // separated by at least 0.15 of their width, so no word-sized detection
  // reaches IoU 0.5 against a line.
  struct Placed {
    Rect r;
    int line = -1;
    bool dont_care = false;
  };
  std::vector<Placed> placed;
  std::vector<std::vector<std::size_t>> line_members;
  double x = margin, y = margin, row_h = 0.0;
  const double unit = canvas / 1000.0;
  int i = 0;
  while (i < n) {
    const bool as_line = n - i >= 2 && rng.chance(options.line_probability);
    const int count = as_line ? std::min(n - i, rng.integer(2, 3)) : 1;
    const double w = rng.uniform(40, 140) * unit;
    const double h = rng.uniform(16, 40) * unit;
    const double gap = rng.uniform(0.15, 0.4) * w;
    const double span = count * w + (count - 1) * gap;
    if (x + span > canvas - margin) {
      x = margin;
      y += row_h + rng.uniform(20, 40) * unit;
      row_h = 0.0;
    }
    if (y + h > canvas - margin) break;  // canvas full
    const int line = as_line ? static_cast<int>(line_members.size()) : -1;
    if (as_line) line_members.emplace_back();
    for (int k = 0; k < count; ++k) {
      const double x0 = x + k * (w + gap);
      if (as_line) line_members.back().push_back(placed.size());
      placed.push_back({{x0, y, x0 + w, y + h}, line, false});
    }
    x += span + rng.uniform(30, 80) * unit;
    row_h = std::max(row_h, h);
    i += count;
  }
  for (Placed& p : placed) {
    if (p.line < 0 && rng.chance(0.1)) p.dont_care = true;
  }

  auto conf = [&]() -> std::optional<double> {
    if (!options.confidences) return std::nullopt;
    return rng.uniform();
  };
  auto push_det = [&](const Polygon& p, std::optional<std::string> text) {
    Detection d = det(s.dets.size(), p, conf());
    d.transcription = std::move(text);
    s.dets.push_back(std::move(d));
  };

  for (std::size_t w = 0; w < placed.size(); ++w) {
    const Placed& p = placed[w];
    GtInstance g = word(w, p.r.poly(), random_text(rng));
    if (p.dont_care) {
      g.dont_care = true;
      g.transcription = "###";
    }
    s.gts.push_back(g);
  }
  for (const auto& members : line_members) {
    const Rect first = placed[members.front()].r;
    const Rect last = placed[members.back()].r;
    s.lines.push_back(Rect{first.x0, first.y0, last.x1, last.y1}.poly());
  }

  for (std::size_t w = 0; w < placed.size(); ++w) {
    const Placed& p = placed[w];
    if (p.line >= 0 && options.line_detections) continue;
    const Rect r = p.r;
    const std::string& text = *s.gts[w].transcription;
    auto reading = [&]() -> std::optional<std::string> {
      return rng.chance(0.7) ? text : random_text(rng);
    };
    const double roll = rng.uniform();
    if (roll < 0.2) {
      push_det(r.poly(), text);
    } else if (roll < 0.5) {
      const double j = 0.02 * std::min(r.w(), r.h());
      push_det(Rect{r.x0 + rng.uniform(-j, j), r.y0 + rng.uniform(-j, j),
                    r.x1 + rng.uniform(-j, j), r.y1 + rng.uniform(-j, j)}
                   .poly(),
               reading());
    } else if (roll < 0.65) {
      PerturbSpec spec{PerturbKind::kCut, rng.uniform(0.05, 0.3), seed + w};
      push_det(perturb(r.poly(), spec)[0].polygon, reading());
    } else if (roll < 0.8 && p.line < 0) {
      PerturbSpec spec{PerturbKind::kDilate, rng.uniform(0.05, 0.4), seed + w};
      push_det(perturb(r.poly(), spec)[0].polygon, reading());
    } else if (roll < 0.9 && p.line < 0) {
      const int k = rng.integer(2, 3);
      for (const Detection& d : make_oversegmentation(r.poly(), k)) {
        push_det(d.polygon, std::nullopt);
        s.dets.back().transcription = random_text(rng);
      }
    }
    // Otherwise missed.
  }
  if (options.line_detections) {
    for (const Polygon& line : s.lines) {
      const Box& b = line.bounds();
      const double j = 0.01 * b.height();
      push_det(Polygon::rectangle(b.min_x + rng.uniform(-j, j),
                                  b.min_y + rng.uniform(-j, j),
                                  b.max_x + rng.uniform(-j, j),
                                  b.max_y + rng.uniform(-j, j)),
               random_text(rng));
    }
  }
  const int spurious = rng.integer(0, 2);
  for (int k = 0; k < spurious; ++k) {
    const double w = rng.uniform(20, 120) * unit;
    const double h = rng.uniform(10, 40) * unit;
    const double x0 = rng.uniform(margin, canvas - margin - w);
    const double y0 = rng.uniform(margin, canvas - margin - h);
    const Polygon box = Polygon::rectangle(x0, y0, x0 + w, y0 + h);
    // Spurious boxes stay clear of text lines so they never act as
    // line-level detections.
    const bool hits_line =
        std::any_of(s.lines.begin(), s.lines.end(), [&](const Polygon& l) {
          return l.bounds().overlaps(box.bounds());
        });
    if (!hits_line) push_det(box, random_text(rng));
  }

  if (options.rotate && rng.chance(0.5)) {
    const double angle = rng.uniform(-kPi / 4, kPi / 4);
    s = rotate_scene(s, angle, {canvas / 2, canvas / 2});
  }
  return s;
}

Scene rotate_scene(const Scene& scene, double radians, Point center) {
  Scene out = scene;
  for (GtInstance& g : out.gts) g.polygon = rotate(g.polygon, radians, center);
  for (Detection& d : out.dets) d.polygon = rotate(d.polygon, radians, center);
  for (Polygon& l : out.lines) l = rotate(l, radians, center);
  return out;
}

std::vector<ComparisonRow> compare_metrics(std::span<const Scene> scenes,
                                           const MatchConfig& cfg) {
  std::vector<ComparisonRow> rows;
  for (const Scene& s : scenes) {
    const MatchSet oo = match_one_to_one(s.gts, s.dets, cfg);
    const MatchSet de = match_deteval(s.gts, s.dets, cfg);
    ComparisonRow row;
    row.label = s.label;
    row.iou_f = binary_scores(oo).hmean;
    row.siou_f = siou_scores(oo).hmean;
    row.tiou_f = tiou_scores(oo).hmean;
    const MetricId de_id = cfg.order == MatchOrder::kOneToOneFirst
                               ? MetricId::kDetEvalIc13Order
                               : MetricId::kDetEvalOrder;
    row.deteval_f = summarize(de_id, deteval_tally(de, cfg)).hmean;
    row.ic03_f = ic03_scores(match_ic03(s.gts, s.dets, cfg)).hmean;
    rows.push_back(std::move(row));
  }
  return rows;
}

DetectionLayout dump_scenes(
    std::span<const Scene> scenes, const std::filesystem::path& gt_dir,
    const std::filesystem::path& det_dir,
    const std::optional<std::filesystem::path>& line_dir) {
  DetectionLayout layout;
  layout.confidence = true;
  layout.transcription = true;
  for (const Scene& s : scenes) {
    for (const Detection& d : s.dets) {
      layout.confidence &= d.confidence.has_value();
      layout.transcription &= d.transcription.has_value();
    }
  }
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw EvaluationError("cannot write " + path.string());
    out << text;
  };
  for (const Scene& s : scenes) {
    write(gt_dir / ("gt_" + s.label + ".txt"), to_canonical_text(s.gts));
    write(det_dir / ("res_" + s.label + ".txt"),
          to_canonical_text(s.dets, layout));
    if (line_dir) {
      write(*line_dir / ("lines_" + s.label + ".txt"),
            to_canonical_text(std::span<const Polygon>(s.lines)));
    }
  }
  return layout;
}

}  // namespace tiou
