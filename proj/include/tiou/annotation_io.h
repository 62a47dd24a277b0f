// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

// ICDAR-style annotation and submission files.
//
// Ground truth, one instance per line:
//   icdar15-quad  x1,y1,x2,y2,x3,y3,x4,y4,transcription
//   icdar13-rect  xmin,ymin,xmax,ymax,transcription
// The transcription is everything after the coordinates (commas included);
// in rect files a pair of surrounding double quotes is removed. The
// transcription "###" (configurable) marks a don't-care region.
//
// Detections use the same coordinate columns followed by an optional
// confidence and an optional transcription, as declared by DetectionLayout.
//
// Text-line annotations use the ground-truth grammar; membership is either
// recomputed geometrically or read from a sidecar listing, per line, the
// comma-separated ids of its member words.
//
// Files are UTF-8; a leading BOM is stripped, blank lines are skipped,
// numbers use '.' as the decimal point regardless of locale.

#ifndef TIOU_ANNOTATION_IO_H_
#define TIOU_ANNOTATION_IO_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tiou/instances.h"
#include "tiou/joint_line.h"
#include "tiou/zip_archive.h"

namespace tiou {

enum class BoxFormat { kIcdar13Rect, kIcdar15Quad };

// Throws ParseError for names other than "icdar13-rect" / "icdar15-quad".
BoxFormat parse_box_format(std::string_view name);
std::string_view box_format_name(BoxFormat format);

struct DetectionLayout {
  BoxFormat format = BoxFormat::kIcdar15Quad;
  bool confidence = false;
  bool transcription = false;
};

struct ParseOptions {
  std::string dont_care_sentinel = "###";
  // Turn warning-level issues (degenerate polygons) into ParseErrors.
  bool strict = false;
};

// Degenerate ground truth is kept as don't-care with a warning.
std::vector<GtInstance> parse_gt_word_file(std::string_view text,
                                           BoxFormat format,
                                           std::string_view source,
                                           const ParseOptions& options = {},
                                           Diagnostics* diagnostics = nullptr);

// Degenerate detections are dropped with a warning; ids stay dense.
std::vector<Detection> parse_detection_file(std::string_view text,
                                            const DetectionLayout& layout,
                                            std::string_view source,
                                            const ParseOptions& options = {},
                                            Diagnostics* diagnostics = nullptr);

// Line polygons in file order (the order membership sidecars refer to).
// Transcriptions are ignored; degenerate lines are kept with a warning.
std::vector<Polygon> parse_line_file(std::string_view text, BoxFormat format,
                                     std::string_view source,
                                     const ParseOptions& options = {},
                                     Diagnostics* diagnostics = nullptr);

// One line of comma-separated word ids per text line (may be empty).
std::vector<std::vector<std::size_t>> parse_membership_file(
    std::string_view text, std::string_view source);

// Canonical icdar15-quad text. Every polygon must have four vertices.
std::string to_canonical_text(std::span<const GtInstance> gts);
std::string to_canonical_text(std::span<const Detection> dets,
                              const DetectionLayout& layout);
std::string to_canonical_text(std::span<const Polygon> lines);

struct ImageRecord {
  std::string key;
  std::vector<GtInstance> gts;
  std::vector<Detection> dets;
  // Present when a line archive was supplied.
  std::optional<std::vector<LineAnnotation>> lines;
};

struct DatasetOptions {
  BoxFormat gt_format = BoxFormat::kIcdar15Quad;
  DetectionLayout det_layout;
  // ECMAScript regexes over the file's base name; group 1 is the image key.
  std::string gt_pattern = R"(gt_(.+)\.txt)";
  std::string det_pattern = R"(res_(.+)\.txt)";
  std::string line_pattern = R"(lines_(.+)\.txt)";
  std::string membership_pattern = R"(members_(.+)\.txt)";
  ParseOptions parse;
};

// Joins per-image files from zip archives or directories by key. A ground
// truth without a detection file gets an empty detection list (warning);
// a detection or line file without ground truth is an error. Records are
// sorted by key.
std::vector<ImageRecord> load_dataset(
    const std::filesystem::path& gt_archive,
    const std::filesystem::path& det_archive,
    const std::optional<std::filesystem::path>& line_archive,
    const DatasetOptions& options, Diagnostics* diagnostics = nullptr);

// Reads every regular file of a zip archive or a directory (non-recursive).
std::vector<ArchiveEntry> read_archive(const std::filesystem::path& path);

}  // namespace tiou

#endif  // TIOU_ANNOTATION_IO_H_
