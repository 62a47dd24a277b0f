// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

#include "tiou/annotation_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <regex>

#include "tiou/errors.h"

namespace tiou {

namespace {

constexpr std::string_view kBom = "\xEF\xBB\xBF";

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n";
  const auto b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(kSpace) - b + 1);
}

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

// Non-blank lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string_view>> lines_of(
    std::string_view text) {
  if (text.starts_with(kBom)) text.remove_prefix(kBom.size());
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t number = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!trim(line).empty()) out.emplace_back(number, line);
  }
  return out;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

double parse_number(std::string_view field, std::string_view source,
                    std::size_t line) {
  field = trim(field);
  double v = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() ||
      !std::isfinite(v)) {
    throw ParseError(where(source, line) + ": expected a number, got '" +
                     std::string(field) + "'");
  }
  return v;
}

std::size_t coordinate_count(BoxFormat format) {
  return format == BoxFormat::kIcdar15Quad ? 8 : 4;
}

Polygon parse_polygon(std::span<const std::string_view> fields,
                      BoxFormat format, std::string_view source,
                      std::size_t line) {
  std::vector<double> c;
  for (std::string_view f : fields) c.push_back(parse_number(f, source, line));
  std::vector<Point> pts;
  if (format == BoxFormat::kIcdar15Quad) {
    for (std::size_t i = 0; i < 8; i += 2) pts.push_back({c[i], c[i + 1]});
  } else {
    pts = {{c[0], c[1]}, {c[2], c[1]}, {c[2], c[3]}, {c[0], c[3]}};
  }
  return Polygon::from_vertices(std::move(pts), where(source, line));
}

std::string join_rest(std::span<const std::string_view> fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(',');
    out.append(fields[i]);
  }
  return out;
}

std::string clean_transcription(std::string text, BoxFormat format) {
  if (format == BoxFormat::kIcdar13Rect) {
    const std::string_view t = trim(text);
    if (t.size() >= 2 && t.front() == '"' && t.back() == '"') {
      return std::string(t.substr(1, t.size() - 2));
    }
  }
  return text;
}

void degenerate_issue(const std::string& message, const ParseOptions& options,
                      Diagnostics* diagnostics) {
  if (options.strict) throw ParseError(message);
  if (diagnostics != nullptr) diagnostics->warn(message);
}

void append_number(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

void append_polygon(std::string& out, const Polygon& p) {
  if (p.size() != 4) {
    throw ValidationError("canonical text needs 4-vertex polygons, got " +
                          std::to_string(p.size()));
  }
  bool first = true;
  for (const Point& v : p.vertices()) {
    if (!first) out.push_back(',');
    first = false;
    append_number(out, v.x);
    out.push_back(',');
    append_number(out, v.y);
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EvaluationError("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Files keyed by the first capture group of `pattern`.
std::map<std::string, const ArchiveEntry*> index_by_key(
    const std::vector<ArchiveEntry>& entries, const std::string& pattern,
    const std::string& what) {
  const std::regex re(pattern);
  std::map<std::string, const ArchiveEntry*> out;
  for (const ArchiveEntry& e : entries) {
    const std::string base = std::filesystem::path(e.name).filename().string();
    std::smatch m;
    if (!std::regex_match(base, m, re) || m.size() < 2) continue;
    if (!out.emplace(m[1].str(), &e).second) {
      throw EvaluationError("duplicate " + what + " key '" + m[1].str() +
                            "' (" + e.name + ")");
    }
  }
  return out;
}

}  // namespace

BoxFormat parse_box_format(std::string_view name) {
  if (name == "icdar15-quad") return BoxFormat::kIcdar15Quad;
  if (name == "icdar13-rect") return BoxFormat::kIcdar13Rect;
  throw ParseError("unknown box format '" + std::string(name) + "'");
}

std::string_view box_format_name(BoxFormat format) {
  return format == BoxFormat::kIcdar15Quad ? "icdar15-quad" : "icdar13-rect";
}

std::vector<GtInstance> parse_gt_word_file(std::string_view text,
                                           BoxFormat format,
                                           std::string_view source,
                                           const ParseOptions& options,
                                           Diagnostics* diagnostics) {
  const std::size_t ncoord = coordinate_count(format);
  std::vector<GtInstance> out;
  for (const auto& [number, line] : lines_of(text)) {
    const auto fields = split(line);
    if (fields.size() < ncoord) {
      throw ParseError(where(source, number) + ": expected at least " +
                       std::to_string(ncoord) + " coordinates, got " +
                       std::to_string(fields.size()) + " fields");
    }
    GtInstance g;
    g.id = out.size();
    g.polygon = parse_polygon(std::span(fields).first(ncoord), format, source,
                              number);
    if (fields.size() > ncoord) {
      g.transcription = clean_transcription(
          join_rest(std::span(fields).subspan(ncoord)), format);
      g.dont_care = trim(*g.transcription) == options.dont_care_sentinel;
    }
    if (g.polygon.degenerate() && !g.dont_care) {
      degenerate_issue(where(source, number) +
                           ": degenerate ground-truth polygon marked don't-care",
                       options, diagnostics);
      g.dont_care = true;
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Detection> parse_detection_file(std::string_view text,
                                            const DetectionLayout& layout,
                                            std::string_view source,
                                            const ParseOptions& options,
                                            Diagnostics* diagnostics) {
  const std::size_t ncoord = coordinate_count(layout.format);
  const std::size_t fixed = ncoord + (layout.confidence ? 1 : 0);
  std::vector<Detection> out;
  for (const auto& [number, line] : lines_of(text)) {
    const auto fields = split(line);
    const bool ragged = layout.transcription ? fields.size() < fixed + 1
                                             : fields.size() != fixed;
    if (ragged) {
      throw ParseError(where(source, number) + ": expected " +
                       std::to_string(fixed + (layout.transcription ? 1 : 0)) +
                       (layout.transcription ? " or more" : "") +
                       " fields, got " + std::to_string(fields.size()));
    }
    Detection d;
    d.polygon = parse_polygon(std::span(fields).first(ncoord), layout.format,
                              source, number);
    if (layout.confidence) {
      const double c = parse_number(fields[ncoord], source, number);
      if (c < 0.0 || c > 1.0) {
        throw ParseError(where(source, number) + ": confidence " +
                         std::string(trim(fields[ncoord])) +
                         " is outside [0, 1]");
      }
      d.confidence = c;
    }
    if (layout.transcription) {
      d.transcription = clean_transcription(
          join_rest(std::span(fields).subspan(fixed)), layout.format);
    }
    if (d.polygon.degenerate()) {
      degenerate_issue(
          where(source, number) + ": degenerate detection polygon dropped",
          options, diagnostics);
      continue;
    }
    d.id = out.size();
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Polygon> parse_line_file(std::string_view text, BoxFormat format,
                                     std::string_view source,
                                     const ParseOptions& options,
                                     Diagnostics* diagnostics) {
  const std::size_t ncoord = coordinate_count(format);
  std::vector<Polygon> out;
  for (const auto& [number, line] : lines_of(text)) {
    const auto fields = split(line);
    if (fields.size() < ncoord) {
      throw ParseError(where(source, number) + ": expected at least " +
                       std::to_string(ncoord) + " coordinates");
    }
    Polygon p = parse_polygon(std::span(fields).first(ncoord), format, source,
                              number);
    if (p.degenerate()) {
      degenerate_issue(where(source, number) + ": degenerate text-line polygon",
                       options, diagnostics);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::vector<std::size_t>> parse_membership_file(
    std::string_view text, std::string_view source) {
  if (text.starts_with(kBom)) text.remove_prefix(kBom.size());
  std::vector<std::vector<std::size_t>> out;
  std::size_t number = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    ++number;
    std::vector<std::size_t> ids;
    if (!line.empty()) {
      for (std::string_view f : split(line)) {
        f = trim(f);
        std::size_t id = 0;
        const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), id);
        if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
          throw ParseError(where(source, number) + ": expected a word id, got '" +
                           std::string(f) + "'");
        }
        ids.push_back(id);
      }
    }
    out.push_back(std::move(ids));
  }
  return out;
}

std::string to_canonical_text(std::span<const GtInstance> gts) {
  std::string out;
  for (const GtInstance& g : gts) {
    append_polygon(out, g.polygon);
    if (g.transcription) {
      out.push_back(',');
      out += *g.transcription;
    }
    out.push_back('\n');
  }
  return out;
}

std::string to_canonical_text(std::span<const Detection> dets,
                              const DetectionLayout& layout) {
  std::string out;
  for (const Detection& d : dets) {
    append_polygon(out, d.polygon);
    if (layout.confidence) {
      if (!d.confidence) {
        throw ValidationError("detection " + std::to_string(d.id) +
                              " has no confidence for a confidence layout");
      }
      out.push_back(',');
      append_number(out, *d.confidence);
    }
    if (layout.transcription) {
      out.push_back(',');
      out += d.transcription.value_or("");
    }
    out.push_back('\n');
  }
  return out;
}

std::string to_canonical_text(std::span<const Polygon> lines) {
  std::string out;
  for (const Polygon& p : lines) {
    append_polygon(out, p);
    out.push_back('\n');
  }
  return out;
}

std::vector<ArchiveEntry> read_archive(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    std::vector<ArchiveEntry> out;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (!entry.is_regular_file()) continue;
      out.push_back({entry.path().filename().string(), slurp(entry.path())});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
  }
  if (!fs::is_regular_file(path, ec)) {
    throw EvaluationError("cannot read archive " + path.string() +
                          ": no such file or directory");
  }
  if (!is_zip_file(path)) {
    throw EvaluationError(path.string() + " is neither a directory nor a zip");
  }
  return read_zip(path);
}

std::vector<ImageRecord> load_dataset(
    const std::filesystem::path& gt_archive,
    const std::filesystem::path& det_archive,
    const std::optional<std::filesystem::path>& line_archive,
    const DatasetOptions& options, Diagnostics* diagnostics) {
  const auto gt_entries = read_archive(gt_archive);
  const auto det_entries = read_archive(det_archive);
  const auto gt_files = index_by_key(gt_entries, options.gt_pattern, "ground-truth");
  const auto det_files = index_by_key(det_entries, options.det_pattern, "detection");

  for (const auto& [key, entry] : det_files) {
    if (!gt_files.contains(key)) {
      throw EvaluationError("detection file " + entry->name +
                            " has no ground truth (key '" + key + "')");
    }
  }

  std::vector<ArchiveEntry> line_entries;
  std::map<std::string, const ArchiveEntry*> line_files;
  std::map<std::string, const ArchiveEntry*> member_files;
  if (line_archive) {
    line_entries = read_archive(*line_archive);
    line_files = index_by_key(line_entries, options.line_pattern, "text-line");
    member_files =
        index_by_key(line_entries, options.membership_pattern, "membership");
    for (const auto* files : {&line_files, &member_files}) {
      for (const auto& [key, entry] : *files) {
        if (!gt_files.contains(key)) {
          throw EvaluationError("text-line file " + entry->name +
                                " has no ground truth (key '" + key + "')");
        }
      }
    }
  }

  std::vector<ImageRecord> records;
  for (const auto& [key, gt_entry] : gt_files) {
    ImageRecord rec;
    rec.key = key;
    rec.gts = parse_gt_word_file(gt_entry->contents, options.gt_format,
                                 gt_entry->name, options.parse, diagnostics);
    if (const auto it = det_files.find(key); it != det_files.end()) {
      rec.dets = parse_detection_file(it->second->contents, options.det_layout,
                                      it->second->name, options.parse,
                                      diagnostics);
    } else if (diagnostics != nullptr) {
      diagnostics->warn("no detection file for image '" + key +
                        "'; all its ground truth counts as missed");
    }
    if (line_archive) {
      std::vector<Polygon> polygons;
      if (const auto it = line_files.find(key); it != line_files.end()) {
        polygons = parse_line_file(it->second->contents, options.gt_format,
                                   it->second->name, options.parse,
                                   diagnostics);
      }
      if (const auto it = member_files.find(key); it != member_files.end()) {
        const auto membership =
            parse_membership_file(it->second->contents, it->second->name);
        rec.lines = build_line_index(rec.gts, polygons, membership, diagnostics);
      } else {
        rec.lines = build_line_index(rec.gts, polygons, diagnostics);
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace tiou
