// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

#include "tiou/annotation_io.h"

#include <fstream>
#include <string>

#include "doctest.h"
#include "generators.h"
#include "tiou/errors.h"
#include "tiou/harness.h"
#include "tiou/zip_archive.h"

namespace {

namespace fs = std::filesystem;
using tiou::BoxFormat;
using tiou::DetectionLayout;

constexpr BoxFormat kQuad = BoxFormat::kIcdar15Quad;
constexpr BoxFormat kRect = BoxFormat::kIcdar13Rect;

// A fresh scratch directory per test case.
fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("tiou_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("ground-truth word files") {
  const auto q = tiou::parse_gt_word_file("0,0,100,0,100,20,0,20,hello\n",
                                          kQuad, "gt_1.txt");
  REQUIRE(q.size() == 1);
  CHECK(q[0].polygon.area() == 2000.0);
  CHECK(q[0].transcription == "hello");
  CHECK(!q[0].dont_care);

  const auto r = tiou::parse_gt_word_file("0,0,100,20,\"hello\"", kRect, "x");
  REQUIRE(r.size() == 1);
  CHECK(r[0].polygon == q[0].polygon);
  CHECK(r[0].transcription == "hello");

  const auto dc =
      tiou::parse_gt_word_file("0,0,10,0,10,10,0,10,###", kQuad, "x");
  CHECK(dc[0].dont_care);

  // Commas inside the transcription survive; CRLF, BOM and blank lines are
  // tolerated; ids are dense.
  const auto many = tiou::parse_gt_word_file(
      "\xEF\xBB\xBF"
      "0,0,10,0,10,10,0,10,a,b\r\n\r\n20,0,30,0,30,10,20,10,c\r\n",
      kQuad, "x");
  REQUIRE(many.size() == 2);
  CHECK(many[0].transcription == "a,b");
  CHECK(many[1].id == 1);

  tiou::ParseOptions custom;
  custom.dont_care_sentinel = "IGNORE";
  CHECK(tiou::parse_gt_word_file("0,0,10,0,10,10,0,10,IGNORE", kQuad, "x",
                                 custom)[0]
            .dont_care);
}

TEST_CASE("ground-truth errors name file and line") {
  try {
    tiou::parse_gt_word_file("0,0,10,0,10,10,0,10,a\n0,0,1x,0,10,10,0,10,b",
                             kQuad, "gt_7.txt");
    FAIL("malformed number accepted");
  } catch (const tiou::ParseError& e) {
    CHECK(std::string(e.what()).find("gt_7.txt:2") != std::string::npos);
  }
  CHECK_THROWS_AS(tiou::parse_gt_word_file("0,0,10", kQuad, "x"),
                  tiou::ParseError);
  CHECK_THROWS_AS(tiou::parse_gt_word_file("0,0,10,10,10,0,0,10,bow", kQuad,
                                           "x"),
                  tiou::ValidationError);
  CHECK_THROWS_AS(tiou::parse_gt_word_file("0,0,nan,0,10,10,0,10,a", kQuad,
                                           "x"),
                  tiou::ParseError);
}

TEST_CASE("degenerate polygons") {
  tiou::Diagnostics diag;
  const auto g = tiou::parse_gt_word_file("0,0,5,0,10,0,0,0,flat", kQuad,
                                          "x", {}, &diag);
  REQUIRE(g.size() == 1);
  CHECK(g[0].dont_care);
  CHECK(diag.warnings.size() == 1);

  const auto d = tiou::parse_detection_file(
      "0,0,5,0,10,0,0,0\n0,0,10,0,10,10,0,10", {}, "x", {}, &diag);
  REQUIRE(d.size() == 1);
  CHECK(d[0].id == 0);
  CHECK(diag.warnings.size() == 2);

  tiou::ParseOptions strict;
  strict.strict = true;
  CHECK_THROWS_AS(
      tiou::parse_gt_word_file("0,0,5,0,10,0,0,0,flat", kQuad, "x", strict),
      tiou::ParseError);
}

TEST_CASE("detection files follow the declared layout") {
  const auto plain =
      tiou::parse_detection_file("0,0,100,0,100,20,0,20", {}, "x");
  REQUIRE(plain.size() == 1);
  CHECK(!plain[0].confidence);
  CHECK(!plain[0].transcription);

  DetectionLayout conf;
  conf.confidence = true;
  const auto c =
      tiou::parse_detection_file("0,0,100,0,100,20,0,20,0.93", conf, "x");
  CHECK(c[0].confidence == 0.93);

  DetectionLayout both = conf;
  both.transcription = true;
  const auto b = tiou::parse_detection_file(
      "0,0,100,0,100,20,0,20,0.93,hello", both, "x");
  CHECK(b[0].confidence == 0.93);
  CHECK(b[0].transcription == "hello");

  CHECK_THROWS_AS(
      tiou::parse_detection_file("0,0,100,0,100,20,0,20,1.5", conf, "x"),
      tiou::ParseError);
  CHECK_THROWS_AS(
      tiou::parse_detection_file("0,0,100,0,100,20,0,20", conf, "x"),
      tiou::ParseError);
  CHECK_THROWS_AS(
      tiou::parse_detection_file("0,0,100,0,100,20,0,20,0.5", {}, "x"),
      tiou::ParseError);

  DetectionLayout rect;
  rect.format = kRect;
  CHECK(tiou::parse_detection_file("0,0,100,20", rect, "x")[0].polygon.area() ==
        2000.0);
}

TEST_CASE("line and membership files") {
  const auto lines = tiou::parse_line_file(
      "0,0,200,0,200,20,0,20\n0,50,200,50,200,70,0,70,ignored", kQuad, "x");
  CHECK(lines.size() == 2);
  const auto m = tiou::parse_membership_file("0,1\n\n2, 3\n", "x");
  REQUIRE(m.size() == 3);
  CHECK(m[0] == std::vector<std::size_t>{0, 1});
  CHECK(m[1].empty());
  CHECK(m[2] == std::vector<std::size_t>{2, 3});
  CHECK_THROWS_AS(tiou::parse_membership_file("0,x", "x"), tiou::ParseError);
}

TEST_CASE("box format names") {
  CHECK(tiou::parse_box_format("icdar13-rect") == kRect);
  CHECK(tiou::box_format_name(kQuad) == "icdar15-quad");
  CHECK_THROWS_AS(tiou::parse_box_format("coco"), tiou::ParseError);
}

TEST_CASE("property: canonical text round-trips") {
  DetectionLayout layout;
  layout.confidence = true;
  layout.transcription = true;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CAPTURE(seed);
    const tiou::Scene s = tiou::random_scene(seed);
    const std::string gt_text = tiou::to_canonical_text(s.gts);
    const auto gts = tiou::parse_gt_word_file(gt_text, kQuad, "gt");
    CHECK(gts == s.gts);
    const auto dets = tiou::parse_detection_file(
        tiou::to_canonical_text(s.dets, layout), layout, "det");
    CHECK(dets == s.dets);
    CHECK(tiou::to_canonical_text(gts) == gt_text);
  }
}

TEST_CASE("zip archives") {
  const fs::path dir = scratch("zip");
  const std::vector<tiou::ArchiveEntry> entries = {
      {"gt_a.txt", "0,0,10,0,10,10,0,10,x\n"},
      {"sub/", ""},
      {"gt_b.txt", std::string(5000, 'z')}};
  tiou::write_zip(dir / "deflated.zip", {entries[0], entries[2]}, true);
  tiou::write_zip(dir / "stored.zip", {entries[0], entries[2]}, false);
  for (const char* name : {"deflated.zip", "stored.zip"}) {
    CAPTURE(name);
    CHECK(tiou::is_zip_file(dir / name));
    const auto back = tiou::read_zip(dir / name);
    REQUIRE(back.size() == 2);
    CHECK(back[0].name == "gt_a.txt");
    CHECK(back[0].contents == entries[0].contents);
    CHECK(back[1].contents == entries[2].contents);
  }
  write(dir / "junk.zip", "PK\x03\x04 not really a zip");
  CHECK_THROWS_AS(tiou::read_zip(dir / "junk.zip"), tiou::EvaluationError);
  CHECK_THROWS_AS(tiou::read_archive(dir / "missing"), tiou::EvaluationError);
}

TEST_CASE("load a dataset from directories and zips") {
  const fs::path dir = scratch("dataset");
  write(dir / "gt/gt_img_1.txt", "0,0,100,0,100,20,0,20,hello\n");
  write(dir / "gt/gt_img_2.txt", "0,0,100,0,100,20,0,20,###\n");
  write(dir / "gt/readme.md", "not an annotation");
  write(dir / "det/res_img_1.txt", "0,0,100,0,100,20,0,20\n");

  tiou::Diagnostics diag;
  const auto records =
      tiou::load_dataset(dir / "gt", dir / "det", std::nullopt, {}, &diag);
  REQUIRE(records.size() == 2);
  CHECK(records[0].key == "img_1");
  CHECK(records[0].dets.size() == 1);
  CHECK(records[1].dets.empty());
  CHECK(diag.warnings.size() == 1);  // img_2 has no detection file
  CHECK(!records[0].lines);

  tiou::write_zip(dir / "gt.zip", tiou::read_archive(dir / "gt"));
  tiou::write_zip(dir / "det.zip", tiou::read_archive(dir / "det"));
  const auto zipped =
      tiou::load_dataset(dir / "gt.zip", dir / "det.zip", std::nullopt, {});
  REQUIRE(zipped.size() == 2);
  CHECK(zipped[0].gts == records[0].gts);
  CHECK(zipped[0].dets == records[0].dets);

  write(dir / "det/res_img_9.txt", "0,0,100,0,100,20,0,20\n");
  try {
    tiou::load_dataset(dir / "gt", dir / "det", std::nullopt, {});
    FAIL("orphan detection file accepted");
  } catch (const tiou::EvaluationError& e) {
    CHECK(std::string(e.what()).find("img_9") != std::string::npos);
  }
}

TEST_CASE("load text lines with and without membership sidecars") {
  const fs::path dir = scratch("lines");
  write(dir / "gt/gt_a.txt",
        "0,0,90,0,90,20,0,20,foo\n110,0,200,0,200,20,110,20,bar\n");
  write(dir / "gt/gt_b.txt",
        "0,0,90,0,90,20,0,20,foo\n110,0,200,0,200,20,110,20,bar\n");
  write(dir / "det/res_a.txt", "0,0,200,0,200,20,0,20\n");
  write(dir / "lines/lines_a.txt", "0,0,200,0,200,20,0,20\n");
  write(dir / "lines/lines_b.txt", "0,0,200,0,200,20,0,20\n");
  write(dir / "lines/members_b.txt", "1\n");  // explicit: one word only

  tiou::Diagnostics diag;
  const auto records =
      tiou::load_dataset(dir / "gt", dir / "det", dir / "lines", {}, &diag);
  REQUIRE(records.size() == 2);
  REQUIRE(records[0].lines);
  REQUIRE(records[0].lines->size() == 1);
  CHECK((*records[0].lines)[0].member_word_ids ==
        std::vector<std::size_t>{0, 1});
  REQUIRE(records[1].lines);
  CHECK(records[1].lines->empty());  // sidecar leaves one member: dropped

  write(dir / "lines/lines_zzz.txt", "0,0,200,0,200,20,0,20\n");
  CHECK_THROWS_AS(
      tiou::load_dataset(dir / "gt", dir / "det", dir / "lines", {}),
      tiou::EvaluationError);
}
