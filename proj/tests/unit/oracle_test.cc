// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

// The oracle itself is checked first: against hand-computed areas and
// against its literal per-sample form.

#include "raster_oracle.h"

#include "doctest.h"
#include "generators.h"

using oracle::Region;
using tiou::Polygon;

TEST_CASE("oracle reproduces closed-form areas") {
  const Polygon a = Polygon::rectangle(0, 0, 100, 20);
  const Polygon b = Polygon::rectangle(20, 0, 120, 20);
  CHECK(oracle::raster_area(Region::of(a), 1024) ==
        doctest::Approx(2000).epsilon(0.01));
  CHECK(oracle::raster_area(Region::of(a) & Region::of(b), 1024) ==
        doctest::Approx(1600).epsilon(0.01));
  const Polygon det = Polygon::rectangle(0, 0, 300, 20);
  const Polygon target = Polygon::rectangle(0, 0, 100, 20);
  const Region outliers = Region::of(Polygon::rectangle(150, 0, 200, 20)) |
                          Region::of(Polygon::rectangle(180, 0, 230, 20));
  CHECK(oracle::raster_area((Region::of(det) & outliers) - Region::of(target),
                            2048) == doctest::Approx(1600).epsilon(0.01));
  const Polygon tri = Polygon::from_vertices({{0, 0}, {1, 0}, {0, 1}});
  CHECK(oracle::raster_area(Region::of(tri), 1024) ==
        doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("oracle point membership") {
  const Polygon l = Polygon::from_vertices(
      {{0, 0}, {100, 0}, {100, 50}, {50, 50}, {50, 100}, {0, 100}});
  CHECK(oracle::point_in_polygon(l, {25, 75}));
  CHECK(!oracle::point_in_polygon(l, {75, 75}));
  CHECK(!oracle::point_in_polygon(l, {-1, 10}));
}

TEST_CASE("row-crossing sampling equals per-sample sampling") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    CAPTURE(seed);
    gen::Gen g(seed);
    const Region a = Region::of(g.star({50, 50}, 40, g.integer(3, 8)));
    const Region b = Region::of(g.star({60, 45}, 40, g.integer(3, 8)));
    const Region c = Region::of(g.quad({45, 60}, 30));
    const Region expr = ((a | b) - c) | (a & c);
    const tiou::Box w = expr.operand_bounds();
    CHECK(oracle::raster_area(expr, 97, w) ==
          oracle::raster_area_naive(expr, 97, w));
  }
}

TEST_CASE("intersection window") {
  const Polygon a = Polygon::rectangle(0, 0, 100, 20);
  const Polygon b = Polygon::rectangle(20, 5, 120, 40);
  const tiou::Box w = oracle::intersection_bounds(a, b);
  CHECK(w.min_x == 20);
  CHECK(w.min_y == 5);
  CHECK(w.max_x == 100);
  CHECK(w.max_y == 20);
  CHECK(oracle::intersection_bounds(a, Polygon::rectangle(200, 0, 300, 20))
            .empty());

  // A diamond poking into a square: the crossing points bound the overlap.
  const Polygon d = Polygon::from_vertices({{90, 10}, {110, 0}, {130, 10}, {110, 20}});
  const tiou::Box v = oracle::intersection_bounds(a, d);
  CHECK(v.min_x == doctest::Approx(90));
  CHECK(v.max_x == doctest::Approx(100));
  CHECK(v.min_y == doctest::Approx(5));
  CHECK(v.max_y == doctest::Approx(15));
}
