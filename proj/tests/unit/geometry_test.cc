// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

#include "tiou/geometry.h"

#include <cmath>
#include <limits>
#include <string>

#include "doctest.h"
#include "generators.h"
#include "tiou/errors.h"

namespace {

using tiou::Point;
using tiou::Polygon;

Polygon R(double x0, double y0, double x1, double y1) {
  return Polygon::rectangle(x0, y0, x1, y1);
}

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("polygon area of basic shapes") {
  CHECK(tiou::polygon_area(R(0, 0, 100, 20)) == 2000.0);
  CHECK(tiou::polygon_area(
            Polygon::from_vertices({{0, 0}, {1, 0}, {0, 1}})) == 0.5);
  // Clockwise input is normalized.
  const Polygon cw =
      Polygon::from_vertices({{0, 0}, {0, 20}, {100, 20}, {100, 0}});
  CHECK(tiou::polygon_area(cw) == 2000.0);
  CHECK(tiou::signed_area(cw.vertices()) > 0.0);
}

TEST_CASE("intersection and union of rectangles") {
  const Polygon a = R(0, 0, 100, 20);
  const Polygon b = R(20, 0, 120, 20);
  CHECK(tiou::intersection_area(a, b) == doctest::Approx(1600.0).epsilon(1e-12));
  CHECK(tiou::union_area(a, b) == doctest::Approx(2400.0).epsilon(1e-12));
  CHECK(tiou::intersection_area(a, R(200, 0, 300, 20)) == 0.0);
  CHECK(tiou::union_area(a, R(200, 0, 300, 20)) == 4000.0);
  CHECK(tiou::intersection_area(a, a) == doctest::Approx(2000.0));
  CHECK(tiou::union_area(a, a) == doctest::Approx(2000.0));
  // Touching along an edge only.
  CHECK(tiou::intersection_area(a, R(100, 0, 200, 20)) == 0.0);
  // Containment.
  CHECK(tiou::intersection_area(R(10, 5, 20, 15), a) ==
        doctest::Approx(100.0));
}

TEST_CASE("intersection with a non-convex polygon") {
  // L shape: 100x100 square minus its upper-right 50x50 quadrant.
  const Polygon l = Polygon::from_vertices(
      {{0, 0}, {100, 0}, {100, 50}, {50, 50}, {50, 100}, {0, 100}});
  CHECK(l.area() == doctest::Approx(7500.0));
  CHECK(tiou::intersection_area(l, R(25, 25, 75, 75)) ==
        doctest::Approx(2500.0 - 625.0));
  CHECK(tiou::intersection_area(l, R(60, 60, 90, 90)) == 0.0);
}

TEST_CASE("intersection of rotated squares") {
  // Diamond inscribed in the unit square covers half of it.
  const Polygon diamond =
      Polygon::from_vertices({{0.5, 0}, {1, 0.5}, {0.5, 1}, {0, 0.5}});
  CHECK(tiou::intersection_area(diamond, R(0, 0, 1, 1)) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tiou::intersection_area(diamond, R(0, 0, 0.5, 1)) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("outlier area") {
  const Polygon det = R(0, 0, 200, 20);
  const Polygon target = R(0, 0, 100, 20);
  const std::vector<Polygon> one = {R(150, 0, 250, 20)};
  CHECK(tiou::outlier_area(det, target, one) == doctest::Approx(1000.0));

  const std::vector<Polygon> disjoint = {R(300, 0, 400, 20)};
  CHECK(tiou::outlier_area(det, target, disjoint) == 0.0);
  CHECK(tiou::outlier_area(det, target, {}) == 0.0);

  // Overlapping others count once: union, not sum.
  const Polygon wide = R(0, 0, 300, 20);
  const std::vector<Polygon> two = {R(150, 0, 200, 20), R(180, 0, 230, 20)};
  CHECK(tiou::outlier_area(wide, target, two) == doctest::Approx(1600.0));

  // An outlier inside the target is not penalized.
  const std::vector<Polygon> inner = {R(10, 5, 40, 15)};
  CHECK(tiou::outlier_area(det, target, inner) == 0.0);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(Polygon::from_vertices({{0, 0}, {1, 0}}),
                  tiou::ValidationError);
  // Bow tie.
  try {
    Polygon::from_vertices({{0, 0}, {10, 10}, {10, 0}, {0, 10}}, "img_3:7");
    FAIL("self-intersecting polygon accepted");
  } catch (const tiou::ValidationError& e) {
    CHECK(std::string(e.what()).find("img_3:7") != std::string::npos);
  }
  CHECK_THROWS_AS(
      Polygon::from_vertices(
          {{0, 0}, {std::numeric_limits<double>::quiet_NaN(), 0}, {0, 1}}),
      tiou::ValidationError);
  CHECK_THROWS_AS(
      Polygon::from_vertices(
          {{0, 0}, {std::numeric_limits<double>::infinity(), 0}, {0, 1}}),
      tiou::ValidationError);
  // Non-adjacent edges touching at a vertex.
  CHECK_THROWS_AS(Polygon::from_vertices(
                      {{0, 0}, {4, 0}, {2, 2}, {4, 4}, {0, 4}, {2, 2}}),
                  tiou::ValidationError);
}

TEST_CASE("duplicates and degeneracy") {
  const Polygon p = Polygon::from_vertices(
      {{0, 0}, {0, 0}, {10, 0}, {10, 5}, {0, 5}, {0, 0}});
  CHECK(p.size() == 4);
  CHECK(p.area() == 50.0);
  CHECK(p.is_axis_aligned_rectangle());

  const Polygon sliver = Polygon::from_vertices({{0, 0}, {5, 0}, {10, 0}});
  CHECK(sliver.degenerate());
  CHECK(!R(0, 0, 1, 1).degenerate());
  CHECK(!Polygon::from_vertices({{0, 0}, {1, 0}, {0, 1}})
             .is_axis_aligned_rectangle());
}

TEST_CASE("property: area bounds and union identity") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    CAPTURE(seed);
    gen::Gen g(seed);
    const Polygon a = g.quad_in(1000);
    const Polygon b = g.chance(0.7) ? g.near(a) : g.quad_in(1000);
    const double i = tiou::intersection_area(a, b);
    CHECK(i >= 0.0);
    CHECK(i <= std::min(a.area(), b.area()));
    CHECK(tiou::union_area(a, b) == a.area() + b.area() - i);
    CHECK(rel_diff(i, tiou::intersection_area(b, a)) < 1e-12);
  }
}

TEST_CASE("property: translation and scale") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    CAPTURE(seed);
    gen::Gen g(seed);
    const Polygon a = g.star({500, 500}, 200, g.integer(3, 9));
    const Polygon b = g.near(a);
    const double i = tiou::intersection_area(a, b);
    const double dx = g.uniform(-1e4, 1e4), dy = g.uniform(-1e4, 1e4);
    const double s = g.uniform(0.1, 10.0);
    CHECK(rel_diff(i, tiou::intersection_area(tiou::translate(a, dx, dy),
                                              tiou::translate(b, dx, dy))) <
          1e-9);
    CHECK(rel_diff(s * s * i, tiou::intersection_area(tiou::scale(a, s),
                                                      tiou::scale(b, s))) <
          1e-9);
    const double t = g.uniform(0, 6.28);
    CHECK(rel_diff(i, tiou::intersection_area(
                          tiou::rotate(a, t, {500, 500}),
                          tiou::rotate(b, t, {500, 500}))) < 1e-9);
  }
}

TEST_CASE("property: outlier area range") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    CAPTURE(seed);
    gen::Gen g(seed);
    const Polygon det = g.quad_in(1000);
    const Polygon target = g.near(det);
    std::vector<Polygon> others;
    for (int k = g.integer(0, 4); k > 0; --k) others.push_back(g.near(det));
    const double o = tiou::outlier_area(det, target, others);
    CHECK(o >= 0.0);
    CHECK(o <= det.area() - tiou::intersection_area(det, target) +
                   1e-9 * det.area());
  }
}
