// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

// Exact area computations on simple polygons.
//
// Every boolean area (intersection, union, the outlier region of a
// detection) is evaluated by one engine: the plane is cut into vertical
// slabs at every vertex abscissa and every edge/edge crossing, so that inside
// a slab no two edges cross and every cross-section is a fixed union of
// trapezoids. The area inside a slab is then its width times the
// cross-section length at the slab's mid-line, which is exact for
// piecewise-linear boundaries up to floating-point rounding.

#ifndef TIOU_GEOMETRY_H_
#define TIOU_GEOMETRY_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tiou {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Axis-aligned bounding box. Closed on all sides.
struct Box {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  double area() const { return width() * height(); }
  bool empty() const { return !(min_x < max_x) || !(min_y < max_y); }

  // Interiors overlap; boxes that only touch do not.
  bool overlaps(const Box& other) const;
  Box intersect(const Box& other) const;
  Box merge(const Box& other) const;
};

// A simple polygon stored counter-clockwise.
//
// Construction validates the vertex list: at least three distinct vertices,
// finite coordinates, and no self-intersection. Exact consecutive duplicate
// vertices (including a repeated closing vertex) are dropped; nothing is
// snapped. A polygon whose area is below 1e-9 of its bounding-box area is
// flagged degenerate(); callers decide what to do with it. Flat (collinear)
// vertex lists are accepted that way, but zero-area crossings such as a
// bow-tie are still rejected.
class Polygon {
 public:
  Polygon() = default;

  // Throws ValidationError naming `label` when the input is not a valid
  // simple polygon.
  static Polygon from_vertices(std::vector<Point> vertices,
                               std::string_view label = "polygon");
  static Polygon rectangle(double min_x, double min_y, double max_x,
                           double max_y);

  std::span<const Point> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  double area() const { return area_; }
  const Box& bounds() const { return bounds_; }
  bool degenerate() const { return degenerate_; }

  // True when the polygon is a 4-vertex axis-aligned rectangle.
  bool is_axis_aligned_rectangle() const;

  friend bool operator==(const Polygon& a, const Polygon& b) {
    return a.vertices_ == b.vertices_;
  }

 private:
  std::vector<Point> vertices_;
  Box bounds_;
  double area_ = 0.0;
  bool degenerate_ = false;
};

// Signed shoelace area; positive for counter-clockwise input.
double signed_area(std::span<const Point> vertices);

// Shoelace area of a validated polygon.
double polygon_area(const Polygon& p);

double intersection_area(const Polygon& a, const Polygon& b);

// area(a) + area(b) - intersection_area(a, b).
double union_area(const Polygon& a, const Polygon& b);

// Area of the region inside `det`, inside at least one polygon of `others`,
// and outside `target`. Others whose boxes miss `det` are skipped.
double outlier_area(const Polygon& det, const Polygon& target,
                    std::span<const Polygon> others);

// Membership of a point in each operand, in operand order.
using Membership = std::span<const std::uint8_t>;
using RegionPredicate = std::function<bool(Membership)>;

// Exact area of {p : predicate(membership of p)} restricted to the vertical
// strip window.min_x <= x <= window.max_x. The predicate must be false
// outside every operand.
double boolean_area(std::span<const Polygon* const> operands,
                    const RegionPredicate& predicate, const Box& window);

// Rigid and similarity transforms; the result is re-validated.
Polygon translate(const Polygon& p, double dx, double dy);
Polygon scale(const Polygon& p, double factor);
Polygon rotate(const Polygon& p, double radians, Point center);

}  // namespace tiou

#endif  // TIOU_GEOMETRY_H_
