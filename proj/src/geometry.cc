// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

#include "tiou/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tiou/errors.h"

namespace tiou {

namespace {

constexpr double kDegenerateRatio = 1e-9;

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// q lies on segment pr, given that p, q, r are collinear.
bool on_segment(const Point& p, const Point& q, const Point& r) {
  return std::min(p.x, r.x) <= q.x && q.x <= std::max(p.x, r.x) &&
         std::min(p.y, r.y) <= q.y && q.y <= std::max(p.y, r.y);
}

// Closed segments p1p2 and p3p4 share at least one point.
bool segments_touch(const Point& p1, const Point& p2, const Point& p3,
                    const Point& p4) {
  const int d1 = sign(cross(p3, p4, p1));
  const int d2 = sign(cross(p3, p4, p2));
  const int d3 = sign(cross(p1, p2, p3));
  const int d4 = sign(cross(p1, p2, p4));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(p3, p1, p4)) return true;
  if (d2 == 0 && on_segment(p3, p2, p4)) return true;
  if (d3 == 0 && on_segment(p1, p3, p2)) return true;
  if (d4 == 0 && on_segment(p1, p4, p2)) return true;
  return false;
}

Box bounds_of(std::span<const Point> pts) {
  Box b{std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity(),
        -std::numeric_limits<double>::infinity(),
        -std::numeric_limits<double>::infinity()};
  for (const Point& p : pts) {
    b.min_x = std::min(b.min_x, p.x);
    b.min_y = std::min(b.min_y, p.y);
    b.max_x = std::max(b.max_x, p.x);
    b.max_y = std::max(b.max_y, p.y);
  }
  return b;
}

// Returns the index pair of the first two edges that intersect improperly,
// or {-1, -1} when the closed polyline is simple.
std::pair<int, int> find_self_intersection(std::span<const Point> v) {
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i) {
    const Point& a0 = v[i];
    const Point& a1 = v[(i + 1) % n];
    // Adjacent edge folding back onto this one.
    const Point& a2 = v[(i + 2) % n];
    if (sign(cross(a0, a1, a2)) == 0) {
      const double dot =
          (a1.x - a0.x) * (a2.x - a1.x) + (a1.y - a0.y) * (a2.y - a1.y);
      if (dot < 0.0) return {i, (i + 1) % n};
    }
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through vertex 0
      if (segments_touch(a0, a1, v[j], v[(j + 1) % n])) return {i, j};
    }
  }
  return {-1, -1};
}

// All vertices on one line (to within kDegenerateRatio of the squared
// extent). Such polygons fold back on themselves without being "crossed".
bool collinear(std::span<const Point> v) {
  std::size_t a = 0, b = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const double dx = v[j].x - v[i].x, dy = v[j].y - v[i].y;
      if (dx * dx + dy * dy > best) {
        best = dx * dx + dy * dy;
        a = i;
        b = j;
      }
    }
  }
  for (const Point& p : v) {
    if (std::abs(cross(v[a], v[b], p)) > kDegenerateRatio * best) return false;
  }
  return true;
}

struct Edge {
  Point lo;  // smaller x
  Point hi;
  std::size_t operand;

  double y_at(double x) const {
    return lo.y + (x - lo.x) * (hi.y - lo.y) / (hi.x - lo.x);
  }
};

}  // namespace

bool Box::overlaps(const Box& other) const {
  return min_x < other.max_x && other.min_x < max_x && min_y < other.max_y &&
         other.min_y < max_y;
}

Box Box::intersect(const Box& other) const {
  return Box{std::max(min_x, other.min_x), std::max(min_y, other.min_y),
             std::min(max_x, other.max_x), std::min(max_y, other.max_y)};
}

Box Box::merge(const Box& other) const {
  return Box{std::min(min_x, other.min_x), std::min(min_y, other.min_y),
             std::max(max_x, other.max_x), std::max(max_y, other.max_y)};
}

double signed_area(std::span<const Point> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = vertices[i];
    const Point& b = vertices[(i + 1) % n];
    twice += a.x * b.y - a.y * b.x;
  }
  return 0.5 * twice;
}

Polygon Polygon::from_vertices(std::vector<Point> vertices,
                               std::string_view label) {
  for (const Point& p : vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw ValidationError(std::string(label) +
                            ": vertex coordinates must be finite");
    }
  }
  vertices.erase(std::unique(vertices.begin(), vertices.end()),
                 vertices.end());
  while (vertices.size() > 1 && vertices.front() == vertices.back()) {
    vertices.pop_back();
  }
  if (vertices.size() < 3) {
    throw ValidationError(std::string(label) +
                          ": a polygon needs at least 3 distinct vertices");
  }

  Polygon poly;
  poly.bounds_ = bounds_of(vertices);
  const double area = signed_area(vertices);
  poly.degenerate_ = std::abs(area) <= kDegenerateRatio * poly.bounds_.area();
  if (!poly.degenerate_ || !collinear(vertices)) {
    const auto [e1, e2] = find_self_intersection(vertices);
    if (e1 >= 0) {
      throw ValidationError(std::string(label) +
                            ": polygon is not simple (edges " +
                            std::to_string(e1) + " and " + std::to_string(e2) +
                            " intersect)");
    }
  }
  if (area < 0.0) std::reverse(vertices.begin(), vertices.end());
  poly.area_ = std::abs(area);
  poly.vertices_ = std::move(vertices);
  return poly;
}

Polygon Polygon::rectangle(double min_x, double min_y, double max_x,
                           double max_y) {
  return from_vertices({{min_x, min_y}, {max_x, min_y}, {max_x, max_y},
                        {min_x, max_y}},
                       "rectangle");
}

bool Polygon::is_axis_aligned_rectangle() const {
  if (vertices_.size() != 4) return false;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point& a = vertices_[i];
    const Point& b = vertices_[(i + 1) % 4];
    if (a.x != b.x && a.y != b.y) return false;
  }
  return true;
}

double polygon_area(const Polygon& p) { return p.area(); }

double boolean_area(std::span<const Polygon* const> operands,
                    const RegionPredicate& predicate, const Box& window) {
  if (!(window.min_x < window.max_x)) return 0.0;

  std::vector<Edge> edges;
  std::vector<double> xs{window.min_x, window.max_x};
  for (std::size_t k = 0; k < operands.size(); ++k) {
    const auto v = operands[k]->vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
      Point a = v[i];
      Point b = v[(i + 1) % v.size()];
      if (a.x == b.x) continue;  // vertical edges carry no slab area
      if (b.x < a.x) std::swap(a, b);
      if (b.x <= window.min_x || a.x >= window.max_x) continue;
      edges.push_back({a, b, k});
      xs.push_back(a.x);
      xs.push_back(b.x);
    }
  }

  // Crossings between edges of different operands. Edges of one simple
  // polygon only meet at shared vertices, which are already in xs.
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const Edge& e = edges[i];
      const Edge& f = edges[j];
      if (e.operand == f.operand) continue;
      const double lo = std::max(e.lo.x, f.lo.x);
      const double hi = std::min(e.hi.x, f.hi.x);
      if (!(lo < hi)) continue;
      const double d_lo = e.y_at(lo) - f.y_at(lo);
      const double d_hi = e.y_at(hi) - f.y_at(hi);
      if ((d_lo < 0.0 && d_hi > 0.0) || (d_lo > 0.0 && d_hi < 0.0)) {
        xs.push_back(lo + (hi - lo) * d_lo / (d_lo - d_hi));
      }
    }
  }

  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<std::pair<double, std::size_t>> crossings;
  std::vector<std::uint8_t> inside(operands.size(), 0);
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
    const double x0 = std::max(xs[s], window.min_x);
    const double x1 = std::min(xs[s + 1], window.max_x);
    if (!(x0 < x1)) continue;
    const double mid = 0.5 * (x0 + x1);

    crossings.clear();
    for (const Edge& e : edges) {
      if (e.lo.x <= x0 && e.hi.x >= x1) {
        crossings.emplace_back(e.y_at(mid), e.operand);
      }
    }
    if (crossings.size() < 2) continue;
    std::sort(crossings.begin(), crossings.end());

    std::fill(inside.begin(), inside.end(), 0);
    double length = 0.0;
    for (std::size_t c = 0; c + 1 < crossings.size(); ++c) {
      inside[crossings[c].second] ^= 1;
      const double gap = crossings[c + 1].first - crossings[c].first;
      if (gap > 0.0 && predicate(inside)) length += gap;
    }
    total += (x1 - x0) * length;
  }
  return total;
}

double intersection_area(const Polygon& a, const Polygon& b) {
  if (!a.bounds().overlaps(b.bounds())) return 0.0;
  const Polygon* ops[] = {&a, &b};
  const double area = boolean_area(
      ops, [](Membership m) { return m[0] && m[1]; },
      a.bounds().intersect(b.bounds()));
  return std::clamp(area, 0.0, std::min(a.area(), b.area()));
}

double union_area(const Polygon& a, const Polygon& b) {
  return a.area() + b.area() - intersection_area(a, b);
}

double outlier_area(const Polygon& det, const Polygon& target,
                    std::span<const Polygon> others) {
  std::vector<const Polygon*> ops{&det, &target};
  for (const Polygon& o : others) {
    if (o.bounds().overlaps(det.bounds())) ops.push_back(&o);
  }
  if (ops.size() == 2) return 0.0;
  const double area = boolean_area(
      ops,
      [](Membership m) {
        if (!m[0] || m[1]) return false;
        return std::any_of(m.begin() + 2, m.end(),
                           [](std::uint8_t v) { return v != 0; });
      },
      det.bounds());
  return std::clamp(area, 0.0, det.area());
}

namespace {

template <typename F>
Polygon map_vertices(const Polygon& p, F&& f) {
  std::vector<Point> out;
  out.reserve(p.size());
  for (const Point& v : p.vertices()) out.push_back(f(v));
  return Polygon::from_vertices(std::move(out), "transformed polygon");
}

}  // namespace

Polygon translate(const Polygon& p, double dx, double dy) {
  return map_vertices(p, [&](Point v) { return Point{v.x + dx, v.y + dy}; });
}

Polygon scale(const Polygon& p, double factor) {
  return map_vertices(p,
                      [&](Point v) { return Point{v.x * factor, v.y * factor}; });
}

Polygon rotate(const Polygon& p, double radians, Point center) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  return map_vertices(p, [&](Point v) {
    const double dx = v.x - center.x;
    const double dy = v.y - center.y;
    return Point{center.x + c * dx - s * dy, center.y + s * dx + c * dy};
  });
}

}  // namespace tiou
