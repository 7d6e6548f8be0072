#pragma once

// Low-level geometric primitives shared by every module: 2D vectors,
// runtime-dimension points and boxes (dim <= kMaxDim), segment/box/polygon
// predicates, and a small interval type for certified implicit-function
// evaluation.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace cubical {

// Covers are used in the plane, on product spaces R^2 x [0,pi), and in the
// odd 1D/3D experiment; four axes is enough for all of them.
inline constexpr int kMaxDim = 4;

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// 2D vector

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  bool operator==(const Vec2&) const = default;

  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }
  Vec2 perp() const { return {-y, x}; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

// ---------------------------------------------------------------------------
// Runtime-dimension point

struct VecN {
  std::array<double, kMaxDim> v{};
  int dim = 2;

  VecN() = default;
  explicit VecN(int d) : dim(d) {
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("VecN: bad dimension");
  }
  VecN(double x, double y) : dim(2) {
    v[0] = x;
    v[1] = y;
  }
  explicit VecN(Vec2 p) : VecN(p.x, p.y) {}

  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

  Vec2 xy() const { return {v[0], v[1]}; }

  bool operator==(const VecN& o) const {
    if (dim != o.dim) return false;
    for (int i = 0; i < dim; ++i)
      if (v[static_cast<std::size_t>(i)] != o.v[static_cast<std::size_t>(i)]) return false;
    return true;
  }
};

inline double distance(const VecN& a, const VecN& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Axis-aligned box (closed)

struct Box {
  VecN lo;
  VecN hi;

  Box() = default;
  Box(const VecN& l, const VecN& h) : lo(l), hi(h) {}
  static Box of(double x0, double y0, double x1, double y1) {
    return Box(VecN(x0, y0), VecN(x1, y1));
  }

  int dim() const { return lo.dim; }
  double side(int i) const { return hi[i] - lo[i]; }

  double volume() const {
    double p = 1.0;
    for (int i = 0; i < dim(); ++i) p *= side(i);
    return p;
  }

  VecN center() const {
    VecN c(dim());
    for (int i = 0; i < dim(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
    return c;
  }

  double half_diagonal() const {
    double s = 0.0;
    for (int i = 0; i < dim(); ++i) {
      const double h = 0.5 * side(i);
      s += h * h;
    }
    return std::sqrt(s);
  }

  bool contains(const VecN& p) const {
    for (int i = 0; i < dim(); ++i)
      if (p[i] < lo[i] || p[i] > hi[i]) return false;
    return true;
  }

  bool intersects(const Box& o) const {
    for (int i = 0; i < dim(); ++i)
      if (std::max(lo[i], o.lo[i]) > std::min(hi[i], o.hi[i])) return false;
    return true;
  }

  // Positive-volume overlap (shared interior), not just touching.
  bool overlaps_interior(const Box& o) const {
    for (int i = 0; i < dim(); ++i)
      if (std::max(lo[i], o.lo[i]) >= std::min(hi[i], o.hi[i])) return false;
    return true;
  }

  Box inflated(double r) const {
    Box b = *this;
    for (int i = 0; i < dim(); ++i) {
      b.lo[i] -= r;
      b.hi[i] += r;
    }
    return b;
  }

  Box hull(const Box& o) const {
    Box b = *this;
    for (int i = 0; i < dim(); ++i) {
      b.lo[i] = std::min(b.lo[i], o.lo[i]);
      b.hi[i] = std::max(b.hi[i], o.hi[i]);
    }
    return b;
  }

  // Euclidean distance from the closed box to a point (0 inside).
  double distance_to(const VecN& p) const {
    double s = 0.0;
    for (int i = 0; i < dim(); ++i) {
      const double d = std::max({lo[i] - p[i], p[i] - hi[i], 0.0});
      s += d * d;
    }
    return std::sqrt(s);
  }

  // Distance from the point to the farthest point of the box.
  double max_distance_to(const VecN& p) const {
    double s = 0.0;
    for (int i = 0; i < dim(); ++i) {
      const double d = std::max(std::abs(lo[i] - p[i]), std::abs(hi[i] - p[i]));
      s += d * d;
    }
    return std::sqrt(s);
  }
};

// ---------------------------------------------------------------------------
// Segments

inline double segment_point_distance(Vec2 a, Vec2 b, Vec2 p) {
  const Vec2 ab = b - a;
  const double len2 = ab.norm2();
  if (len2 == 0.0) return distance(a, p);
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return distance(a + ab * t, p);
}

// Closed segment vs closed axis-aligned rectangle, Liang-Barsky style clip.
// True also for touching configurations.
inline bool segment_intersects_box(Vec2 a, Vec2 b, const Box& box) {
  double t0 = 0.0, t1 = 1.0;
  const double d[2] = {b.x - a.x, b.y - a.y};
  const double p0[2] = {a.x, a.y};
  for (int i = 0; i < 2; ++i) {
    const double lo = box.lo[i], hi = box.hi[i];
    if (d[i] == 0.0) {
      if (p0[i] < lo || p0[i] > hi) return false;
    } else {
      double ta = (lo - p0[i]) / d[i];
      double tb = (hi - p0[i]) / d[i];
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
      if (t0 > t1) return false;
    }
  }
  return true;
}

// Closed segment vs the OPEN rectangle: true iff some segment point lies
// strictly inside. Touching a face or sliding along an edge does not count.
inline bool segment_intersects_open_box(Vec2 a, Vec2 b, const Box& box) {
  double t0 = 0.0, t1 = 1.0;
  const double d[2] = {b.x - a.x, b.y - a.y};
  const double p0[2] = {a.x, a.y};
  for (int i = 0; i < 2; ++i) {
    const double lo = box.lo[i], hi = box.hi[i];
    if (d[i] == 0.0) {
      if (p0[i] <= lo || p0[i] >= hi) return false;
    } else {
      double ta = (lo - p0[i]) / d[i];
      double tb = (hi - p0[i]) / d[i];
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
    }
  }
  return t0 < t1;  // open overlap needs a positive-length or interior point
}

// ---------------------------------------------------------------------------
// Polygons (vertex loops, implicit closing edge)

inline double polygon_signed_area(std::span<const Vec2> verts) {
  double s = 0.0;
  const std::size_t n = verts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = verts[i];
    const Vec2 q = verts[(i + 1) % n];
    s += p.cross(q);
  }
  return 0.5 * s;
}

inline double polygon_perimeter(std::span<const Vec2> verts) {
  double s = 0.0;
  const std::size_t n = verts.size();
  for (std::size_t i = 0; i < n; ++i) s += distance(verts[i], verts[(i + 1) % n]);
  return s;
}

inline double polyline_length(std::span<const Vec2> verts) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < verts.size(); ++i) s += distance(verts[i], verts[i + 1]);
  return s;
}

inline double polyline_point_distance(std::span<const Vec2> verts, Vec2 p) {
  if (verts.empty()) throw std::invalid_argument("polyline_point_distance: empty polyline");
  if (verts.size() == 1) return distance(verts[0], p);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < verts.size(); ++i)
    best = std::min(best, segment_point_distance(verts[i], verts[i + 1], p));
  return best;
}

inline double polygon_edge_distance(std::span<const Vec2> verts, Vec2 p) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = verts.size();
  for (std::size_t i = 0; i < n; ++i)
    best = std::min(best, segment_point_distance(verts[i], verts[(i + 1) % n], p));
  return best;
}

// Closed-set membership: boundary points are inside. The parity walk is only
// consulted when p is strictly off every edge.
inline bool point_in_polygon(std::span<const Vec2> verts, Vec2 p) {
  if (polygon_edge_distance(verts, p) == 0.0) return true;
  bool in = false;
  const std::size_t n = verts.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = verts[j];
    const Vec2 b = verts[i];
    if ((b.y > p.y) != (a.y > p.y)) {
      const double xc = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
      if (p.x < xc) in = !in;
    }
  }
  return in;
}

inline bool polygon_is_convex(std::span<const Vec2> verts) {
  const std::size_t n = verts.size();
  if (n < 3) return false;
  int sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = verts[i];
    const Vec2 b = verts[(i + 1) % n];
    const Vec2 c = verts[(i + 2) % n];
    const double cr = (b - a).cross(c - b);
    if (cr != 0.0) {
      const int s = cr > 0.0 ? 1 : -1;
      if (sign == 0)
        sign = s;
      else if (s != sign)
        return false;
    }
  }
  return true;
}

// Proper or touching intersection of closed segments, orientation-sign based.
inline bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  auto orient = [](Vec2 p, Vec2 q, Vec2 r) {
    const double v = (q - p).cross(r - p);
    return (v > 0.0) - (v < 0.0);
  };
  auto on_seg = [](Vec2 p, Vec2 q, Vec2 r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
           std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
  };
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_seg(a, b, c)) return true;
  if (o2 == 0 && on_seg(a, b, d)) return true;
  if (o3 == 0 && on_seg(c, d, a)) return true;
  if (o4 == 0 && on_seg(c, d, b)) return true;
  return false;
}

inline bool polygon_is_simple(std::span<const Vec2> verts) {
  const std::size_t n = verts.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // skip adjacent edges (they share an endpoint)
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(verts[i], verts[(i + 1) % n], verts[j], verts[(j + 1) % n]))
        return false;
    }
  }
  return true;
}

inline Box polygon_bounding_box(std::span<const Vec2> verts) {
  double x0 = verts[0].x, x1 = verts[0].x, y0 = verts[0].y, y1 = verts[0].y;
  for (const Vec2& p : verts) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  return Box::of(x0, y0, x1, y1);
}

// Clip a convex polygon to the slab {y0 <= y <= y1}; returns the x-extent of
// the clipped region, or nullopt when the slab misses the polygon entirely.
inline std::optional<std::pair<double, double>> convex_clip_slab_x_extent(
    std::span<const Vec2> verts, double y0, double y1) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  bool any = false;
  auto take = [&](Vec2 p) {
    any = true;
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
  };
  const std::size_t n = verts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = verts[i];
    const Vec2 b = verts[(i + 1) % n];
    if (a.y >= y0 && a.y <= y1) take(a);
    // edge crossings with the two slab lines
    for (double yc : {y0, y1}) {
      if ((a.y < yc && b.y > yc) || (a.y > yc && b.y < yc)) {
        const double t = (yc - a.y) / (b.y - a.y);
        take({a.x + t * (b.x - a.x), yc});
      }
    }
  }
  if (!any) return std::nullopt;
  return std::make_pair(xmin, xmax);
}

// ---------------------------------------------------------------------------
// Intervals (outward-widened arithmetic for conservative implicit tests)

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double a, double b) : lo(a), hi(b) {}
  static Interval point(double a) { return {a, a}; }

  Interval operator+(const Interval& o) const { return widen({lo + o.lo, hi + o.hi}); }
  Interval operator-(const Interval& o) const { return widen({lo - o.hi, hi - o.lo}); }
  Interval operator*(const Interval& o) const {
    const double a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return widen({std::min({a, b, c, d}), std::max({a, b, c, d})});
  }
  Interval operator*(double s) const { return *this * point(s); }
  Interval operator-(double s) const { return *this - point(s); }

  Interval square() const {
    const double a = std::abs(lo), b = std::abs(hi);
    const double m = std::max(a, b);
    const double lo2 = (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(a, b);
    return widen({lo2 * lo2, m * m});
  }

 private:
  // Plain double arithmetic widened by a couple of ulps keeps the bounds
  // conservative without directed rounding.
  static Interval widen(Interval r) {
    const double e = 4.0 * std::numeric_limits<double>::epsilon();
    const double pad_lo = std::abs(r.lo) * e + 1e-300;
    const double pad_hi = std::abs(r.hi) * e + 1e-300;
    return {r.lo - pad_lo, r.hi + pad_hi};
  }
};

}  // namespace cubical
