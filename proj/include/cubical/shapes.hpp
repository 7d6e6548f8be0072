#pragma once

// Shape algebra: the closed bounded sets the experiments run on, with exact
// cube-intersection predicates, analytic reference measures, boundary
// sampling with exact tangents, and Euclidean distance.
//
// All kinds carry closed-set semantics. The one deliberate exception is
// DenseUnitCube, the computable stand-in for a countable set dense in the
// open unit cube: its cube predicate asks for positive-volume overlap with
// [0,1]^n so that the depth-d cover is exactly the 4^d interior cubes and the
// cover volume is exactly 1 at every depth.

#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cubical/dyadic.hpp"
#include "cubical/geom.hpp"

namespace cubical::shapes {

enum class Kind { Disk, BallUnion, Polygon, Polyline, DenseUnitCube, PointCloud, Implicit };

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Disk: return "disk";
    case Kind::BallUnion: return "ball_union";
    case Kind::Polygon: return "polygon";
    case Kind::Polyline: return "polyline";
    case Kind::DenseUnitCube: return "dense_unit_cube";
    case Kind::PointCloud: return "point_cloud";
    case Kind::Implicit: return "implicit";
  }
  return "?";
}

struct Disk {
  VecN center{0.0, 0.0};
  double radius = 1.0;
};

// Union of closed balls. The classical configuration uses one common radius;
// per-ball radii are allowed so the shrinking-balls family is expressible.
struct BallUnion {
  std::vector<VecN> centers;
  std::vector<double> radii;

  bool uniform_radius() const {
    for (double r : radii)
      if (r != radii.front()) return false;
    return true;
  }
};

struct Polygon {
  std::vector<Vec2> verts;  // simple loop, positively oriented
};

struct Polyline {
  std::vector<Vec2> verts;  // open chain
};

struct DenseUnitCube {
  int dim = 2;
};

struct PointCloud {
  std::vector<VecN> pts;
};

// Sublevel set {f <= 0} with a certified interval evaluator. The range
// function must enclose f over the queried box; the cube predicate then
// includes any box it cannot decide, which keeps E inside every cover.
struct Implicit {
  std::string name;
  std::function<double(Vec2)> value;
  std::function<Interval(const Box&)> range;
  Box bbox;
};

class Shape {
 public:
  using Data = std::variant<Disk, BallUnion, Polygon, Polyline, DenseUnitCube, PointCloud, Implicit>;

  explicit Shape(Disk d) : data_(std::move(d)) {
    if (std::get<Disk>(data_).radius <= 0.0)
      throw std::invalid_argument("disk: radius must be > 0");
  }
  explicit Shape(BallUnion b) : data_(std::move(b)) {
    auto& bu = std::get<BallUnion>(data_);
    if (bu.centers.empty()) throw std::invalid_argument("ball_union: no centers");
    if (bu.radii.size() == 1) bu.radii.assign(bu.centers.size(), bu.radii.front());
    if (bu.radii.size() != bu.centers.size())
      throw std::invalid_argument("ball_union: radii/centers length mismatch");
    for (double r : bu.radii)
      if (r <= 0.0) throw std::invalid_argument("ball_union: radius must be > 0");
  }
  explicit Shape(Polygon p) : data_(std::move(p)) {
    auto& poly = std::get<Polygon>(data_);
    if (poly.verts.size() < 3) throw std::invalid_argument("polygon: needs >= 3 vertices");
    if (!polygon_is_simple(poly.verts))
      throw std::invalid_argument("polygon: must be simple (non-self-intersecting)");
    if (polygon_signed_area(poly.verts) < 0.0)
      std::reverse(poly.verts.begin(), poly.verts.end());
  }
  explicit Shape(Polyline p) : data_(std::move(p)) {
    if (std::get<Polyline>(data_).verts.size() < 2)
      throw std::invalid_argument("polyline: needs >= 2 vertices");
  }
  explicit Shape(DenseUnitCube d) : data_(d) {
    if (d.dim < 1 || d.dim > kMaxDim) throw std::invalid_argument("dense_unit_cube: bad dim");
  }
  explicit Shape(PointCloud p) : data_(std::move(p)) {
    if (std::get<PointCloud>(data_).pts.empty())
      throw std::invalid_argument("point_cloud: empty shape");
  }
  explicit Shape(Implicit i) : data_(std::move(i)) {
    const auto& imp = std::get<Implicit>(data_);
    if (!imp.value || !imp.range) throw std::invalid_argument("implicit: missing evaluators");
  }

  Kind kind() const { return static_cast<Kind>(data_.index()); }
  const Data& data() const { return data_; }

  template <class T>
  const T& as() const {
    return std::get<T>(data_);
  }

  int dim() const {
    switch (kind()) {
      case Kind::Disk: return as<Disk>().center.dim;
      case Kind::BallUnion: return as<BallUnion>().centers.front().dim;
      case Kind::DenseUnitCube: return as<DenseUnitCube>().dim;
      case Kind::PointCloud: return as<PointCloud>().pts.front().dim;
      default: return 2;
    }
  }

 private:
  Data data_;
};

// ---------------------------------------------------------------------------
// Bounding box (every kind is bounded by construction)

inline Box bounding_box(const Shape& s) {
  switch (s.kind()) {
    case Kind::Disk: {
      const auto& d = s.as<Disk>();
      Box b{d.center, d.center};
      return b.inflated(d.radius);
    }
    case Kind::BallUnion: {
      const auto& bu = s.as<BallUnion>();
      Box b{bu.centers.front(), bu.centers.front()};
      b = b.inflated(bu.radii.front());
      for (std::size_t i = 1; i < bu.centers.size(); ++i)
        b = b.hull(Box{bu.centers[i], bu.centers[i]}.inflated(bu.radii[i]));
      return b;
    }
    case Kind::Polygon: return polygon_bounding_box(s.as<Polygon>().verts);
    case Kind::Polyline: return polygon_bounding_box(s.as<Polyline>().verts);
    case Kind::DenseUnitCube: {
      const int n = s.as<DenseUnitCube>().dim;
      Box b{VecN(n), VecN(n)};
      for (int i = 0; i < n; ++i) {
        b.lo[i] = 0.0;
        b.hi[i] = 1.0;
      }
      return b;
    }
    case Kind::PointCloud: {
      const auto& pc = s.as<PointCloud>();
      Box b{pc.pts.front(), pc.pts.front()};
      for (const VecN& p : pc.pts) b = b.hull(Box{p, p});
      return b;
    }
    case Kind::Implicit: return s.as<Implicit>().bbox;
  }
  throw std::logic_error("bounding_box: unreachable");
}

// ---------------------------------------------------------------------------
// Cube intersection predicate. Solid kinds (balls, polygons, the dense unit
// cube, implicit sublevels) intersect a cube when the overlap has positive
// volume; zero-area touches (a cube grazing a tangent point or sliding along
// a lattice-aligned edge) do not create cover cubes, so lattice-aligned sets
// cover themselves exactly. Curve and point kinds have measure zero, so they
// use closed membership and a sample on a lattice hyperplane belongs to every
// abutting cube. Implicit is conservative: a cube it cannot certify empty is
// kept, which preserves E inside the cover.

inline bool box_intersects(const Shape& s, const Box& box);

inline bool cube_intersects(const Shape& s, const dyadic::DyadicCube& cube) {
  if (s.dim() != cube.dim())
    throw std::invalid_argument("cube_intersects: dimension mismatch between shape and cube");
  return box_intersects(s, cube.box());
}

inline bool polygon_overlaps_open_box(std::span<const Vec2> verts, const Box& box) {
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (segment_intersects_open_box(verts[i], verts[(i + 1) % verts.size()], box)) return true;
  }
  // The boundary avoids the open box: the box interior is entirely inside or
  // entirely outside the polygon.
  return point_in_polygon(verts, box.center().xy());
}

inline bool box_intersects(const Shape& s, const Box& box) {
  switch (s.kind()) {
    case Kind::Disk: {
      const auto& d = s.as<Disk>();
      return box.distance_to(d.center) < d.radius;
    }
    case Kind::BallUnion: {
      const auto& bu = s.as<BallUnion>();
      for (std::size_t i = 0; i < bu.centers.size(); ++i)
        if (box.distance_to(bu.centers[i]) < bu.radii[i]) return true;
      return false;
    }
    case Kind::Polygon: return polygon_overlaps_open_box(s.as<Polygon>().verts, box);
    case Kind::Polyline: {
      const auto& verts = s.as<Polyline>().verts;
      for (std::size_t i = 0; i + 1 < verts.size(); ++i)
        if (segment_intersects_box(verts[i], verts[i + 1], box)) return true;
      return false;
    }
    case Kind::DenseUnitCube: {
      const int n = s.as<DenseUnitCube>().dim;
      for (int i = 0; i < n; ++i)
        if (std::max(box.lo[i], 0.0) >= std::min(box.hi[i], 1.0)) return false;
      return true;
    }
    case Kind::PointCloud: {
      for (const VecN& p : s.as<PointCloud>().pts)
        if (box.contains(p)) return true;
      return false;
    }
    case Kind::Implicit: {
      const auto& imp = s.as<Implicit>();
      if (!box.intersects(imp.bbox)) return false;
      const Interval f = imp.range(box);
      if (f.lo > 0.0) return false;  // certified empty
      return true;                   // certified hit or undecided: include
    }
  }
  throw std::logic_error("box_intersects: unreachable");
}

// ---------------------------------------------------------------------------
// Exact reference measures. Values are analytic or absent; estimators live in
// the measure module and must never leak in here.

struct ExactMeasures {
  std::optional<double> volume;            // L^n(E)
  std::optional<double> boundary_measure;  // H^{n-1}(dE)
  std::optional<double> reach;             // reach(dE); +inf allowed
};

inline double unit_ball_volume(double k) {
  return std::pow(kPi, k / 2.0) / std::tgamma(k / 2.0 + 1.0);
}

inline ExactMeasures exact_measures(const Shape& s) {
  ExactMeasures m;
  switch (s.kind()) {
    case Kind::Disk: {
      const auto& d = s.as<Disk>();
      const int n = d.center.dim;
      m.volume = unit_ball_volume(n) * std::pow(d.radius, n);
      m.boundary_measure = n * unit_ball_volume(n) * std::pow(d.radius, n - 1);
      m.reach = d.radius;
      break;
    }
    case Kind::BallUnion: {
      const auto& bu = s.as<BallUnion>();
      if (bu.centers.size() == 1) return exact_measures(Shape(Disk{bu.centers[0], bu.radii[0]}));
      break;  // overlapping unions have no closed form here
    }
    case Kind::Polygon: {
      const auto& p = s.as<Polygon>();
      m.volume = std::abs(polygon_signed_area(p.verts));
      m.boundary_measure = polygon_perimeter(p.verts);
      m.reach = 0.0;  // corners: a rolling ball of any radius touches two points
      break;
    }
    case Kind::Polyline: m.volume = 0.0; break;
    case Kind::DenseUnitCube: m.volume = 0.0; break;  // zero by definition of the stand-in
    case Kind::PointCloud: m.volume = 0.0; break;
    case Kind::Implicit: break;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Euclidean distance to the closed set (0 inside solids).

inline double distance_to(const Shape& s, const VecN& p) {
  switch (s.kind()) {
    case Kind::Disk: {
      const auto& d = s.as<Disk>();
      return std::max(0.0, distance(p, d.center) - d.radius);
    }
    case Kind::BallUnion: {
      const auto& bu = s.as<BallUnion>();
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < bu.centers.size(); ++i)
        best = std::min(best, std::max(0.0, distance(p, bu.centers[i]) - bu.radii[i]));
      return best;
    }
    case Kind::Polygon: {
      const auto& verts = s.as<Polygon>().verts;
      if (point_in_polygon(verts, p.xy())) return 0.0;
      return polygon_edge_distance(verts, p.xy());
    }
    case Kind::Polyline: return polyline_point_distance(s.as<Polyline>().verts, p.xy());
    case Kind::DenseUnitCube: {
      // Distance to the closure of the stand-in, i.e. to [0,1]^n.
      const int n = s.as<DenseUnitCube>().dim;
      Box b{VecN(n), VecN(n)};
      for (int i = 0; i < n; ++i) b.hi[i] = 1.0;
      return b.distance_to(p);
    }
    case Kind::PointCloud: {
      double best = std::numeric_limits<double>::infinity();
      for (const VecN& q : s.as<PointCloud>().pts) best = std::min(best, distance(p, q));
      return best;
    }
    case Kind::Implicit:
      throw std::invalid_argument("distance_to: unsupported for implicit shapes");
  }
  throw std::logic_error("distance_to: unreachable");
}

// Distance to the topological boundary of the shape; for curve-like kinds the
// set is its own boundary object of interest. Used by tube-volume estimators.
inline double boundary_distance(const Shape& s, const VecN& p) {
  switch (s.kind()) {
    case Kind::Disk: {
      const auto& d = s.as<Disk>();
      return std::abs(distance(p, d.center) - d.radius);
    }
    case Kind::Polygon: return polygon_edge_distance(s.as<Polygon>().verts, p.xy());
    case Kind::Polyline: return distance_to(s, p);
    case Kind::PointCloud: return distance_to(s, p);
    case Kind::BallUnion: {
      // Boundary of the union: points of the circles not strictly inside
      // another ball. Candidates: nearest point on each circle, plus
      // circle-circle intersection points.
      const auto& bu = s.as<BallUnion>();
      const Vec2 q = p.xy();
      double best = std::numeric_limits<double>::infinity();
      auto strictly_inside_other = [&](Vec2 z, std::size_t skip) {
        for (std::size_t j = 0; j < bu.centers.size(); ++j) {
          if (j == skip) continue;
          if (distance(Vec2{z.x, z.y}, bu.centers[j].xy()) < bu.radii[j] - 1e-12) return true;
        }
        return false;
      };
      for (std::size_t i = 0; i < bu.centers.size(); ++i) {
        const Vec2 c = bu.centers[i].xy();
        const double r = bu.radii[i];
        Vec2 dir = q - c;
        const double len = dir.norm();
        const Vec2 z = len == 0.0 ? c + Vec2{r, 0.0} : c + dir * (r / len);
        if (!strictly_inside_other(z, i)) best = std::min(best, distance(q, z));
        for (std::size_t j = i + 1; j < bu.centers.size(); ++j) {
          const Vec2 c2 = bu.centers[j].xy();
          const double r2 = bu.radii[j];
          const double dd = distance(c, c2);
          if (dd == 0.0 || dd > r + r2 || dd < std::abs(r - r2)) continue;
          const double a = (dd * dd + r * r - r2 * r2) / (2.0 * dd);
          const double h2 = r * r - a * a;
          const double h = h2 > 0.0 ? std::sqrt(h2) : 0.0;
          const Vec2 mid = c + (c2 - c) * (a / dd);
          const Vec2 perp = (c2 - c).perp() * (h / dd);
          for (const Vec2 z2 : {mid + perp, mid - perp}) {
            if (!strictly_inside_other(z2, bu.centers.size()))  // on both circles
              best = std::min(best, distance(q, z2));
          }
        }
      }
      return best;
    }
    default:
      throw std::invalid_argument(std::string("boundary_distance: unsupported kind ") +
                                  kind_name(s.kind()));
  }
}

// ---------------------------------------------------------------------------
// Boundary sampling with exact tangent directions (n = 2)

struct BoundarySample {
  Vec2 pos;
  double theta = 0.0;  // tangent line direction in [0, pi)
};

using BoundarySamples = std::vector<BoundarySample>;

inline double angle_mod_pi(double a) {
  double t = std::fmod(a, kPi);
  if (t < 0.0) t += kPi;
  if (t >= kPi) t = 0.0;
  return t;
}

namespace detail {

// Emit midpoints of ceil(len/spacing) equal subintervals of each edge. In-edge
// gaps are <= spacing and the gap across a shared vertex is <= spacing too,
// while the vertex itself (tangent undefined) is never emitted.
inline void sample_chain(std::span<const Vec2> verts, bool closed, double spacing,
                         BoundarySamples& out) {
  const std::size_t n = verts.size();
  const std::size_t edges = closed ? n : n - 1;
  for (std::size_t i = 0; i < edges; ++i) {
    const Vec2 a = verts[i];
    const Vec2 b = verts[(i + 1) % n];
    const double len = distance(a, b);
    if (len == 0.0) continue;
    const auto k = static_cast<std::size_t>(std::ceil(len / spacing));
    const double theta = angle_mod_pi(std::atan2(b.y - a.y, b.x - a.x));
    for (std::size_t j = 0; j < k; ++j) {
      const double t = (static_cast<double>(j) + 0.5) / static_cast<double>(k);
      out.push_back({a + (b - a) * t, theta});
    }
  }
}

}  // namespace detail

inline BoundarySamples sample_boundary(const Shape& s, double spacing) {
  if (spacing <= 0.0) throw std::invalid_argument("sample_boundary: spacing must be > 0");
  BoundarySamples out;
  switch (s.kind()) {
    case Kind::Disk: {
      const auto& d = s.as<Disk>();
      if (d.center.dim != 2) throw std::invalid_argument("sample_boundary: disk must be 2D");
      const auto k = static_cast<std::size_t>(std::ceil(2.0 * kPi * d.radius / spacing));
      const Vec2 c = d.center.xy();
      for (std::size_t i = 0; i < k; ++i) {
        const double phi = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(k);
        const Vec2 p = c + Vec2{d.radius * std::cos(phi), d.radius * std::sin(phi)};
        out.push_back({p, angle_mod_pi(phi + kPi / 2.0)});
      }
      return out;
    }
    case Kind::Polygon: {
      detail::sample_chain(s.as<Polygon>().verts, /*closed=*/true, spacing, out);
      return out;
    }
    case Kind::Polyline: {
      detail::sample_chain(s.as<Polyline>().verts, /*closed=*/false, spacing, out);
      return out;
    }
    case Kind::BallUnion: {
      // Sample each circle and keep only the points on the outer boundary of
      // the union (not strictly inside any other ball).
      const auto& bu = s.as<BallUnion>();
      for (std::size_t i = 0; i < bu.centers.size(); ++i) {
        const Vec2 c = bu.centers[i].xy();
        const double r = bu.radii[i];
        const auto k = static_cast<std::size_t>(std::ceil(2.0 * kPi * r / spacing));
        for (std::size_t j = 0; j < k; ++j) {
          const double phi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(k);
          const Vec2 p = c + Vec2{r * std::cos(phi), r * std::sin(phi)};
          bool interior = false;
          for (std::size_t l = 0; l < bu.centers.size() && !interior; ++l) {
            if (l == i) continue;
            if (distance(p, bu.centers[l].xy()) < bu.radii[l] - 1e-12) interior = true;
          }
          if (!interior) out.push_back({p, angle_mod_pi(phi + kPi / 2.0)});
        }
      }
      return out;
    }
    default:
      throw std::invalid_argument(std::string("sample_boundary: unsupported kind ") +
                                  kind_name(s.kind()));
  }
}

// ---------------------------------------------------------------------------
// Named implicit families (certified interval evaluators)

inline Shape make_ellipse(Vec2 center, double a, double b) {
  if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("ellipse: semi-axes must be > 0");
  Implicit imp;
  imp.name = "ellipse";
  imp.value = [=](Vec2 p) {
    const double u = (p.x - center.x) / a;
    const double v = (p.y - center.y) / b;
    return u * u + v * v - 1.0;
  };
  imp.range = [=](const Box& box) {
    const Interval x{box.lo[0], box.hi[0]};
    const Interval y{box.lo[1], box.hi[1]};
    const Interval u = (x - center.x) * (1.0 / a);
    const Interval v = (y - center.y) * (1.0 / b);
    return u.square() + v.square() - Interval::point(1.0);
  };
  imp.bbox = Box::of(center.x - a, center.y - b, center.x + a, center.y + b);
  return Shape(std::move(imp));
}

// The circle as a 1-dimensional set: sublevel of f = (|p-c|^2 - R^2)^2, which
// vanishes exactly on the circle. The interval evaluator is essentially exact
// (squares of exact interval sums), so the cover equals the true circle cover
// up to rounding slack.
inline Shape make_circle_curve(Vec2 center, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("circle_curve: radius must be > 0");
  Implicit imp;
  imp.name = "circle_curve";
  imp.value = [=](Vec2 p) {
    const double g = (p - center).norm2() - radius * radius;
    return g * g;
  };
  imp.range = [=](const Box& box) {
    const Interval x{box.lo[0], box.hi[0]};
    const Interval y{box.lo[1], box.hi[1]};
    const Interval g =
        (x - center.x).square() + (y - center.y).square() - Interval::point(radius * radius);
    return g.square();
  };
  imp.bbox = Box::of(center.x - radius, center.y - radius, center.x + radius,
                     center.y + radius);
  return Shape(std::move(imp));
}

}  // namespace cubical::shapes
