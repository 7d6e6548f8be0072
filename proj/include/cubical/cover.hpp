#pragma once

// Cover construction: the set of depth-d dyadic cubes meeting a shape,
// enumerated over the shape's bounding box inflated by one cube (sufficient
// by boundedness). Also a fast row-run path that yields cube and boundary
// face counts for 2D shapes whose rows are single lattice intervals (disks,
// convex polygons) without materializing the cover; endpoints are verified
// with the exact predicate so the counts agree with build_cover.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cubical/dyadic.hpp"
#include "cubical/shapes.hpp"

namespace cubical::dyadic {

namespace detail {

inline std::int64_t floor_index(double coord, int depth) {
  const double s = std::ldexp(coord, depth);
  if (!std::isfinite(s) || std::abs(s) >= 4.5e15)
    throw std::invalid_argument("build_cover: shape extends beyond exact index range");
  return static_cast<std::int64_t>(std::floor(s));
}

}  // namespace detail

namespace detail {

// A point cloud meets a cube iff the cube contains one of the points, so the
// cover is the union of the cubes containing each point: the floor cube, plus
// the abutting cubes along every axis where the coordinate sits exactly on
// the lattice.
inline CubicalCover point_cloud_cover(const shapes::PointCloud& pc, int depth) {
  const int n = pc.pts.front().dim;
  CubicalCover cover(depth, n);
  for (const VecN& p : pc.pts) {
    std::array<std::array<std::int64_t, 2>, kMaxDim> choices{};
    std::array<int, kMaxDim> counts{};
    for (int i = 0; i < n; ++i) {
      const std::int64_t k = floor_index(p[i], depth);
      choices[static_cast<std::size_t>(i)][0] = k;
      counts[static_cast<std::size_t>(i)] = 1;
      if (std::ldexp(static_cast<double>(k), -depth) == p[i]) {
        choices[static_cast<std::size_t>(i)][1] = k - 1;
        counts[static_cast<std::size_t>(i)] = 2;
      }
    }
    std::array<int, kMaxDim> pick{};
    while (true) {
      Index idx{};
      for (int i = 0; i < n; ++i)
        idx[static_cast<std::size_t>(i)] =
            choices[static_cast<std::size_t>(i)][static_cast<std::size_t>(
                pick[static_cast<std::size_t>(i)])];
      cover.append(idx);
      int axis = 0;
      while (axis < n && ++pick[static_cast<std::size_t>(axis)] >=
                             counts[static_cast<std::size_t>(axis)]) {
        pick[static_cast<std::size_t>(axis)] = 0;
        ++axis;
      }
      if (axis == n) break;
    }
  }
  cover.finalize();
  return cover;
}

}  // namespace detail

inline CubicalCover build_cover(const shapes::Shape& shape, int depth) {
  check_depth(depth);
  if (shape.kind() == shapes::Kind::PointCloud)
    return detail::point_cloud_cover(shape.as<shapes::PointCloud>(), depth);
  const Box bb = bounding_box(shape);
  const int n = bb.dim();
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(bb.lo[i]) || !std::isfinite(bb.hi[i]))
      throw std::invalid_argument("build_cover: shape must be bounded");
  }

  std::array<std::int64_t, kMaxDim> lo{}, hi{};
  double candidates = 1.0;
  for (int i = 0; i < n; ++i) {
    lo[static_cast<std::size_t>(i)] = detail::floor_index(bb.lo[i], depth) - 1;
    hi[static_cast<std::size_t>(i)] = detail::floor_index(bb.hi[i], depth) + 1;
    candidates *= static_cast<double>(hi[static_cast<std::size_t>(i)] -
                                      lo[static_cast<std::size_t>(i)] + 1);
  }
  if (candidates > 1.4e8)
    throw std::invalid_argument(
        "build_cover: candidate lattice too large to materialize at depth " +
        std::to_string(depth) + " for shape kind " + shapes::kind_name(shape.kind()));

  CubicalCover cover(depth, n);
  Index idx{};
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(i)];
  // odometer over the candidate block, lexicographic order by construction
  while (true) {
    if (shapes::cube_intersects(shape, DyadicCube(depth, n, idx))) cover.append(idx);
    int axis = n - 1;
    while (axis >= 0) {
      auto& m = idx[static_cast<std::size_t>(axis)];
      if (++m <= hi[static_cast<std::size_t>(axis)]) break;
      m = lo[static_cast<std::size_t>(axis)];
      --axis;
    }
    if (axis < 0) break;
  }
  cover.finalize();
  return cover;
}

inline CubicalCover build_cover_of_points(std::span<const Vec2> pts, int depth) {
  shapes::PointCloud pc;
  pc.pts.reserve(pts.size());
  for (const Vec2& p : pts) pc.pts.emplace_back(p);
  return build_cover(shapes::Shape(std::move(pc)), depth);
}

// ---------------------------------------------------------------------------
// Row-run statistics (2D)

struct CoverStats {
  std::int64_t cube_count = 0;
  std::int64_t face_count = 0;
  double volume = 0.0;            // cube_count * 4^-d
  double boundary_measure = 0.0;  // face_count * 2^-d
};

namespace detail {

struct Run {
  std::int64_t a = 0;
  std::int64_t b = 0;  // inclusive
  std::int64_t length() const { return b - a + 1; }
};

// Adjust an analytic guess for the run of cover cubes in row y until the
// exact predicate confirms both endpoints.
inline std::optional<Run> verify_run(const shapes::Shape& s, int depth, std::int64_t y,
                                     std::int64_t ga, std::int64_t gb) {
  auto pred = [&](std::int64_t x) {
    return shapes::cube_intersects(s, DyadicCube(depth, x, y));
  };
  if (gb < ga) std::swap(ga, gb);
  std::int64_t a = ga, b = gb;
  while (a <= b && !pred(a)) ++a;
  if (a > b) {
    // guess window may sit entirely off the true run; probe one step outward
    if (pred(ga - 1)) { a = ga - 1; b = ga - 1; }
    else if (pred(gb + 1)) { a = gb + 1; b = gb + 1; }
    else return std::nullopt;
  }
  while (pred(a - 1)) --a;
  if (b < a) b = a;
  while (b >= a && !pred(b)) --b;
  while (pred(b + 1)) ++b;
  return Run{a, b};
}

inline std::optional<Run> row_run(const shapes::Shape& s, int depth, std::int64_t y) {
  const double h = std::ldexp(1.0, -depth);
  const double y0 = static_cast<double>(y) * h;
  const double y1 = y0 + h;
  switch (s.kind()) {
    case shapes::Kind::Disk: {
      const auto& d = s.as<shapes::Disk>();
      const double cy = d.center[1], cx = d.center[0], r = d.radius;
      const double ylo = std::max(y0, cy - r);
      const double yhi = std::min(y1, cy + r);
      if (ylo > yhi) return std::nullopt;
      double halfw;
      if (cy >= y0 && cy <= y1) {
        halfw = r;
      } else {
        const double dy = std::min(std::abs(ylo - cy), std::abs(yhi - cy));
        halfw = std::sqrt(std::max(0.0, r * r - dy * dy));
      }
      return verify_run(s, depth, y, floor_index(cx - halfw, depth),
                        floor_index(cx + halfw, depth));
    }
    case shapes::Kind::Polygon: {
      const auto ext = convex_clip_slab_x_extent(s.as<shapes::Polygon>().verts, y0, y1);
      if (!ext) return std::nullopt;
      return verify_run(s, depth, y, floor_index(ext->first, depth),
                        floor_index(ext->second, depth));
    }
    default: return std::nullopt;
  }
}

}  // namespace detail

inline bool supports_row_stats(const shapes::Shape& s) {
  if (s.dim() != 2) return false;
  if (s.kind() == shapes::Kind::Disk) return true;
  if (s.kind() == shapes::Kind::Polygon)
    return polygon_is_convex(s.as<shapes::Polygon>().verts);
  return false;
}

// Cube and boundary-face counts via row runs; each row of the cover of a
// convex shape is one contiguous run, so vertical faces contribute 2 per row
// and horizontal faces are the symmetric difference of adjacent rows.
inline CoverStats cover_stats_rows(const shapes::Shape& s, int depth) {
  if (!supports_row_stats(s))
    throw std::invalid_argument("cover_stats_rows: shape has no row-run support");
  check_depth(depth);
  const Box bb = bounding_box(s);
  const std::int64_t ylo = detail::floor_index(bb.lo[1], depth) - 1;
  const std::int64_t yhi = detail::floor_index(bb.hi[1], depth) + 1;

  CoverStats st;
  std::int64_t prev_a = 0, prev_b = -1;  // empty
  bool prev_nonempty = false;
  for (std::int64_t y = ylo; y <= yhi + 1; ++y) {
    std::optional<detail::Run> run =
        (y <= yhi) ? detail::row_run(s, depth, y) : std::nullopt;
    const bool nonempty = run.has_value();
    if (nonempty) {
      st.cube_count += run->length();
      st.face_count += 2;  // left and right vertical faces of the run
    }
    // horizontal faces between row y-1 and row y: cells in exactly one run
    if (prev_nonempty && nonempty) {
      const std::int64_t inter =
          std::max<std::int64_t>(0, std::min(prev_b, run->b) - std::max(prev_a, run->a) + 1);
      st.face_count += (prev_b - prev_a + 1) + run->length() - 2 * inter;
    } else if (prev_nonempty) {
      st.face_count += prev_b - prev_a + 1;
    } else if (nonempty) {
      st.face_count += run->length();
    }
    prev_nonempty = nonempty;
    if (nonempty) {
      prev_a = run->a;
      prev_b = run->b;
    }
  }
  st.volume = std::ldexp(static_cast<double>(st.cube_count), -2 * depth);
  st.boundary_measure = std::ldexp(static_cast<double>(st.face_count), -depth);
  return st;
}

// Uniform entry point: fast row path when available, otherwise materialize.
inline CoverStats cover_stats(const shapes::Shape& s, int depth) {
  if (supports_row_stats(s)) return cover_stats_rows(s, depth);
  const CubicalCover cover = build_cover(s, depth);
  const CubicalBoundary boundary = cover_boundary(cover);
  CoverStats st;
  st.cube_count = static_cast<std::int64_t>(cover.size());
  st.face_count = static_cast<std::int64_t>(boundary.faces.size());
  st.volume = cover_volume(cover);
  st.boundary_measure = boundary_area(boundary);
  return st;
}

}  // namespace cubical::dyadic
