#pragma once

// Jones beta numbers on sampled sets: the thinnest-slab width of the samples
// inside each tripled dyadic cube, normalized by the cube side, and the
// multiscale sum of squared betas over a depth range.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "cubical/cover.hpp"
#include "cubical/dyadic.hpp"
#include "cubical/geom.hpp"

namespace cubical::jones {

// Andrew monotone chain; returns the hull counter-clockwise without interior
// collinear points. Degenerate inputs (all collinear) come back with <= 2
// vertices.
inline std::vector<Vec2> convex_hull(std::span<const Vec2> pts) {
  std::vector<Vec2> p(pts.begin(), pts.end());
  std::sort(p.begin(), p.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  const std::size_t n = p.size();
  if (n <= 2) return p;
  std::vector<Vec2> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && (h[k - 1] - h[k - 2]).cross(p[i] - h[k - 2]) <= 0.0) --k;
    h[k++] = p[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && (h[k - 1] - h[k - 2]).cross(p[i] - h[k - 2]) <= 0.0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

// Width of the thinnest slab (region between two parallel lines) containing
// the points. The minimal slab has a hull edge on one side, so it suffices to
// scan hull edges and take the farthest-point distance. Collinear input has
// width zero.
inline double slab_width(std::span<const Vec2> pts) {
  if (pts.empty()) throw std::invalid_argument("slab_width: empty input");
  const std::vector<Vec2> hull = convex_hull(pts);
  if (hull.size() <= 2) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = hull.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = hull[i];
    const Vec2 e = hull[(i + 1) % n] - a;
    const double len = e.norm();
    if (len == 0.0) continue;
    double far = 0.0;
    for (const Vec2& q : hull) far = std::max(far, std::abs(e.cross(q - a)) / len);
    best = std::min(best, far);
  }
  return best;
}

// beta of one cube: slab width of the samples inside the tripled cube 3C,
// divided by l(C). Empty 3C contributes 0.
inline double beta_of_cube(std::span<const Vec2> samples, const dyadic::DyadicCube& cube) {
  const Box b3 = dyadic::concentric_3c(cube);
  std::vector<Vec2> inside;
  for (const Vec2& p : samples)
    if (b3.contains(VecN(p))) inside.push_back(p);
  if (inside.empty()) return 0.0;
  return slab_width(inside) / cube.side();
}

struct BetaCubeRow {
  dyadic::DyadicCube cube;
  double width = 0.0;
  double beta = 0.0;
};

struct BetaReport {
  int d_min = 0;
  int d_max = 0;
  std::vector<BetaCubeRow> per_cube;       // all depths, cover order per depth
  std::vector<double> per_depth_subtotal;  // indexed by d - d_min
  double beta_squared_sum = 0.0;
  bool spacing_warning = false;  // sample spacing coarser than l(C)/4 somewhere
};

// Sum of (beta(3C))^2 l(C) over the dyadic cubes at depths [d_min, d_max]
// that meet the sample cloud (a cube whose 3C holds no sample contributes 0,
// so only cubes meeting the cloud can matter among those enumerated).
inline BetaReport beta_squared_sum(std::span<const Vec2> samples, int d_min, int d_max,
                                   double sample_spacing = 0.0) {
  if (d_min > d_max) throw std::invalid_argument("beta_squared_sum: d_min > d_max");
  dyadic::check_depth(d_max);
  if (d_min < 0) throw std::invalid_argument("beta_squared_sum: d_min < 0");
  if (samples.empty()) throw std::invalid_argument("beta_squared_sum: no samples");

  BetaReport rep;
  rep.d_min = d_min;
  rep.d_max = d_max;
  rep.per_depth_subtotal.assign(static_cast<std::size_t>(d_max - d_min + 1), 0.0);

  for (int d = d_min; d <= d_max; ++d) {
    if (sample_spacing > 0.0 && sample_spacing > std::ldexp(1.0, -(d + 2)))
      rep.spacing_warning = true;

    // Bucket samples by their depth-d cell; the 3C of a cube then gathers
    // from the 3^2 neighboring buckets. Lattice-boundary samples belong to
    // every abutting cube for cover purposes, which the +-1 bucket window
    // already absorbs (membership in 3C is tested against the closed box).
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<Vec2>> buckets;
    for (const Vec2& p : samples) {
      const auto c = dyadic::cube_containing(VecN(p), d);
      buckets[{c.index(0), c.index(1)}].push_back(p);
    }

    const dyadic::CubicalCover cover = dyadic::build_cover_of_points(samples, d);
    const double side = std::ldexp(1.0, -d);
    double subtotal = 0.0;
    for (std::size_t i = 0; i < cover.size(); ++i) {
      const dyadic::DyadicCube cube = cover.cube(i);
      const Box b3 = dyadic::concentric_3c(cube);
      std::vector<Vec2> inside;
      // dx,dy up to +2: a sample exactly on the closed right/top edge of 3C
      // floors into the bucket just past the three interior columns.
      for (std::int64_t dx = -1; dx <= 2; ++dx) {
        for (std::int64_t dy = -1; dy <= 2; ++dy) {
          const auto it = buckets.find({cube.index(0) + dx, cube.index(1) + dy});
          if (it == buckets.end()) continue;
          for (const Vec2& p : it->second)
            if (b3.contains(VecN(p))) inside.push_back(p);
        }
      }
      BetaCubeRow row;
      row.cube = cube;
      row.width = inside.empty() ? 0.0 : slab_width(inside);
      row.beta = row.width / side;
      subtotal += row.beta * row.beta * side;
      rep.per_cube.push_back(row);
    }
    rep.per_depth_subtotal[static_cast<std::size_t>(d - d_min)] = subtotal;
    rep.beta_squared_sum += subtotal;
  }
  return rep;
}

}  // namespace cubical::jones
