#pragma once

// Estimators and bound checkers: Minkowski content via certified tube
// quadrature, per-cube density theta for unions of balls with the 3^n-tiling
// counting chain, a pairwise second-order reach estimator for sampled
// boundaries, curvature tube-volume bounds, and the cover-sum Hausdorff box
// estimate.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cubical/cover.hpp"
#include "cubical/dyadic.hpp"
#include "cubical/quadrature.hpp"
#include "cubical/shapes.hpp"

namespace cubical::measure {

// ---------------------------------------------------------------------------
// Minkowski content: L^n(W_r) / 2r for a schedule of radii, where W is the
// topological boundary for solid kinds and the set itself for curve-like
// kinds. Each tube volume comes back as a certified two-sided bracket.

struct MinkowskiPoint {
  double r = 0.0;
  double estimate = 0.0;    // bracket midpoint / 2r
  double half_width = 0.0;  // bracket half-width / 2r
  quadrature::AreaBracket tube_volume;
};

struct MinkowskiOptions {
  int max_quad_depth = 14;
  // Error out when the certified half-width of the estimate exceeds this.
  double tolerance = std::numeric_limits<double>::infinity();
};

inline std::function<double(const VecN&)> tube_distance_fn(const shapes::Shape& s) {
  using shapes::Kind;
  switch (s.kind()) {
    case Kind::Disk:
    case Kind::Polygon:
    case Kind::BallUnion:
      return [&s](const VecN& p) { return shapes::boundary_distance(s, p); };
    case Kind::Polyline:
    case Kind::PointCloud:
      return [&s](const VecN& p) { return shapes::distance_to(s, p); };
    default:
      throw std::invalid_argument(std::string("minkowski: unsupported kind ") +
                                  shapes::kind_name(s.kind()));
  }
}

inline std::vector<MinkowskiPoint> minkowski_content_estimate(
    const shapes::Shape& shape, const std::vector<double>& radii,
    const MinkowskiOptions& opts = {}) {
  const auto dist = tube_distance_fn(shape);
  std::vector<MinkowskiPoint> out;
  out.reserve(radii.size());
  for (double r : radii) {
    if (r <= 0.0) throw std::invalid_argument("minkowski: radii must be > 0");
    const Box root = bounding_box(shape).inflated(r);
    const auto bracket =
        quadrature::bracket_measure(quadrature::tube_classifier(dist, r), root,
                                    opts.max_quad_depth);
    MinkowskiPoint p;
    p.r = r;
    p.tube_volume = bracket;
    p.estimate = bracket.mid() / (2.0 * r);
    p.half_width = 0.5 * bracket.width() / (2.0 * r);
    if (p.half_width > opts.tolerance)
      throw std::runtime_error(
          "minkowski: certified half-width " + std::to_string(p.half_width) +
          " exceeds tolerance " + std::to_string(opts.tolerance) +
          " at max quadrature depth " + std::to_string(opts.max_quad_depth));
    out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Density theta for unions of balls (common radius), with the tiling chain:
// every cover cube C has density L^n(3C cap E)/L^n(3C) above theta, the 3C
// tiles of each of the 3^n shifted tilings are disjoint, so per-tiling tile
// counts and the total cube count are bounded by volume/(theta L^n(3C)).

struct DensityReport {
  int depth = 0;
  double radius = 0.0;
  double theta_lo = 0.0;  // certified bracket of min cube density
  double theta_hi = 0.0;
  quadrature::AreaBracket volume;                // L^n(E)
  std::vector<std::int64_t> per_tiling_counts;   // observed tile counts N_i
  double bound = 0.0;      // 3^n volume / (theta L^n(3C)), midpoint values
  std::int64_t cover_count = 0;
  double cover_volume = 0.0;
  bool counts_ok = false;  // every N_i <= vol_lo/(theta_hi L^n(3C))
  bool volume_ok = false;  // cover_volume <= vol_lo/theta_hi
};

struct DensityOptions {
  int cell_quad_depth = 6;    // relative subdivision depth inside each 3C
  int volume_quad_depth = 12; // bracket depth for L^n(E)
};

inline DensityReport density_theta(const shapes::Shape& shape, int depth,
                                   const DensityOptions& opts = {}) {
  shapes::BallUnion bu;
  if (shape.kind() == shapes::Kind::BallUnion) {
    bu = shape.as<shapes::BallUnion>();
  } else if (shape.kind() == shapes::Kind::Disk) {
    const auto& d = shape.as<shapes::Disk>();
    bu.centers = {d.center};
    bu.radii = {d.radius};
  } else {
    throw std::invalid_argument("density_theta: shape must be a union of balls");
  }
  if (!bu.uniform_radius())
    throw std::invalid_argument("density_theta: balls must share one radius");
  const double r = bu.radii.front();
  dyadic::check_depth(depth);
  if (std::ldexp(1.0, -depth) >= r / 4.0)
    throw std::invalid_argument(
        "density_theta: cube side must be < r/4 (cover too shallow for this radius)");

  const shapes::Shape ball_shape{shapes::Shape(bu)};
  const dyadic::CubicalCover cover = dyadic::build_cover(ball_shape, depth);
  const auto classify = quadrature::solid_classifier(ball_shape);

  DensityReport rep;
  rep.depth = depth;
  rep.radius = r;
  rep.cover_count = static_cast<std::int64_t>(cover.size());
  rep.cover_volume = dyadic::cover_volume(cover);
  rep.volume = quadrature::volume_bracket(ball_shape, opts.volume_quad_depth);

  const int n = cover.dim();
  std::size_t tilings = 1;
  for (int i = 0; i < n; ++i) tilings *= 3;
  rep.per_tiling_counts.assign(tilings, 0);

  const double l3c = std::pow(std::ldexp(3.0, -depth), n);
  double theta_lo = 1.0, theta_hi = 1.0;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    const dyadic::DyadicCube c = cover.cube(i);
    rep.per_tiling_counts[dyadic::tiling_index_of(c)]++;
    const Box b3 = dyadic::concentric_3c(c);
    bool full = false;
    for (std::size_t k = 0; k < bu.centers.size(); ++k) {
      if (b3.max_distance_to(bu.centers[k]) <= bu.radii[k]) {
        full = true;
        break;
      }
    }
    if (full) continue;  // density exactly 1, cannot be the minimum below
    const auto num = quadrature::bracket_measure(classify, b3, opts.cell_quad_depth);
    theta_lo = std::min(theta_lo, num.lo / l3c);
    theta_hi = std::min(theta_hi, num.hi / l3c);
  }
  rep.theta_lo = theta_lo;
  rep.theta_hi = theta_hi;

  const double theta_mid = 0.5 * (theta_lo + theta_hi);
  rep.bound = static_cast<double>(tilings) * rep.volume.mid() / (theta_mid * l3c);

  const double per_tiling_cap = rep.volume.lo / (theta_hi * l3c);
  rep.counts_ok = true;
  for (const std::int64_t ni : rep.per_tiling_counts)
    if (static_cast<double>(ni) > per_tiling_cap) rep.counts_ok = false;
  rep.volume_ok = rep.cover_volume <= rep.volume.lo / theta_hi;
  return rep;
}

// Worst-case theta over lattice phases for a single ball: shift the ball
// center across a phase grid inside one cube and take the smallest certified
// cube density that appears. Direct minimization, single-ball only.
inline double single_ball_worst_theta(double radius, int depth, int phase_grid = 5,
                                      const DensityOptions& opts = {}) {
  if (phase_grid < 1) throw std::invalid_argument("single_ball_worst_theta: bad grid");
  double worst = 1.0;
  const double h = std::ldexp(1.0, -depth);
  for (int i = 0; i < phase_grid; ++i) {
    for (int j = 0; j < phase_grid; ++j) {
      const VecN center{h * static_cast<double>(i) / phase_grid,
                        h * static_cast<double>(j) / phase_grid};
      const auto rep = density_theta(shapes::Shape(shapes::Disk{center, radius}), depth, opts);
      worst = std::min(worst, rep.theta_lo);
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Reach estimator on boundary samples with tangents: inf over ordered pairs
// of |y-x|^2 / (2 dist(y-x, T_x)). Exact on circles; an upper bound that
// converges to reach(dE) as the sample spacing shrinks on C^{1,1} boundaries.
// Flat inputs produce no admissible pair and return +infinity.

inline double reach_estimate(const shapes::BoundarySamples& samples) {
  if (samples.size() < 2)
    throw std::invalid_argument("reach_estimate: need at least 2 samples");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Vec2 x = samples[i].pos;
    const Vec2 t{std::cos(samples[i].theta), std::sin(samples[i].theta)};
    for (std::size_t j = 0; j < samples.size(); ++j) {
      if (i == j) continue;
      const Vec2 v = samples[j].pos - x;
      const double off = std::abs(v.cross(t));  // distance from v to the tangent line
      const double v2 = v.norm2();
      if (off <= 1e-12 * std::sqrt(v2)) continue;  // tangentially collinear pair
      best = std::min(best, v2 / (2.0 * off));
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Curvature tube-volume bound: expanding a set with C^{1,1} boundary by
// epsilon multiplies its volume by at most (1 + eps kappa_hat)^n, and the
// cover at depth d(eps) = ceil(log2(sqrt(n)/eps)) sits inside that expansion.

struct TubeBound {
  double upper_ratio = 1.0;
  std::optional<int> d_epsilon;
  // Optional area-formula byproducts when boundary data is supplied.
  std::optional<double> outer_shell_volume_bound;  // L^n(E_eps \ E) upper bound
  std::optional<double> volume_lower_bound;        // L^n(E) lower bound
};

inline TubeBound tube_volume_bound(double kappa_hat, double epsilon, int ambient_dim,
                                   std::optional<double> boundary_measure = std::nullopt,
                                   std::optional<double> volume = std::nullopt) {
  if (kappa_hat < 0.0) throw std::invalid_argument("tube_volume_bound: kappa_hat < 0");
  if (epsilon < 0.0) throw std::invalid_argument("tube_volume_bound: epsilon < 0");
  if (epsilon * kappa_hat >= 1.0)
    throw std::invalid_argument("tube_volume_bound: requires epsilon * kappa_hat < 1");
  if (volume && *volume <= 0.0)
    throw std::invalid_argument("tube_volume_bound: volume must be > 0");
  const int n = ambient_dim;
  TubeBound tb;
  tb.upper_ratio = std::pow(1.0 + epsilon * kappa_hat, n);
  if (epsilon > 0.0)
    tb.d_epsilon = static_cast<int>(std::ceil(std::log2(std::sqrt(static_cast<double>(n)) / epsilon)));
  if (boundary_measure && kappa_hat > 0.0) {
    tb.outer_shell_volume_bound =
        *boundary_measure *
        (std::pow(1.0 + epsilon * kappa_hat, n) - 1.0) / (n * kappa_hat);
    tb.volume_lower_bound = *boundary_measure / (n * kappa_hat);
  }
  return tb;
}

// ---------------------------------------------------------------------------
// Cover volume vs Minkowski content: r_d = sqrt(n) 2^-d bounds how far the
// cover union can sit from the set, so L^n(cover) <= L^n(E) + L^n((dE)_{r_d})
// <= L^n(E) + M 2 r_d + delta. Checked with the certified upper tube volume.

struct MinkBoundReport {
  int depth = 0;
  double r_d = 0.0;
  double delta = 0.0;
  double volume = 0.0;  // L^n(E), analytic when known, else bracket midpoint
  MinkowskiPoint mink;  // estimate at r = r_d
  double delta_hat = 0.0;
  double cover_volume = 0.0;
  double rhs = 0.0;  // (1 + delta_hat) * volume
  bool holds = false;
};

inline MinkBoundReport mink_cover_bound_check(const shapes::Shape& shape, int depth,
                                              double delta,
                                              const MinkowskiOptions& opts = {}) {
  if (delta < 0.0) throw std::invalid_argument("mink_cover_bound_check: delta < 0");
  const auto em = shapes::exact_measures(shape);
  double volume = 0.0;
  if (em.volume.has_value()) {
    volume = *em.volume;
  } else {
    volume = quadrature::volume_bracket(shape, 12).mid();
  }
  if (volume <= 0.0)
    throw std::invalid_argument(
        "mink_cover_bound_check: requires L^n(E) != 0 (zero-volume shape)");

  MinkBoundReport rep;
  rep.depth = depth;
  rep.delta = delta;
  rep.volume = volume;
  const int n = shape.dim();
  rep.r_d = std::sqrt(static_cast<double>(n)) * std::ldexp(1.0, -depth);
  rep.mink = minkowski_content_estimate(shape, {rep.r_d}, opts).front();
  const double m_upper = rep.mink.estimate + rep.mink.half_width;
  rep.delta_hat = (m_upper * 2.0 * rep.r_d + delta) / volume;
  rep.cover_volume = dyadic::cover_stats(shape, depth).volume;
  rep.rhs = (1.0 + rep.delta_hat) * volume;
  rep.holds = rep.cover_volume <= rep.rhs;
  return rep;
}

// ---------------------------------------------------------------------------
// Hausdorff cover-sum estimate with the dyadic cover as the cover family:
// sum alpha(k) (diam C / 2)^k over cover cubes, diam C = sqrt(n) 2^-d. An
// upper-bound-flavored box estimate of H^k at scale d, not the infimum over
// arbitrary covers.

inline double hausdorff_box_estimate(const shapes::Shape& shape, double k, int depth) {
  const int n = shape.dim();
  if (k < 0.0 || k > static_cast<double>(n))
    throw std::invalid_argument("hausdorff_box_estimate: k must lie in [0, n]");
  const auto count = static_cast<double>(dyadic::cover_stats(shape, depth).cube_count);
  const double half_diam = 0.5 * std::sqrt(static_cast<double>(n)) * std::ldexp(1.0, -depth);
  return count * shapes::unit_ball_volume(k) * std::pow(half_diam, k);
}

}  // namespace cubical::measure
