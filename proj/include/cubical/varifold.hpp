#pragma once

// Grassmann-bundle lifts of planar curves: sample a curve together with its
// tangent direction theta in [0, pi), quantize the lifted points with dyadic
// cubes in the product space R^2 x [0, pi), and compare quantized lifts.
//
// By default the theta axis is rescaled affinely onto [0, 1) so the upstairs
// cells are genuine cubes and "known to within sqrt(3)/2^{d+1}" is literally
// the half-diagonal of a cell; the raw-angle alternative is a flag.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubical/dyadic.hpp"
#include "cubical/geom.hpp"
#include "cubical/shapes.hpp"

namespace cubical::vfold {

struct GrassmannPoint {
  Vec2 x;
  double theta = 0.0;  // line direction in [0, pi)
};

struct LiftedCurve {
  std::vector<GrassmannPoint> points;  // ordered along the curve
  std::string source;
  double spacing = 0.0;
};

// Distance on the direction circle [0, pi) with theta ~ theta + pi.
inline double theta_distance(double a, double b) {
  double d = std::abs(a - b);
  d = std::fmod(d, kPi);
  return std::min(d, kPi - d);
}

inline LiftedCurve lift_curve(const shapes::Shape& s, double spacing,
                              const std::string& source_id = "") {
  using shapes::Kind;
  if (s.kind() != Kind::Disk && s.kind() != Kind::Polygon && s.kind() != Kind::Polyline)
    throw std::invalid_argument(std::string("lift_curve: unsupported kind ") +
                                shapes::kind_name(s.kind()));
  const shapes::BoundarySamples samples = shapes::sample_boundary(s, spacing);
  LiftedCurve lift;
  lift.source = source_id.empty() ? shapes::kind_name(s.kind()) : source_id;
  lift.spacing = spacing;
  lift.points.reserve(samples.size());
  for (const auto& b : samples) lift.points.push_back({b.pos, b.theta});
  return lift;
}

struct QuantizeOptions {
  bool scale_theta = true;     // map [0, pi) onto [0, 1)
  bool periodic_theta = false; // identify the first and last theta cells
};

struct QuantizedVarifold {
  int depth = 0;
  QuantizeOptions options;
  // cell -> weight, keyed (ix, iy, itheta); deterministic (sorted) iteration
  std::map<std::array<std::int64_t, 3>, double> weights;
  double total_weight = 0.0;
};

inline QuantizedVarifold quantize_lift(const LiftedCurve& lift, int depth,
                                       const QuantizeOptions& opts = {}) {
  dyadic::check_depth(depth);
  if (lift.points.empty()) throw std::invalid_argument("quantize_lift: empty lift");
  if (lift.spacing <= 0.0 || lift.spacing > std::ldexp(1.0, -(depth + 1)))
    throw std::invalid_argument(
        "quantize_lift: sample spacing must be <= 2^-(depth+1); the accuracy claim "
        "fails otherwise");
  QuantizedVarifold qv;
  qv.depth = depth;
  qv.options = opts;
  const std::int64_t cells = std::int64_t{1} << depth;
  for (const auto& p : lift.points) {
    const double u = opts.scale_theta ? p.theta / kPi : p.theta;
    std::array<std::int64_t, 3> cell{
        static_cast<std::int64_t>(std::floor(std::ldexp(p.x.x, depth))),
        static_cast<std::int64_t>(std::floor(std::ldexp(p.x.y, depth))),
        static_cast<std::int64_t>(std::floor(std::ldexp(u, depth)))};
    if (opts.scale_theta && cell[2] >= cells) cell[2] = cells - 1;  // u == 1 - ulp guard
    if (opts.periodic_theta && opts.scale_theta && cell[2] == cells - 1) cell[2] = 0;
    qv.weights[cell] += lift.spacing;
  }
  for (const auto& [cell, w] : qv.weights) qv.total_weight += w;
  return qv;
}

// Largest distance from a lifted sample to the center of its cell, measured
// in the scaled product space; bounded by sqrt(3) 2^-(depth+1) by design.
inline double max_center_deviation(const LiftedCurve& lift, const QuantizedVarifold& qv) {
  const int d = qv.depth;
  double worst = 0.0;
  const std::int64_t cells = std::int64_t{1} << d;
  for (const auto& p : lift.points) {
    const double u = qv.options.scale_theta ? p.theta / kPi : p.theta;
    std::array<double, 3> coords{p.x.x, p.x.y, u};
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      std::int64_t k = static_cast<std::int64_t>(std::floor(std::ldexp(coords[static_cast<std::size_t>(i)], d)));
      if (i == 2 && qv.options.scale_theta && k >= cells) k = cells - 1;
      const double center = std::ldexp(static_cast<double>(k) + 0.5, -d);
      const double diff = coords[static_cast<std::size_t>(i)] - center;
      s += diff * diff;
    }
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

// Total-variation distance between the normalized cell-weight distributions;
// 0 iff the quantizations agree cell for cell, 1 for disjoint supports.
inline double varifold_cell_distance(const QuantizedVarifold& a, const QuantizedVarifold& b) {
  if (a.depth != b.depth)
    throw std::invalid_argument("varifold_cell_distance: depth mismatch");
  if (a.total_weight <= 0.0 || b.total_weight <= 0.0)
    throw std::invalid_argument("varifold_cell_distance: empty varifold");
  double tv = 0.0;
  auto ia = a.weights.begin();
  auto ib = b.weights.begin();
  while (ia != a.weights.end() || ib != b.weights.end()) {
    if (ib == b.weights.end() || (ia != a.weights.end() && ia->first < ib->first)) {
      tv += ia->second / a.total_weight;
      ++ia;
    } else if (ia == a.weights.end() || ib->first < ia->first) {
      tv += ib->second / b.total_weight;
      ++ib;
    } else {
      tv += std::abs(ia->second / a.total_weight - ib->second / b.total_weight);
      ++ia;
      ++ib;
    }
  }
  return 0.5 * tv;
}

// Count how many times theta sweeps through [0, pi): wrap events are steps
// where theta drops by more than pi/2. Returns {wraps, monotone}, where
// monotone means every non-wrap step moves in the same direction.
struct ThetaSweep {
  int wraps = 0;
  bool monotone_between_wraps = true;
};

inline ThetaSweep theta_sweep_profile(const LiftedCurve& lift) {
  ThetaSweep sw;
  int dir = 0;
  for (std::size_t i = 1; i < lift.points.size(); ++i) {
    const double step = lift.points[i].theta - lift.points[i - 1].theta;
    if (std::abs(step) > kPi / 2.0) {
      sw.wraps++;
      continue;
    }
    if (step != 0.0) {
      const int s = step > 0.0 ? 1 : -1;
      if (dir == 0)
        dir = s;
      else if (s != dir)
        sw.monotone_between_wraps = false;
    }
  }
  return sw;
}

}  // namespace cubical::vfold
