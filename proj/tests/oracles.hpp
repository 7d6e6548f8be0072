#pragma once

// Independent test oracles: brute-force machinery that deliberately avoids
// the implementation paths it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "cubical/flatnorm.hpp"
#include "cubical/geom.hpp"

namespace oracles {

// Minimum slab width by sweeping directions: width(u) = max p.u - min p.u
// over u = (cos a, sin a), a in [0, pi).
inline double sweep_width(std::span<const cubical::Vec2> pts, int angles = 100000) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < angles; ++k) {
    const double a = cubical::kPi * static_cast<double>(k) / angles;
    const double ux = std::cos(a), uy = std::sin(a);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& p : pts) {
      const double s = p.x * ux + p.y * uy;
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    best = std::min(best, hi - lo);
  }
  return best;
}

namespace detail {

inline void toggle_cell_edges(std::map<cubical::flatnorm::EdgeKey, int>& parity,
                              cubical::flatnorm::Cell c) {
  using cubical::flatnorm::EdgeKey;
  for (const EdgeKey& e : {EdgeKey{c.x, c.y, true}, EdgeKey{c.x, c.y + 1, true},
                           EdgeKey{c.x, c.y, false}, EdgeKey{c.x + 1, c.y, false}})
    parity[e] ^= 1;
}

}  // namespace detail

// Exhaustive minimization of mass(T - dS) + lambda area(S) with T the full
// boundary chain of the region and S ranging over all subsets of the given
// candidate cells (at most 20).
inline double exhaustive_flat_norm(const cubical::flatnorm::BinaryRegion& region,
                                   double lambda,
                                   std::span<const cubical::flatnorm::Cell> candidates) {
  using cubical::flatnorm::EdgeKey;
  if (candidates.size() > 20) throw std::invalid_argument("oracle: too many candidates");
  const int g = region.grid_depth();
  std::vector<EdgeKey> t_edges = cubical::flatnorm::boundary_edges(region);
  const double len = std::ldexp(1.0, -g);
  const double area = std::ldexp(1.0, -2 * g);

  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << candidates.size()); ++mask) {
    std::map<EdgeKey, int> ds;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (mask & (1u << i)) detail::toggle_cell_edges(ds, candidates[i]);
    std::size_t residual = t_edges.size();
    for (const auto& [e, p] : ds) {
      if (!p) continue;
      if (std::binary_search(t_edges.begin(), t_edges.end(), e))
        --residual;  // cancelled
      else
        ++residual;  // created
    }
    const double value = static_cast<double>(residual) * len +
                         lambda * static_cast<double>(__builtin_popcount(mask)) * area;
    best = std::min(best, value);
  }
  return best;
}

// Same exhaustive search with the open-window semantics of the per-cube
// beta^F problem: T is restricted to edges strictly inside the window and dS
// is charged on the window border too.
inline double exhaustive_flat_norm_open_window(
    const cubical::flatnorm::BinaryRegion& region, double lambda,
    const cubical::flatnorm::Window& w,
    std::span<const cubical::flatnorm::Cell> candidates) {
  using cubical::flatnorm::EdgeKey;
  if (candidates.size() > 20) throw std::invalid_argument("oracle: too many candidates");
  const int g = region.grid_depth();
  std::vector<EdgeKey> t_edges;
  for (const auto& e : cubical::flatnorm::boundary_edges(region)) {
    const bool interior = e.horizontal
                              ? (e.y > w.y0 && e.y < w.y1 && e.x >= w.x0 && e.x < w.x1)
                              : (e.x > w.x0 && e.x < w.x1 && e.y >= w.y0 && e.y < w.y1);
    if (interior) t_edges.push_back(e);
  }
  const double len = std::ldexp(1.0, -g);
  const double area = std::ldexp(1.0, -2 * g);

  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << candidates.size()); ++mask) {
    std::map<EdgeKey, int> ds;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (mask & (1u << i)) detail::toggle_cell_edges(ds, candidates[i]);
    std::size_t residual = t_edges.size();
    for (const auto& [e, p] : ds) {
      if (!p) continue;
      if (std::binary_search(t_edges.begin(), t_edges.end(), e))
        --residual;
      else
        ++residual;
    }
    const double value = static_cast<double>(residual) * len +
                         lambda * static_cast<double>(__builtin_popcount(mask)) * area;
    best = std::min(best, value);
  }
  return best;
}

}  // namespace oracles
