#pragma once

// Discrete multiscale flat norm for boundary curves of binary regions on a
// 2^-g grid: minimize mass(T - dS) + lambda area(S) over grid-cell 2-chains
// S, where T = dE. With the unoriented edge-cancellation model the residual
// T - dS is the boundary of E xor S, so the objective is submodular in the
// indicator of S and a single min cut yields the exact global optimum.
//
// The same window solver handles the beta^F numbers: restrict T to the open
// cube C
// (edges strictly inside), allow S only on the cells of C, and charge dS on
// the cube border.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

#include "cubical/dyadic.hpp"
#include "cubical/geom.hpp"
#include "cubical/shapes.hpp"

namespace cubical::flatnorm {

struct Cell {
  std::int64_t x = 0;
  std::int64_t y = 0;
  auto operator<=>(const Cell&) const = default;
};

// Unoriented lattice edge between grid vertices: from (x, y) to (x+1, y) when
// horizontal, to (x, y+1) otherwise.
struct EdgeKey {
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool horizontal = true;
  auto operator<=>(const EdgeKey&) const = default;
};

class BinaryRegion {
 public:
  BinaryRegion() = default;
  BinaryRegion(int grid_depth, std::vector<Cell> cells) : g_(grid_depth), cells_(std::move(cells)) {
    dyadic::check_depth(grid_depth);
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
  }

  // Cells whose center lies in the closed set.
  static BinaryRegion digitize(const shapes::Shape& s, int grid_depth) {
    const Box bb = bounding_box(s);
    const double h = std::ldexp(1.0, -grid_depth);
    const auto x0 = static_cast<std::int64_t>(std::floor(bb.lo[0] / h)) - 1;
    const auto x1 = static_cast<std::int64_t>(std::floor(bb.hi[0] / h)) + 1;
    const auto y0 = static_cast<std::int64_t>(std::floor(bb.lo[1] / h)) - 1;
    const auto y1 = static_cast<std::int64_t>(std::floor(bb.hi[1] / h)) + 1;
    std::vector<Cell> cells;
    for (std::int64_t y = y0; y <= y1; ++y) {
      for (std::int64_t x = x0; x <= x1; ++x) {
        const VecN center{(static_cast<double>(x) + 0.5) * h,
                          (static_cast<double>(y) + 0.5) * h};
        if (shapes::distance_to(s, center) == 0.0) cells.push_back({x, y});
      }
    }
    return BinaryRegion(grid_depth, std::move(cells));
  }

  int grid_depth() const { return g_; }
  const std::vector<Cell>& cells() const { return cells_; }
  bool empty() const { return cells_.empty(); }

  bool filled(Cell c) const {
    return std::binary_search(cells_.begin(), cells_.end(), c);
  }

  Box cell_bounds() const {  // lattice-unit bounding box [x0,x1) x [y0,y1)
    if (cells_.empty()) return Box::of(0, 0, 0, 0);
    std::int64_t x0 = cells_[0].x, x1 = cells_[0].x, y0 = cells_[0].y, y1 = cells_[0].y;
    for (const Cell& c : cells_) {
      x0 = std::min(x0, c.x);
      x1 = std::max(x1, c.x);
      y0 = std::min(y0, c.y);
      y1 = std::max(y1, c.y);
    }
    return Box::of(static_cast<double>(x0), static_cast<double>(y0),
                   static_cast<double>(x1 + 1), static_cast<double>(y1 + 1));
  }

 private:
  int g_ = 0;
  std::vector<Cell> cells_;
};

// T = dE as unoriented edges: sides of filled cells whose neighbor is not
// filled. Every lattice vertex sees an even number of these (dd = 0).
inline std::vector<EdgeKey> boundary_edges(const BinaryRegion& r) {
  std::vector<EdgeKey> out;
  for (const Cell& c : r.cells()) {
    if (!r.filled({c.x, c.y - 1})) out.push_back({c.x, c.y, true});
    if (!r.filled({c.x, c.y + 1})) out.push_back({c.x, c.y + 1, true});
    if (!r.filled({c.x - 1, c.y})) out.push_back({c.x, c.y, false});
    if (!r.filled({c.x + 1, c.y})) out.push_back({c.x + 1, c.y, false});
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline double chain_mass(std::size_t edge_count, int g) {
  return std::ldexp(static_cast<double>(edge_count), -g);
}

// ---------------------------------------------------------------------------
// Dinic max-flow (doubles; capacities here are dyadic so arithmetic is exact)

namespace detail {

class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : head_(static_cast<std::size_t>(nodes) + 2, -1) {
    src_ = nodes;
    sink_ = nodes + 1;
  }

  int src() const { return src_; }
  int sink() const { return sink_; }

  void add_edge(int a, int b, double cap_ab, double cap_ba) {
    arcs_.push_back({b, head_[static_cast<std::size_t>(a)], cap_ab});
    head_[static_cast<std::size_t>(a)] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({a, head_[static_cast<std::size_t>(b)], cap_ba});
    head_[static_cast<std::size_t>(b)] = static_cast<int>(arcs_.size()) - 1;
  }

  double solve() {
    double flow = 0.0;
    while (bfs()) {
      iter_ = head_;
      while (true) {
        const double f = dfs(src_, std::numeric_limits<double>::infinity());
        if (f <= 0.0) break;
        flow += f;
      }
    }
    return flow;
  }

  // Source side of the canonical minimal cut (residual reachability).
  std::vector<char> source_side() const {
    std::vector<char> seen(head_.size(), 0);
    std::queue<int> q;
    q.push(src_);
    seen[static_cast<std::size_t>(src_)] = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e = head_[static_cast<std::size_t>(u)]; e >= 0; e = arcs_[static_cast<std::size_t>(e)].next) {
        const Arc& a = arcs_[static_cast<std::size_t>(e)];
        if (a.cap > 1e-12 && !seen[static_cast<std::size_t>(a.to)]) {
          seen[static_cast<std::size_t>(a.to)] = 1;
          q.push(a.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to = 0;
    int next = -1;
    double cap = 0.0;
  };

  bool bfs() {
    level_.assign(head_.size(), -1);
    std::queue<int> q;
    q.push(src_);
    level_[static_cast<std::size_t>(src_)] = 0;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e = head_[static_cast<std::size_t>(u)]; e >= 0; e = arcs_[static_cast<std::size_t>(e)].next) {
        const Arc& a = arcs_[static_cast<std::size_t>(e)];
        if (a.cap > 1e-12 && level_[static_cast<std::size_t>(a.to)] < 0) {
          level_[static_cast<std::size_t>(a.to)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(sink_)] >= 0;
  }

  double dfs(int u, double limit) {
    if (u == sink_) return limit;
    for (int& e = iter_[static_cast<std::size_t>(u)]; e >= 0;
         e = arcs_[static_cast<std::size_t>(e)].next) {
      Arc& a = arcs_[static_cast<std::size_t>(e)];
      if (a.cap > 1e-12 &&
          level_[static_cast<std::size_t>(a.to)] == level_[static_cast<std::size_t>(u)] + 1) {
        const double f = dfs(a.to, std::min(limit, a.cap));
        if (f > 0.0) {
          a.cap -= f;
          arcs_[static_cast<std::size_t>(e ^ 1)].cap += f;
          return f;
        }
      }
    }
    return 0.0;
  }

  std::vector<Arc> arcs_;
  std::vector<int> head_;
  std::vector<int> iter_;
  std::vector<int> level_;
  int src_ = 0;
  int sink_ = 0;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Window solver

struct Window {
  std::int64_t x0 = 0, y0 = 0;  // inclusive cell range [x0,x1) x [y0,y1)
  std::int64_t x1 = 0, y1 = 0;
  std::int64_t width() const { return x1 - x0; }
  std::int64_t height() const { return y1 - y0; }
};

struct FlatNormDecomposition {
  double lambda = 0.0;
  int g = 0;
  std::vector<Cell> s_cells;             // minimizing 2-chain S
  std::vector<EdgeKey> residual_edges;   // T - dS (unoriented symmetric difference)
  double residual_mass = 0.0;            // H^1 mass of T - dS
  double area_term = 0.0;                // lambda * L^2(S)
  double value = 0.0;
};

namespace detail {

// Minimize mass(T' - dS) + lambda area(S) over S inside the window, where T'
// is the part of dE strictly inside the window and dS is charged on the
// window border. Substituting X = (E cap window) xor S turns the objective
// into interior disagreement penalties plus unary terms, a min cut.
inline FlatNormDecomposition solve_window(const BinaryRegion& region, double lambda,
                                          const Window& w) {
  const int g = region.grid_depth();
  const std::int64_t W = w.width(), H = w.height();
  if (W <= 0 || H <= 0)
    throw std::invalid_argument("flat_norm: empty window");
  if (W * H > 20'000'000)
    throw std::invalid_argument("flat_norm: window too large");

  const double lam_scaled = lambda * std::ldexp(1.0, -g);  // lambda * area/length unit

  auto id = [&](std::int64_t x, std::int64_t y) {
    return static_cast<int>((y - w.y0) * W + (x - w.x0));
  };
  std::vector<char> R(static_cast<std::size_t>(W * H), 0);
  for (std::int64_t y = w.y0; y < w.y1; ++y)
    for (std::int64_t x = w.x0; x < w.x1; ++x)
      R[static_cast<std::size_t>(id(x, y))] = region.filled({x, y}) ? 1 : 0;

  detail::MaxFlow mf(static_cast<int>(W * H));
  for (std::int64_t y = w.y0; y < w.y1; ++y) {
    for (std::int64_t x = w.x0; x < w.x1; ++x) {
      const int u = id(x, y);
      // interior disagreement arcs (rightward and upward once per pair)
      if (x + 1 < w.x1) mf.add_edge(u, id(x + 1, y), 1.0, 1.0);
      if (y + 1 < w.y1) mf.add_edge(u, id(x, y + 1), 1.0, 1.0);
      // unary: lambda-cost plus border dS charges when X(c) != R(c)
      int border = 0;
      if (x == w.x0) ++border;
      if (x + 1 == w.x1) ++border;
      if (y == w.y0) ++border;
      if (y + 1 == w.y1) ++border;
      const double unary = lam_scaled + static_cast<double>(border);
      if (R[static_cast<std::size_t>(u)])
        mf.add_edge(mf.src(), u, unary, 0.0);
      else
        mf.add_edge(u, mf.sink(), unary, 0.0);
    }
  }
  mf.solve();
  const std::vector<char> xside = mf.source_side();

  FlatNormDecomposition out;
  out.lambda = lambda;
  out.g = g;
  auto in_x = [&](std::int64_t x, std::int64_t y) -> bool {
    if (x < w.x0 || x >= w.x1 || y < w.y0 || y >= w.y1) return false;
    return xside[static_cast<std::size_t>(id(x, y))] != 0;
  };
  for (std::int64_t y = w.y0; y < w.y1; ++y) {
    for (std::int64_t x = w.x0; x < w.x1; ++x) {
      const bool xc = in_x(x, y);
      const bool rc = R[static_cast<std::size_t>(id(x, y))] != 0;
      if (xc != rc) out.s_cells.push_back({x, y});  // S = R xor X
    }
  }

  // Residual chain T' - dS = d(X) on interior edges plus X-cells on the
  // border (mod 2), assembled edge by edge.
  for (std::int64_t y = w.y0; y < w.y1; ++y) {
    for (std::int64_t x = w.x0; x < w.x1; ++x) {
      const bool xc = in_x(x, y);
      if (xc != in_x(x - 1, y) && x > w.x0) out.residual_edges.push_back({x, y, false});
      if (xc != in_x(x, y - 1) && y > w.y0) out.residual_edges.push_back({x, y, true});
      if (xc) {
        if (x == w.x0) out.residual_edges.push_back({x, y, false});
        if (x + 1 == w.x1) out.residual_edges.push_back({x + 1, y, false});
        if (y == w.y0) out.residual_edges.push_back({x, y, true});
        if (y + 1 == w.y1) out.residual_edges.push_back({x, y + 1, true});
      }
    }
  }
  std::sort(out.residual_edges.begin(), out.residual_edges.end());

  out.residual_mass = chain_mass(out.residual_edges.size(), g);
  out.area_term = lambda * std::ldexp(static_cast<double>(out.s_cells.size()), -2 * g);
  out.value = out.residual_mass + out.area_term;
  return out;
}

}  // namespace detail

struct FlatNormOptions {
  std::int64_t window_margin = 1;
  std::optional<Window> window;  // override the bbox-derived window
};

inline FlatNormDecomposition flat_norm_decompose(const BinaryRegion& region, double lambda,
                                                 const FlatNormOptions& opts = {}) {
  if (lambda <= 0.0) throw std::invalid_argument("flat_norm: lambda must be > 0");
  if (region.empty()) {
    FlatNormDecomposition out;
    out.lambda = lambda;
    out.g = region.grid_depth();
    return out;
  }
  Window w;
  if (opts.window) {
    w = *opts.window;
  } else {
    const Box cb = region.cell_bounds();
    w.x0 = static_cast<std::int64_t>(cb.lo[0]) - opts.window_margin;
    w.y0 = static_cast<std::int64_t>(cb.lo[1]) - opts.window_margin;
    w.x1 = static_cast<std::int64_t>(cb.hi[0]) + opts.window_margin;
    w.y1 = static_cast<std::int64_t>(cb.hi[1]) + opts.window_margin;
  }
  return detail::solve_window(region, lambda, w);
}

// ---------------------------------------------------------------------------
// beta^F numbers: decomposition of T restricted to the open cube, with
// lambda = 2^{d+k}; beta^F = 2^{2d+k} L^2(S_d).

struct BetaFlatResult {
  dyadic::DyadicCube cube;
  double s_area = 0.0;
  double beta_flat = 0.0;
  double value = 0.0;
};

namespace detail {

inline Window cube_window(const dyadic::DyadicCube& cube, int g, int scale_factor) {
  const int s = g - cube.depth();
  const std::int64_t span = std::int64_t{1} << s;
  Window w;
  w.x0 = cube.index(0) * span - (scale_factor - 1) / 2 * span;
  w.y0 = cube.index(1) * span - (scale_factor - 1) / 2 * span;
  w.x1 = w.x0 + scale_factor * span;
  w.y1 = w.y0 + scale_factor * span;
  return w;
}

}  // namespace detail

inline BetaFlatResult beta_flat_in_window(const BinaryRegion& region,
                                          const dyadic::DyadicCube& cube, int k,
                                          const Window& w) {
  if (k < 1 || k > 3) throw std::invalid_argument("beta_flat: k must be in {1,2,3}");
  const int g = region.grid_depth();
  const int d = cube.depth();
  if (d + 3 > g)
    throw std::invalid_argument(
        "beta_flat: cube depth must be coarser than the grid by at least 3");
  const double lambda = std::ldexp(1.0, d + k);
  BetaFlatResult res;
  res.cube = cube;
  const auto dec = detail::solve_window(region, lambda, w);
  res.s_area = std::ldexp(static_cast<double>(dec.s_cells.size()), -2 * g);
  res.beta_flat = std::ldexp(res.s_area, 2 * d + k);
  res.value = dec.value;
  return res;
}

inline BetaFlatResult beta_flat(const BinaryRegion& region, const dyadic::DyadicCube& cube,
                                int k) {
  return beta_flat_in_window(region, cube, k,
                             detail::cube_window(cube, region.grid_depth(), 1));
}

struct BetaFlatReport {
  int k = 1;
  int d_min = 0;
  int d_max = 0;
  std::vector<BetaFlatResult> per_cube;
  std::vector<double> per_depth_subtotal;
  double total = 0.0;
};

// Depth-d cubes whose closed box meets the boundary chain (an edge lying on
// a coarse lattice hyperplane counts for both abutting cubes).
inline std::vector<Cell> boundary_cover_cubes(const BinaryRegion& region, int d) {
  const int s = region.grid_depth() - d;
  if (s < 0) throw std::invalid_argument("boundary_cover_cubes: d exceeds grid depth");
  const std::int64_t span = std::int64_t{1} << s;
  auto fdiv = [](std::int64_t a, std::int64_t b) {
    return a >= 0 ? a / b : -((-a + b - 1) / b);
  };
  // cube index range whose closed span [c*span, (c+1)*span] meets [lo, hi]
  auto cube_range = [&](std::int64_t lo, std::int64_t hi) {
    const std::int64_t c_lo = fdiv(lo, span) - (lo % span == 0 ? 1 : 0);
    const std::int64_t c_hi = fdiv(hi, span);
    return std::pair{c_lo, c_hi};
  };
  std::set<Cell> cubes;
  for (const EdgeKey& e : boundary_edges(region)) {
    const auto [cx0, cx1] = cube_range(e.x, e.horizontal ? e.x + 1 : e.x);
    const auto [cy0, cy1] = cube_range(e.y, e.horizontal ? e.y : e.y + 1);
    for (std::int64_t cx = cx0; cx <= cx1; ++cx)
      for (std::int64_t cy = cy0; cy <= cy1; ++cy) cubes.insert({cx, cy});
  }
  return {cubes.begin(), cubes.end()};
}

inline BetaFlatReport beta_flat_sum(const BinaryRegion& region, int k, int d_min, int d_max) {
  if (d_min > d_max) throw std::invalid_argument("beta_flat_sum: d_min > d_max");
  BetaFlatReport rep;
  rep.k = k;
  rep.d_min = d_min;
  rep.d_max = d_max;
  rep.per_depth_subtotal.assign(static_cast<std::size_t>(d_max - d_min + 1), 0.0);
  for (int d = d_min; d <= d_max; ++d) {
    const double side = std::ldexp(1.0, -d);
    double subtotal = 0.0;
    for (const Cell& c : boundary_cover_cubes(region, d)) {
      const dyadic::DyadicCube cube(d, c.x, c.y);
      const auto res = beta_flat_in_window(
          region, cube, k, detail::cube_window(cube, region.grid_depth(), 3));
      subtotal += res.beta_flat * res.beta_flat * side;
      rep.per_cube.push_back(res);
    }
    rep.per_depth_subtotal[static_cast<std::size_t>(d - d_min)] = subtotal;
    rep.total += subtotal;
  }
  return rep;
}

}  // namespace cubical::flatnorm
