#pragma once

// Dyadic lattice arithmetic: closed cubes prod_j [m_j 2^-d, (m_j+1) 2^-d],
// covers of bounded shapes at a fixed depth, cover volume, and the cubical
// boundary of the cover union.
//
// Corner coordinates stay exact in double up to depth 52 because they are
// integers scaled by a power of two (ldexp).

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubical/geom.hpp"

namespace cubical::dyadic {

inline constexpr int kMaxDepth = 52;

using Index = std::array<std::int64_t, kMaxDim>;

inline void check_depth(int depth) {
  if (depth < 0) throw std::invalid_argument("dyadic: depth must be >= 0");
  if (depth > kMaxDepth)
    throw std::invalid_argument("dyadic: depth " + std::to_string(depth) +
                                " exceeds exact-representation limit " +
                                std::to_string(kMaxDepth));
}

class DyadicCube {
 public:
  DyadicCube() = default;
  DyadicCube(int depth, int dim, const Index& idx) : depth_(depth), dim_(dim), idx_(idx) {
    check_depth(depth);
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("DyadicCube: bad dimension");
  }
  DyadicCube(int depth, std::int64_t ix, std::int64_t iy)
      : DyadicCube(depth, 2, Index{ix, iy, 0, 0}) {}

  int depth() const { return depth_; }
  int dim() const { return dim_; }
  const Index& index() const { return idx_; }
  std::int64_t index(int axis) const { return idx_[static_cast<std::size_t>(axis)]; }

  double side() const { return std::ldexp(1.0, -depth_); }
  double lo(int axis) const { return std::ldexp(static_cast<double>(index(axis)), -depth_); }
  double hi(int axis) const { return std::ldexp(static_cast<double>(index(axis) + 1), -depth_); }

  Box box() const {
    Box b{VecN(dim_), VecN(dim_)};
    for (int i = 0; i < dim_; ++i) {
      b.lo[i] = lo(i);
      b.hi[i] = hi(i);
    }
    return b;
  }

  VecN center() const {
    VecN c(dim_);
    for (int i = 0; i < dim_; ++i) c[i] = 0.5 * (lo(i) + hi(i));
    return c;
  }

  bool contains(const VecN& p) const {
    for (int i = 0; i < dim_; ++i)
      if (p[i] < lo(i) || p[i] > hi(i)) return false;
    return true;
  }

  DyadicCube neighbor(int axis, int step) const {
    Index idx = idx_;
    idx[static_cast<std::size_t>(axis)] += step;
    return DyadicCube(depth_, dim_, idx);
  }

  DyadicCube parent() const {
    if (depth_ == 0) throw std::logic_error("DyadicCube: depth-0 cube has no parent");
    Index idx = idx_;
    for (int i = 0; i < dim_; ++i) idx[static_cast<std::size_t>(i)] >>= 1;  // floor division
    return DyadicCube(depth_ - 1, dim_, idx);
  }

  bool operator==(const DyadicCube& o) const {
    if (depth_ != o.depth_ || dim_ != o.dim_) return false;
    for (int i = 0; i < dim_; ++i)
      if (index(i) != o.index(i)) return false;
    return true;
  }

 private:
  int depth_ = 0;
  int dim_ = 2;
  Index idx_{};
};

// Representative lattice lookup using the floor convention. A point on a
// lattice hyperplane is a member of every abutting closed cube; this returns
// the one with m_j = floor(p_j * 2^depth).
inline DyadicCube cube_containing(const VecN& p, int depth) {
  check_depth(depth);
  Index idx{};
  for (int i = 0; i < p.dim; ++i) {
    const double s = std::ldexp(p[i], depth);
    if (!std::isfinite(s) || std::abs(s) >= 4.5e15)
      throw std::invalid_argument("cube_containing: coordinate out of exact range");
    idx[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::floor(s));
  }
  return DyadicCube(depth, p.dim, idx);
}

// Concentric cube with tripled side (not itself dyadic).
inline Box concentric_3c(const DyadicCube& c) {
  Box b{VecN(c.dim()), VecN(c.dim())};
  for (int i = 0; i < c.dim(); ++i) {
    b.lo[i] = std::ldexp(static_cast<double>(c.index(i) - 1), -c.depth());
    b.hi[i] = std::ldexp(static_cast<double>(c.index(i) + 2), -c.depth());
  }
  return b;
}

// ---------------------------------------------------------------------------
// CubicalCover: sorted flat index array, one row of `dim` integers per cube.

class CubicalCover {
 public:
  CubicalCover() = default;
  CubicalCover(int depth, int dim) : depth_(depth), dim_(dim) { check_depth(depth); }

  int depth() const { return depth_; }
  int dim() const { return dim_; }
  std::size_t size() const { return flat_.size() / static_cast<std::size_t>(dim_); }
  bool empty() const { return flat_.empty(); }

  void append(const Index& idx) {
    for (int i = 0; i < dim_; ++i) flat_.push_back(idx[static_cast<std::size_t>(i)]);
    sorted_ = false;
  }

  // Sort rows lexicographically and drop duplicates; iteration order (and
  // hence every serialized artifact) is then deterministic.
  void finalize() {
    const std::size_t n = size();
    const int d = dim_;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    auto row_less = [&](std::size_t a, std::size_t b) {
      const std::int64_t* ra = flat_.data() + a * static_cast<std::size_t>(d);
      const std::int64_t* rb = flat_.data() + b * static_cast<std::size_t>(d);
      return std::lexicographical_compare(ra, ra + d, rb, rb + d);
    };
    std::sort(order.begin(), order.end(), row_less);
    std::vector<std::int64_t> out;
    out.reserve(flat_.size());
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t* r = flat_.data() + order[k] * static_cast<std::size_t>(d);
      if (!out.empty() &&
          std::equal(r, r + d, out.data() + out.size() - static_cast<std::size_t>(d)))
        continue;
      out.insert(out.end(), r, r + d);
    }
    flat_ = std::move(out);
    sorted_ = true;
  }

  DyadicCube cube(std::size_t i) const {
    Index idx{};
    const std::int64_t* r = flat_.data() + i * static_cast<std::size_t>(dim_);
    std::copy(r, r + dim_, idx.begin());
    return DyadicCube(depth_, dim_, idx);
  }

  bool contains(const Index& idx) const {
    if (!sorted_) throw std::logic_error("CubicalCover: contains() requires finalize()");
    const int d = dim_;
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      const std::int64_t* r = flat_.data() + mid * static_cast<std::size_t>(d);
      if (std::lexicographical_compare(r, r + d, idx.begin(), idx.begin() + d))
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo == size()) return false;
    const std::int64_t* r = flat_.data() + lo * static_cast<std::size_t>(d);
    return std::equal(r, r + d, idx.begin());
  }

  bool contains(const DyadicCube& c) const { return contains(c.index()); }

 private:
  int depth_ = 0;
  int dim_ = 2;
  std::vector<std::int64_t> flat_;
  bool sorted_ = true;
};

// |cubes| * 2^{-n d}; exact while the count fits in the significand.
inline double cover_volume(const CubicalCover& cover) {
  return std::ldexp(static_cast<double>(cover.size()), -cover.dim() * cover.depth());
}

// ---------------------------------------------------------------------------
// Cubical boundary: the (n-1)-faces of cover cubes whose opposite neighbor is
// missing from the cover. Faces are keyed by the lattice index of their min
// corner plus the normal axis; `side` is the outward normal direction of the
// owning cube (-1 low face, +1 high face).

struct Face {
  Index base{};
  std::int8_t axis = 0;
  std::int8_t side = 1;

  bool operator==(const Face&) const = default;
};

struct CubicalBoundary {
  int depth = 0;
  int dim = 2;
  std::vector<Face> faces;
};

inline double boundary_area(const CubicalBoundary& b) {
  return std::ldexp(static_cast<double>(b.faces.size()), -(b.dim - 1) * b.depth);
}

inline CubicalBoundary cover_boundary(const CubicalCover& cover) {
  CubicalBoundary out;
  out.depth = cover.depth();
  out.dim = cover.dim();
  const std::size_t n = cover.size();
  for (std::size_t i = 0; i < n; ++i) {
    const DyadicCube c = cover.cube(i);
    for (int axis = 0; axis < cover.dim(); ++axis) {
      for (int step : {-1, +1}) {
        Index nb = c.index();
        nb[static_cast<std::size_t>(axis)] += step;
        if (cover.contains(nb)) continue;
        Face f;
        f.base = c.index();
        if (step > 0) f.base[static_cast<std::size_t>(axis)] += 1;
        f.axis = static_cast<std::int8_t>(axis);
        f.side = static_cast<std::int8_t>(step);
        out.faces.push_back(f);
      }
    }
  }
  auto face_less = [dimn = cover.dim()](const Face& a, const Face& b) {
    for (int i = 0; i < dimn; ++i) {
      if (a.base[static_cast<std::size_t>(i)] != b.base[static_cast<std::size_t>(i)])
        return a.base[static_cast<std::size_t>(i)] < b.base[static_cast<std::size_t>(i)];
    }
    if (a.axis != b.axis) return a.axis < b.axis;
    return a.side < b.side;
  };
  std::sort(out.faces.begin(), out.faces.end(), face_less);
  return out;
}

// ---------------------------------------------------------------------------
// 3^n tilings of R^n by 3C cubes on the depth-d lattice. Each descriptor is a
// shift in {0,1,2}^n; the tiles of tiling s are the 3C cubes of the depth-d
// cubes whose indices are congruent to s mod 3. Every depth-d cube is the
// central cube of exactly one tile in exactly one tiling.

struct TilingShift {
  std::array<int, kMaxDim> shift{};
  int dim = 2;
};

inline std::vector<TilingShift> tilings_3n(int depth, int dim) {
  check_depth(depth);
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("tilings_3n: bad dimension");
  std::size_t count = 1;
  for (int i = 0; i < dim; ++i) count *= 3;
  std::vector<TilingShift> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    TilingShift t;
    t.dim = dim;
    std::size_t v = k;
    for (int i = 0; i < dim; ++i) {
      t.shift[static_cast<std::size_t>(i)] = static_cast<int>(v % 3);
      v /= 3;
    }
    out[k] = t;
  }
  return out;
}

inline int positive_mod3(std::int64_t m) {
  const int r = static_cast<int>(m % 3);
  return r < 0 ? r + 3 : r;
}

// Index (in tilings_3n order) of the tiling in which this cube is central.
inline std::size_t tiling_index_of(const DyadicCube& c) {
  std::size_t k = 0;
  std::size_t mul = 1;
  for (int i = 0; i < c.dim(); ++i) {
    k += mul * static_cast<std::size_t>(positive_mod3(c.index(i)));
    mul *= 3;
  }
  return k;
}

}  // namespace cubical::dyadic
