#pragma once

// Certified cell quadrature: bracket the Lebesgue measure of a region by
// classifying recursively halved cells as inside, outside, or straddling.
// Cells still unresolved at the depth cap contribute only to the upper bound,
// so [lo, hi] always encloses the true measure. Per-level integer cell counts
// make the sums independent of traversal order.

#include <cstdint>
#include <functional>
#include <vector>

#include "cubical/geom.hpp"
#include "cubical/shapes.hpp"

namespace cubical::quadrature {

enum class CellClass { Inside, Outside, Straddle };

using Classifier = std::function<CellClass(const Box&)>;

struct AreaBracket {
  double lo = 0.0;
  double hi = 0.0;

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

inline AreaBracket bracket_measure(const Classifier& classify, const Box& root, int max_depth) {
  const int n = root.dim();
  std::vector<std::int64_t> inside(static_cast<std::size_t>(max_depth) + 1, 0);
  std::vector<std::int64_t> unresolved(static_cast<std::size_t>(max_depth) + 1, 0);

  const std::function<void(const Box&, int)> visit = [&](const Box& cell, int level) {
    switch (classify(cell)) {
      case CellClass::Inside: inside[static_cast<std::size_t>(level)]++; return;
      case CellClass::Outside: return;
      case CellClass::Straddle: break;
    }
    if (level == max_depth) {
      unresolved[static_cast<std::size_t>(level)]++;
      return;
    }
    // split every axis (2^n children)
    const int children = 1 << n;
    for (int mask = 0; mask < children; ++mask) {
      Box child = cell;
      for (int i = 0; i < n; ++i) {
        const double m = 0.5 * (cell.lo[i] + cell.hi[i]);
        if (mask & (1 << i))
          child.lo[i] = m;
        else
          child.hi[i] = m;
      }
      visit(child, level + 1);
    }
  };
  visit(root, 0);

  const double root_vol = root.volume();
  AreaBracket b;
  for (int l = 0; l <= max_depth; ++l) {
    const double cell_vol = std::ldexp(root_vol, -n * l);
    b.lo += static_cast<double>(inside[static_cast<std::size_t>(l)]) * cell_vol;
    b.hi += static_cast<double>(unresolved[static_cast<std::size_t>(l)]) * cell_vol;
  }
  b.hi += b.lo;
  return b;
}

// Classifier for the solid occupied by a shape (exact two-sided tests).
inline Classifier solid_classifier(const shapes::Shape& s) {
  using shapes::Kind;
  switch (s.kind()) {
    case Kind::Disk:
    case Kind::BallUnion: {
      // local copies keep the classifier self-contained
      std::vector<VecN> centers;
      std::vector<double> radii;
      if (s.kind() == Kind::Disk) {
        centers.push_back(s.as<shapes::Disk>().center);
        radii.push_back(s.as<shapes::Disk>().radius);
      } else {
        centers = s.as<shapes::BallUnion>().centers;
        radii = s.as<shapes::BallUnion>().radii;
      }
      return [centers, radii](const Box& cell) {
        bool hit = false;
        for (std::size_t i = 0; i < centers.size(); ++i) {
          if (cell.max_distance_to(centers[i]) <= radii[i]) return CellClass::Inside;
          if (!hit && cell.distance_to(centers[i]) <= radii[i]) hit = true;
        }
        return hit ? CellClass::Straddle : CellClass::Outside;
      };
    }
    case Kind::Polygon: {
      const auto verts = s.as<shapes::Polygon>().verts;
      return [verts](const Box& cell) {
        for (std::size_t i = 0; i < verts.size(); ++i)
          if (segment_intersects_box(verts[i], verts[(i + 1) % verts.size()], cell))
            return CellClass::Straddle;
        return point_in_polygon(verts, cell.center().xy()) ? CellClass::Inside
                                                           : CellClass::Outside;
      };
    }
    case Kind::DenseUnitCube: {
      const int n = s.as<shapes::DenseUnitCube>().dim;
      return [n](const Box& cell) {
        Box unit{VecN(n), VecN(n)};
        for (int i = 0; i < n; ++i) unit.hi[i] = 1.0;
        bool inside = true;
        for (int i = 0; i < n; ++i)
          inside = inside && cell.lo[i] >= 0.0 && cell.hi[i] <= 1.0;
        if (inside) return CellClass::Inside;
        return cell.overlaps_interior(unit) ? CellClass::Straddle : CellClass::Outside;
      };
    }
    default:
      throw std::invalid_argument(std::string("solid_classifier: unsupported kind ") +
                                  shapes::kind_name(s.kind()));
  }
}

// Classifier for the open tube {x : dist(x) < r} around a set given by its
// distance function; certification uses the 1-Lipschitz bound through the
// cell center, so open-vs-closed is measure-irrelevant here.
inline Classifier tube_classifier(std::function<double(const VecN&)> dist, double r) {
  return [dist = std::move(dist), r](const Box& cell) {
    const double dc = dist(cell.center());
    const double h = cell.half_diagonal();
    if (dc + h < r) return CellClass::Inside;
    if (dc - h > r) return CellClass::Outside;
    return CellClass::Straddle;
  };
}

// Certified bracket of L^n(E) for solid shapes.
inline AreaBracket volume_bracket(const shapes::Shape& s, int max_depth) {
  return bracket_measure(solid_classifier(s), bounding_box(s), max_depth);
}

}  // namespace cubical::quadrature
