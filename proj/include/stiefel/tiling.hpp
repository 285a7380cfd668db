#pragma once

#include <array>
#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

#include "stiefel/planar.hpp"

namespace stiefel {

inline constexpr std::size_t kMaxTiles = 1'000'000;

struct TilingSpec {
  std::size_t rows = 1;
  std::size_t cols = 1;
  PlanarPolygon quad;
};

using Quad = std::array<Point2, 4>;

/// Copies of a quadrilateral ABCD arranged by half-turns about edge
/// midpoints. Two half-turns compose to a translation, so the copies are
/// Q + L and R(Q) + L, where R is the half-turn about the midpoint of AB and
/// L is the lattice spanned by C - A and D - B. Cell (i, j) holds both copies
/// shifted by j a + i b, for i < rows and j < cols, where (a, b) is the
/// reduced basis of L with cross(a, b) > 0.
///
/// The quadrilateral is traversed so that cross(C - A, D - B) > 0; `reversed`
/// records whether that required reversing the input orientation.
struct TilingPatch {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Quad base{};
  Point2 lattice_a{};
  Point2 lattice_b{};
  bool reversed = false;
  std::vector<Quad> tiles;  // cell-major: original copy, then rotated copy

  /// Coordinates (s, t) with query = s a + t b.
  std::pair<double, double> lattice_coords(Point2 query) const;

  /// True when every copy of the infinite tiling that is missing from this
  /// patch has winding number zero about the query, so the patch sum equals
  /// the full sum. False if the query lies on a missing copy's edge.
  bool covers(Point2 query) const;
};

/// Throws InvalidArgument for an empty or oversized grid or a polygon that is
/// not a quadrilateral, Degenerate for a degenerate quadrilateral.
TilingPatch build_tiling(const TilingSpec& spec);

/// Sum over all tiles of the winding number about `query`. Throws OnBoundary
/// if the query lies on a tile edge.
int winding_sum(const TilingPatch& patch, Point2 query);

/// SVG of the patch: original copies in the first palette color, rotated
/// copies in the second.
void emit_tiling(const TilingSpec& spec, std::ostream& out);

}  // namespace stiefel
