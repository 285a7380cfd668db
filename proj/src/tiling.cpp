#include "stiefel/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "stiefel/error.hpp"
#include "stiefel/svg.hpp"

namespace stiefel {

namespace {

struct Box {
  double lo_x, lo_y, hi_x, hi_y;
};

Box bounds(const Quad& q) {
  Box b{q[0].real(), q[0].imag(), q[0].real(), q[0].imag()};
  for (const auto& z : q) {
    b.lo_x = std::min(b.lo_x, z.real());
    b.hi_x = std::max(b.hi_x, z.real());
    b.lo_y = std::min(b.lo_y, z.imag());
    b.hi_y = std::max(b.hi_y, z.imag());
  }
  return b;
}

Quad half_turn(const Quad& q, Point2 a, Point2 b) {
  // p -> a + b - p maps A, B, C, D to B, A, C', D' and keeps orientation.
  const Point2 s = a + b;
  return {s - q[0], s - q[1], s - q[2], s - q[3]};
}

Quad shifted(const Quad& q, Point2 t) { return {q[0] + t, q[1] + t, q[2] + t, q[3] + t}; }

// Lagrange-Gauss reduction: the same lattice with a shortest basis, so a
// rows x cols patch is as round as the lattice allows.
std::pair<Point2, Point2> reduce_basis(Point2 a, Point2 b) {
  if (std::norm(a) > std::norm(b)) std::swap(a, b);
  for (int iter = 0; iter < 100; ++iter) {
    const double mu = std::round((b * std::conj(a)).real() / std::norm(a));
    if (mu == 0.0) break;
    b -= mu * a;
    if (std::norm(b) >= std::norm(a)) break;
    std::swap(a, b);
  }
  if (cross(a, b) < 0.0) b = -b;
  return {a, b};
}

}  // namespace

std::pair<double, double> TilingPatch::lattice_coords(Point2 query) const {
  const double det = cross(lattice_a, lattice_b);
  return {cross(query, lattice_b) / det, cross(lattice_a, query) / det};
}

bool TilingPatch::covers(Point2 query) const {
  const Quad copies[2] = {base, half_turn(base, base[0], base[1])};
  for (const auto& c : copies) {
    const Box box = bounds(c);
    // Translates l with query - l inside the box.
    const Point2 corners[4] = {
        query - Point2{box.lo_x, box.lo_y}, query - Point2{box.hi_x, box.lo_y},
        query - Point2{box.lo_x, box.hi_y}, query - Point2{box.hi_x, box.hi_y}};
    double s_lo = INFINITY, s_hi = -INFINITY, t_lo = INFINITY, t_hi = -INFINITY;
    for (const auto& z : corners) {
      const auto [s, t] = lattice_coords(z);
      s_lo = std::min(s_lo, s);
      s_hi = std::max(s_hi, s);
      t_lo = std::min(t_lo, t);
      t_hi = std::max(t_hi, t);
    }
    for (double j = std::floor(s_lo); j <= std::ceil(s_hi); ++j) {
      for (double i = std::floor(t_lo); i <= std::ceil(t_hi); ++i) {
        const Point2 p = query - (j * lattice_a + i * lattice_b);
        const bool inside = p.real() >= box.lo_x && p.real() <= box.hi_x &&
                            p.imag() >= box.lo_y && p.imag() <= box.hi_y;
        if (!inside) continue;
        if (j >= 0 && i >= 0 && j < static_cast<double>(cols) && i < static_cast<double>(rows)) {
          continue;
        }
        // A missing copy matters only if it winds around the query.
        try {
          if (winding_number(std::span<const Point2>(c), p) != 0) return false;
        } catch (const Error&) {
          return false;
        }
      }
    }
  }
  return true;
}

TilingPatch build_tiling(const TilingSpec& spec) {
  if (spec.rows == 0 || spec.cols == 0) {
    throw Error(ErrorKind::InvalidArgument, "tiling: rows and cols must be positive");
  }
  if (spec.rows > kMaxTiles / spec.cols) {
    throw Error(ErrorKind::InvalidArgument, "tiling: rows * cols exceeds 1e6");
  }
  if (spec.quad.size() != 4) {
    throw Error(ErrorKind::InvalidArgument, "tiling: base polygon must be a quadrilateral");
  }
  spec.quad.validate();
  classify_quadrilateral(spec.quad);

  auto v = vertices(spec.quad);
  Quad q{v[0], v[1], v[2], v[3]};
  TilingPatch patch;
  patch.rows = spec.rows;
  patch.cols = spec.cols;
  const double scale = std::abs(q[2] - q[0]) * std::abs(q[3] - q[1]);
  double det = cross(q[2] - q[0], q[3] - q[1]);
  if (!(std::abs(det) > 1e-12 * scale) || scale == 0.0) {
    throw Error(ErrorKind::Degenerate, "tiling: diagonals are parallel");
  }
  if (det < 0.0) {
    q = {q[0], q[3], q[2], q[1]};
    patch.reversed = true;
  }
  patch.base = q;
  std::tie(patch.lattice_a, patch.lattice_b) = reduce_basis(q[2] - q[0], q[3] - q[1]);

  const Quad turned = half_turn(q, q[0], q[1]);
  patch.tiles.reserve(2 * spec.rows * spec.cols);
  for (std::size_t i = 0; i < spec.rows; ++i) {
    for (std::size_t j = 0; j < spec.cols; ++j) {
      const Point2 t = static_cast<double>(j) * patch.lattice_a +
                       static_cast<double>(i) * patch.lattice_b;
      patch.tiles.push_back(shifted(q, t));
      patch.tiles.push_back(shifted(turned, t));
    }
  }
  return patch;
}

int winding_sum(const TilingPatch& patch, Point2 query) {
  int total = 0;
  for (const auto& tile : patch.tiles) {
    total += winding_number(std::span<const Point2>(tile), query);
  }
  return total;
}

void emit_tiling(const TilingSpec& spec, std::ostream& out) {
  const TilingPatch patch = build_tiling(spec);
  std::vector<SvgPath> paths;
  paths.reserve(patch.tiles.size());
  for (std::size_t k = 0; k < patch.tiles.size(); ++k) {
    const char* color = kDefaultPalette[k % 2];
    paths.push_back({std::vector<Point2>(patch.tiles[k].begin(), patch.tiles[k].end()),
                     std::string("#333333"), std::string(color)});
  }
  emit_svg_paths(paths, out);
}

}  // namespace stiefel
