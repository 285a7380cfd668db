#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "stiefel/planar.hpp"

namespace stiefel {

enum class EnsembleKind { triangle, quad, ngon };

const char* to_string(EnsembleKind kind);
std::optional<EnsembleKind> parse_ensemble_kind(const std::string& s);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::triangle;
  std::size_t n = 3;  // forced to 3 / 4 for triangle / quad
  std::size_t samples = 1;
  std::uint64_t seed = 0;
  std::size_t shards = 0;  // 0: one per hardware thread
};

struct ClassFractions {
  double convex = 0.0;
  double reflex = 0.0;
  double crossed = 0.0;

  friend bool operator==(const ClassFractions&, const ClassFractions&) = default;
};

struct EnsembleReport {
  EnsembleKind kind = EnsembleKind::triangle;
  std::size_t n = 3;
  std::size_t sample_count = 0;
  std::optional<double> obtuse_fraction;       // triangles
  std::optional<ClassFractions> class_fractions;  // quadrilaterals
  double mean_edge_length = 0.0;
  double mean_diameter = 0.0;
  std::uint64_t seed = 0;
  // Members whose classification hit a measure-zero degeneracy; they are
  // left out of the fraction denominators.
  std::size_t degenerate_count = 0;

  friend bool operator==(const EnsembleReport&, const EnsembleReport&) = default;
};

/// Draws spec.samples polygons, sample i from SeededRng::for_sample(seed, i),
/// and accumulates statistics in sample order, so the report is the same for
/// every shard count.
EnsembleReport ensemble_report(const EnsembleSpec& spec);

/// Largest vertex-to-vertex distance. Pairwise for n <= 1000, otherwise
/// convex hull followed by rotating calipers.
double diameter(const PlanarPolygon& p);
double diameter_pairwise(std::span<const Point2> points);
double diameter_calipers(std::span<const Point2> points);

/// Counter-clockwise hull without collinear points (Andrew's monotone chain).
std::vector<Point2> convex_hull(std::span<const Point2> points);

}  // namespace stiefel
