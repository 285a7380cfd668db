#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "stiefel/linalg.hpp"

namespace stiefel {

using Point2 = Complex;

inline constexpr double kClosureTolerance = 1e-10;
inline constexpr double kPerimeterTolerance = 1e-10;

/// Closed planar polygon stored as edge vectors (complex numbers).
///
/// Construction does not enforce closure; use validate() or the checked
/// factory. Edges of length zero are allowed here, only the direction-based
/// operations reject them.
class PlanarPolygon {
 public:
  PlanarPolygon() = default;
  explicit PlanarPolygon(std::vector<Complex> edges) : edges_(std::move(edges)) {}

  /// Rescales to perimeter 2 and checks closure. Throws NotClosed or
  /// InvalidArgument (fewer than 3 edges, zero perimeter).
  static PlanarPolygon normalized(std::vector<Complex> edges);

  std::size_t size() const noexcept { return edges_.size(); }
  const std::vector<Complex>& edges() const noexcept { return edges_; }
  const Complex& operator[](std::size_t k) const { return edges_[k]; }

  double perimeter() const;
  /// |sum of edges|, compensated.
  double closure_defect() const;

  /// Throws NotClosed / NotNormalized when outside the given tolerances.
  void validate(double closure_tol = kClosureTolerance,
                double perimeter_tol = kPerimeterTolerance) const;

  friend bool operator==(const PlanarPolygon&, const PlanarPolygon&) = default;

 private:
  std::vector<Complex> edges_;
};

enum class TriangleClass { acute, right, obtuse };
enum class QuadClass { convex, reflex, crossed };

const char* to_string(TriangleClass c);
const char* to_string(QuadClass c);

/// Edge k is (x_k + i y_k)^2.
PlanarPolygon frame_to_polygon(const StiefelFrame& f);

/// z_k = signs[k] * sqrt(e_k) on the branch arg(z_k) = arg(e_k)/2 with
/// arg(e_k) in (-pi, pi]; x = Re z, y = Im z.
StiefelFrame polygon_to_frame(const PlanarPolygon& p, std::span<const int> signs);
StiefelFrame polygon_to_frame(const PlanarPolygon& p);

/// The sign vector s with polygon_to_frame(frame_to_polygon(f), s) == f.
std::vector<int> lift_signs(const StiefelFrame& f);

/// Principal square root used by the lift.
Complex principal_sqrt(const Complex& e);

/// n + 1 cumulative vertices starting at base; the last closes the loop.
std::vector<Point2> vertices(const PlanarPolygon& p, Point2 base = {});

/// Rotates both coordinate vectors left by k (mod n).
StiefelFrame cyclic_relabel(const StiefelFrame& f, std::ptrdiff_t k);

/// Permutation that sorts edges by direction angle in [0, 2pi), stable on ties.
/// Throws ZeroEdge.
std::vector<std::size_t> convexifying_permutation(const PlanarPolygon& p);

/// Applies one coordinate permutation to x and y so the projected edges are
/// sorted by direction; the result projects to a convex polygon.
StiefelFrame convexify(const StiefelFrame& f);

/// The same sort applied directly to an edge list.
PlanarPolygon convexify(const PlanarPolygon& p);

/// All turning cross products nonnegative (up to tol) and total turning one
/// full revolution.
bool is_convex(const PlanarPolygon& p, double tol = 1e-12);

TriangleClass classify_triangle(const PlanarPolygon& p);
QuadClass classify_quadrilateral(const PlanarPolygon& p);

/// Signed winding number of the closed vertex loop around query.
/// Throws OnBoundary when query lies within 1e-12 of an edge.
int winding_number(const PlanarPolygon& p, Point2 base, Point2 query);
int winding_number(std::span<const Point2> loop, Point2 query);

double cross(const Complex& a, const Complex& b);

}  // namespace stiefel
