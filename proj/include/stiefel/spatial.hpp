#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "stiefel/linalg.hpp"

namespace stiefel {

/// w + x i + y j + z k.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
  static constexpr Quaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }

  /// (a + b j) with a, b complex numbers in span{1, i}.
  static Quaternion from_complex_pair(const Complex& a, const Complex& b) {
    return {a.real(), a.imag(), b.real(), b.imag()};
  }
  Complex complex_part() const { return {w, x}; }
  Complex j_part() const { return {y, z}; }

  double norm() const;
  Quaternion conj() const { return {w, -x, -y, -z}; }

  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

Quaternion operator*(const Quaternion& a, const Quaternion& b);
Quaternion operator+(const Quaternion& a, const Quaternion& b);
Quaternion operator-(const Quaternion& a, const Quaternion& b);
Quaternion operator*(double s, const Quaternion& q);

using Vec3 = std::array<double, 3>;

inline Quaternion pure(const Vec3& v) { return {0.0, v[0], v[1], v[2]}; }
inline Vec3 imaginary_part(const Quaternion& q) { return {q.x, q.y, q.z}; }

double norm(const Vec3& v);

/// Closed polygon in R^3; edge l is the pure quaternion a i + b j + c k.
class SpacePolygon {
 public:
  SpacePolygon() = default;
  explicit SpacePolygon(std::vector<Vec3> edges) : edges_(std::move(edges)) {}

  /// Rescales to perimeter 2, then checks closure.
  static SpacePolygon normalized(std::vector<Vec3> edges);

  std::size_t size() const noexcept { return edges_.size(); }
  const std::vector<Vec3>& edges() const noexcept { return edges_; }
  const Vec3& operator[](std::size_t k) const { return edges_[k]; }

  double perimeter() const;
  double closure_defect() const;
  void validate(double closure_tol = 1e-10, double perimeter_tol = 1e-10) const;

  friend bool operator==(const SpacePolygon&, const SpacePolygon&) = default;

 private:
  std::vector<Vec3> edges_;
};

using FramingAngles = std::vector<double>;

/// q -> conj(q) i q; the result is pure imaginary with norm |q|^2.
Quaternion hopf_map(const Quaternion& q);

/// q = sqrt(|e|) (i + u)/|i + u| with u = e/|e|, so hopf_map(q) == e.
/// Throws SectionSingular near u = -i and InvalidArgument for e = 0.
Quaternion hopf_section(const Vec3& e);

/// Edge l is (conj(x_l) - y_l j) i (x_l + y_l j).
SpacePolygon frame_to_space_polygon(const HermitianFrame& f);

/// q_l = exp(i theta_l) hopf_section(e_l); x_l, y_l read off q_l = x_l + y_l j.
HermitianFrame space_polygon_to_frame(const SpacePolygon& p, std::span<const double> angles);
HermitianFrame space_polygon_to_frame(const SpacePolygon& p);

/// Moves each entry along its Hopf fiber: (x_l, y_l) -> exp(i theta_l)(x_l, y_l).
/// The projected polygon is unchanged; throws FrameInvalid if the result
/// is not orthonormal to 1e-10.
HermitianFrame apply_framing(const HermitianFrame& f, std::span<const double> angles);

/// theta_l = 2 pi m l / n: m full twists spread evenly along the polygon.
FramingAngles twisted_framing(std::size_t n, int twists);

/// Rotation of R^3 given by a unit quaternion r: v -> r v conj(r).
SpacePolygon rotate(const SpacePolygon& p, const Quaternion& r);

/// Smallest |u + i| over the edge directions; the section is singular at 0.
double section_clearance(const SpacePolygon& p);

/// Cumulative vertices starting from the origin (n + 1 points).
std::vector<Vec3> vertices(const SpacePolygon& p);

/// Closed polygon inscribed in a (p, q) torus knot, n edges, perimeter 2.
SpacePolygon torus_knot_polygon(int p, int q, std::size_t n, double major_radius = 2.0,
                                double minor_radius = 1.0);

/// Regular planar n-gon in the i-j plane, perimeter 2.
SpacePolygon regular_space_polygon(std::size_t n);

}  // namespace stiefel
