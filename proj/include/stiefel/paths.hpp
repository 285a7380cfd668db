#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stiefel/linalg.hpp"
#include "stiefel/planar.hpp"

namespace stiefel {

enum class PathKind { stiefel, grassmann_geodesic };

const char* to_string(PathKind kind);

/// Principal angles between two 2-planes, theta_i = arccos(sigma_i) where
/// sigma_1 >= sigma_2 are the singular values of the overlap matrix. Hence
/// theta1 <= theta2; theta1 belongs to the x pair of the aligned bases.
/// Real alignments keep both bases right handed, so theta2 lies in
/// (pi/2, pi) when the two frames have opposite orientation.
struct PrincipalAngles {
  double theta1 = 0.0;
  double theta2 = 0.0;
};

/// Endpoint bases produced by the SVD of adjoint(M0) * M1. For real frames
/// U and V are rotations and svd.sigma2 carries the sign of det(M0^T M1).
template <typename Scalar>
struct GrassmannAlignment {
  Frame2<Scalar> start;  // columns of M0 U
  Frame2<Scalar> end;    // columns of M1 V
  PrincipalAngles angles;
  Svd2Result<Scalar> svd;
};

template <typename Scalar>
class MorphPath;

/// x(t) rotates x0 directly toward x1; y(t) is the direct rotation of y0
/// toward y1 projected onto x(t)-perp and normalized. With swap_roles the
/// construction runs with x and y exchanged. Complex frames are phase aligned
/// (target multiplied by exp(-i arg<a, b>)) and the phase is restored
/// linearly in t, so eval(1) is still the input frame.
template <typename Scalar>
MorphPath<Scalar> stiefel_path(const Frame2<Scalar>& f0, const Frame2<Scalar>& f1,
                               bool swap_roles = false);

template <typename Scalar>
MorphPath<Scalar> grassmann_geodesic(const Frame2<Scalar>& f0, const Frame2<Scalar>& f1);

/// Lazily evaluated path t in [0, 1] -> frame.
///
/// For the Stiefel kind the endpoints are the input frames. For the geodesic
/// kind they are the aligned bases, which project to rotated copies of the
/// input polygons. A path is immutable and may be evaluated from several
/// threads at once.
template <typename Scalar>
class MorphPath {
 public:
  PathKind kind() const noexcept { return kind_; }
  const Frame2<Scalar>& start() const noexcept { return start_; }
  const Frame2<Scalar>& end() const noexcept { return end_; }
  bool swapped_roles() const noexcept { return swapped_; }
  std::optional<PrincipalAngles> principal_angles() const noexcept { return angles_; }

  /// Throws DegenerateProjection (Stiefel kind) when the rotated second
  /// vector becomes parallel to the first at this t.
  Frame2<Scalar> eval(double t) const;

  /// Sum of frame displacements over `steps` uniform increments.
  double length(std::size_t steps = 256) const;

 private:
  friend MorphPath stiefel_path<>(const Frame2<Scalar>&, const Frame2<Scalar>&, bool);
  friend MorphPath grassmann_geodesic<>(const Frame2<Scalar>&, const Frame2<Scalar>&);

  PathKind kind_ = PathKind::stiefel;
  Frame2<Scalar> start_;
  Frame2<Scalar> end_;
  bool swapped_ = false;
  std::optional<PrincipalAngles> angles_;
};

/// Throws DegeneratePlanes when the planes are orthogonal (sigma_1 <= 1e-10).
/// grassmann_geodesic also throws AntipodalPair when the aligned y vectors
/// are opposite, which happens for a real frame and its mirror image.
template <typename Scalar>
GrassmannAlignment<Scalar> grassmann_align(const Frame2<Scalar>& f0, const Frame2<Scalar>& f1);

/// Geodesic distance on the Grassmannian: hypot(theta1, theta2).
template <typename Scalar>
double grassmann_distance(const Frame2<Scalar>& f0, const Frame2<Scalar>& f1);

/// adjoint(M0) * M1 for the n x 2 matrices of two frames.
template <typename Scalar>
Matrix2<Scalar> overlap(const Frame2<Scalar>& f0, const Frame2<Scalar>& f1);

/// All 2^n sign lifts of p, in sign-mask order (bit k set means z_k negated).
/// Throws TooLarge when n > max_n and InvalidArgument when max_n > 20.
std::vector<StiefelFrame> lift_variants(const PlanarPolygon& p, std::size_t max_n = 20);

struct ClosestLift {
  StiefelFrame frame;
  std::size_t relabel = 0;
  std::vector<int> signs;
  double distance = 0.0;
};

/// Brute force over the n cyclic relabelings and 2^(n-1) sign lifts of `to`
/// (the global sign spans the same plane), minimizing Grassmann distance
/// from `from`. Limited to n <= 12.
ClosestLift closest_lift(const StiefelFrame& from, const PlanarPolygon& to);

}  // namespace stiefel
