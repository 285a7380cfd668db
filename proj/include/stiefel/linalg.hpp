#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace stiefel {

using Complex = std::complex<double>;

inline double conj_of(double v) { return v; }
inline Complex conj_of(const Complex& v) { return std::conj(v); }
inline double real_of(double v) { return v; }
inline double real_of(const Complex& v) { return v.real(); }

// Unit-modulus factor of v; 1 for zero so callers can divide it out blindly.
inline double phase_of(double v) { return v < 0.0 ? -1.0 : 1.0; }
inline Complex phase_of(const Complex& v) {
  const double r = std::abs(v);
  return r > 0.0 ? v / r : Complex(1.0, 0.0);
}

inline constexpr double kUnitTolerance = 1e-12;

/// Fixed-length vector over double or std::complex<double>.
///
/// The length is set at construction and never changes; arithmetic is
/// elementwise and requires equal lengths.
template <typename Scalar>
class BasicVector {
 public:
  using value_type = Scalar;

  BasicVector() = default;
  explicit BasicVector(std::size_t n) : data_(n, Scalar{}) {}
  BasicVector(std::initializer_list<Scalar> values) : data_(values) {}
  explicit BasicVector(std::vector<Scalar> values) : data_(std::move(values)) {}

  std::size_t size() const noexcept { return data_.size(); }

  Scalar& operator[](std::size_t i) { return data_[i]; }
  const Scalar& operator[](std::size_t i) const { return data_[i]; }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  std::span<const Scalar> view() const noexcept { return data_; }
  const std::vector<Scalar>& values() const noexcept { return data_; }

  BasicVector& operator+=(const BasicVector& other);
  BasicVector& operator-=(const BasicVector& other);
  BasicVector& operator*=(Scalar s);

  friend bool operator==(const BasicVector&, const BasicVector&) = default;

 private:
  std::vector<Scalar> data_;
};

using RealVector = BasicVector<double>;
using ComplexVector = BasicVector<Complex>;

template <typename Scalar>
BasicVector<Scalar> operator+(BasicVector<Scalar> a, const BasicVector<Scalar>& b) {
  return a += b;
}
template <typename Scalar>
BasicVector<Scalar> operator-(BasicVector<Scalar> a, const BasicVector<Scalar>& b) {
  return a -= b;
}
template <typename Scalar>
BasicVector<Scalar> operator*(Scalar s, BasicVector<Scalar> a) {
  return a *= s;
}
template <typename Scalar>
BasicVector<Scalar> operator-(BasicVector<Scalar> a) {
  return a *= Scalar(-1.0);
}

/// Canonical pairing: sum of conj(a_k) * b_k (the dot product for reals).
template <typename Scalar>
Scalar inner(const BasicVector<Scalar>& a, const BasicVector<Scalar>& b);

template <typename Scalar>
double norm(const BasicVector<Scalar>& v);

template <typename Scalar>
bool is_unit(const BasicVector<Scalar>& v, double tol = kUnitTolerance);

template <typename Scalar>
BasicVector<Scalar> normalized(const BasicVector<Scalar>& v);

/// Ordered pair of vectors; a point of the Stiefel manifold when orthonormal.
template <typename Scalar>
struct Frame2 {
  BasicVector<Scalar> x;
  BasicVector<Scalar> y;

  std::size_t size() const noexcept { return x.size(); }
  friend bool operator==(const Frame2&, const Frame2&) = default;
};

using StiefelFrame = Frame2<double>;
using HermitianFrame = Frame2<Complex>;

struct FrameDefects {
  double x_norm;  // | |x| - 1 |
  double y_norm;  // | |y| - 1 |
  double overlap; // |<x, y>|

  double worst() const;
};

template <typename Scalar>
FrameDefects frame_defects(const Frame2<Scalar>& f);

template <typename Scalar>
bool is_orthonormal(const Frame2<Scalar>& f, double tol);

template <typename Scalar>
struct Matrix2 {
  Scalar m11{};
  Scalar m12{};
  Scalar m21{};
  Scalar m22{};

  static Matrix2 identity() { return {Scalar(1.0), Scalar{}, Scalar{}, Scalar(1.0)}; }
  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

template <typename Scalar>
Matrix2<Scalar> operator*(const Matrix2<Scalar>& a, const Matrix2<Scalar>& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

template <typename Scalar>
Matrix2<Scalar> adjoint(const Matrix2<Scalar>& a) {
  return {conj_of(a.m11), conj_of(a.m21), conj_of(a.m12), conj_of(a.m22)};
}

template <typename Scalar>
double frobenius_distance(const Matrix2<Scalar>& a, const Matrix2<Scalar>& b) {
  return std::sqrt(std::norm(a.m11 - b.m11) + std::norm(a.m12 - b.m12) +
                   std::norm(a.m21 - b.m21) + std::norm(a.m22 - b.m22));
}

/// M = u * diag(sigma1, sigma2) * adjoint(v), sigma1 >= sigma2 >= 0.
template <typename Scalar>
struct Svd2Result {
  Matrix2<Scalar> u;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  Matrix2<Scalar> v;

  Matrix2<Scalar> reconstruct() const;
};

/// Orthonormalizes (u, v): a = u/|u|, b spans the rest of span{u, v}.
/// Throws DegeneratePair when u vanishes or v is numerically parallel to u.
template <typename Scalar>
Frame2<Scalar> gram_schmidt_pair(const BasicVector<Scalar>& u, const BasicVector<Scalar>& v);

/// Thin QR of the n x 2 matrix [c0 c1]; q holds the columns of Q.
struct QrResult {
  StiefelFrame q;
  Matrix2<double> r;
};

/// Householder QR with the LAPACK reflector convention. Q(1,1) is never
/// positive and the sign of diag(R) depends on the data, so the column signs
/// of Q are not canonical.
QrResult qr_householder(const RealVector& c0, const RealVector& c1);

/// Householder QR followed by the column sign flips that make diag(R) > 0.
/// The factor Q then coincides with gram_schmidt_pair(c0, c1).
QrResult qr_sign_corrected(const RealVector& c0, const RealVector& c1);

/// Rotates unit a toward unit b by t times the angle between them, inside
/// span{a, b}. Complex inputs are rotated as real 2n-vectors; callers phase
/// align b beforehand so that <a, b> is real and nonnegative.
template <typename Scalar>
BasicVector<Scalar> direct_rotation(const BasicVector<Scalar>& a, const BasicVector<Scalar>& b,
                                    double t);

/// Angle between two unit vectors, accurate near 0 and pi.
template <typename Scalar>
double unit_angle(const BasicVector<Scalar>& a, const BasicVector<Scalar>& b);

/// Closed-form SVD of a 2 x 2 matrix (one Givens reduction to triangular form,
/// diagonal phase fixes, then a two-sided Jacobi rotation). The first row of
/// u is made real and nonnegative wherever it is nonzero.
template <typename Scalar>
Svd2Result<Scalar> svd_2x2(const Matrix2<Scalar>& m);

/// Neumaier-compensated sums.
double compensated_sum(std::span<const double> values);
Complex compensated_sum(std::span<const Complex> values);

}  // namespace stiefel
