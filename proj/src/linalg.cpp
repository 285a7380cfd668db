#include "stiefel/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

#include "stiefel/error.hpp"

namespace stiefel {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::AntipodalPair: return "AntipodalPair";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::ZeroEdge: return "ZeroEdge";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::OnBoundary: return "OnBoundary";
    case ErrorKind::SectionSingular: return "SectionSingular";
    case ErrorKind::FrameInvalid: return "FrameInvalid";
    case ErrorKind::DegenerateProjection: return "DegenerateProjection";
    case ErrorKind::DegeneratePlanes: return "DegeneratePlanes";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::SamplingFailure: return "SamplingFailure";
    case ErrorKind::InvalidDocument: return "InvalidDocument";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

template <typename Scalar>
BasicVector<Scalar>& BasicVector<Scalar>::operator+=(const BasicVector& other) {
  assert(other.size() == size());
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

template <typename Scalar>
BasicVector<Scalar>& BasicVector<Scalar>::operator-=(const BasicVector& other) {
  assert(other.size() == size());
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

template <typename Scalar>
BasicVector<Scalar>& BasicVector<Scalar>::operator*=(Scalar s) {
  for (auto& v : data_) v *= s;
  return *this;
}

template <typename Scalar>
Scalar inner(const BasicVector<Scalar>& a, const BasicVector<Scalar>& b) {
  assert(a.size() == b.size());
  Scalar acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += conj_of(a[i]) * b[i];
  return acc;
}

template <typename Scalar>
double norm(const BasicVector<Scalar>& v) {
  // Scaled accumulation keeps tiny and huge entries from under/overflowing.
  double scale = 0.0;
  for (const auto& e : v) scale = std::max(scale, std::abs(e));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double acc = 0.0;
  for (const auto& e : v) acc += std::norm(e / scale);
  return scale * std::sqrt(acc);
}

template <typename Scalar>
bool is_unit(const BasicVector<Scalar>& v, double tol) {
  return std::abs(norm(v) - 1.0) <= tol;
}

template <typename Scalar>
BasicVector<Scalar> normalized(const BasicVector<Scalar>& v) {
  return Scalar(1.0 / norm(v)) * v;
}

double FrameDefects::worst() const { return std::max({x_norm, y_norm, overlap}); }

template <typename Scalar>
FrameDefects frame_defects(const Frame2<Scalar>& f) {
  return {std::abs(norm(f.x) - 1.0), std::abs(norm(f.y) - 1.0), std::abs(inner(f.x, f.y))};
}

template <typename Scalar>
bool is_orthonormal(const Frame2<Scalar>& f, double tol) {
  return f.x.size() == f.y.size() && frame_defects(f).worst() <= tol;
}

template <typename Scalar>
Matrix2<Scalar> Svd2Result<Scalar>::reconstruct() const {
  const Matrix2<Scalar> s{Scalar(sigma1), Scalar{}, Scalar{}, Scalar(sigma2)};
  return u * s * adjoint(v);
}

namespace {

constexpr double kParallelSine = 1e-10;

}  // namespace

template <typename Scalar>
Frame2<Scalar> gram_schmidt_pair(const BasicVector<Scalar>& u, const BasicVector<Scalar>& v) {
  if (u.size() != v.size()) {
    throw Error(ErrorKind::InvalidArgument, "gram_schmidt_pair: length mismatch");
  }
  const double nu = norm(u);
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw Error(ErrorKind::DegeneratePair, "gram_schmidt_pair: first vector vanishes");
  }
  const double nv = norm(v);
  if (!(nv > 0.0) || !std::isfinite(nv)) {
    throw Error(ErrorKind::DegeneratePair, "gram_schmidt_pair: second vector vanishes");
  }
  BasicVector<Scalar> a = Scalar(1.0 / nu) * u;
  BasicVector<Scalar> w = v;
  // Two projection passes: the second removes the rounding left by the first.
  for (int pass = 0; pass < 2; ++pass) {
    const Scalar c = inner(a, w);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * a[i];
  }
  const double nw = norm(w);
  if (nw <= kParallelSine * nv) {
    throw Error(ErrorKind::DegeneratePair, "gram_schmidt_pair: vectors are parallel");
  }
  w *= Scalar(1.0 / nw);
  return {std::move(a), std::move(w)};
}

namespace {

struct Reflector {
  double tau = 0.0;
  double beta = 0.0;
  std::vector<double> v;  // v[0] == 1
};

// dlarfg: H = I - tau v v^T with H [alpha; x] = [beta; 0].
Reflector make_reflector(std::span<const double> column) {
  Reflector h;
  h.v.assign(column.begin(), column.end());
  const double alpha = column[0];
  double xnorm = 0.0;
  for (std::size_t i = 1; i < column.size(); ++i) xnorm = std::hypot(xnorm, column[i]);
  h.v[0] = 1.0;
  if (xnorm == 0.0) {
    h.beta = alpha;
    std::fill(h.v.begin() + 1, h.v.end(), 0.0);
    return h;
  }
  h.beta = -std::copysign(std::hypot(alpha, xnorm), alpha);
  h.tau = (h.beta - alpha) / h.beta;
  const double scale = 1.0 / (alpha - h.beta);
  for (std::size_t i = 1; i < h.v.size(); ++i) h.v[i] *= scale;
  return h;
}

void apply_reflector(const Reflector& h, std::span<double> x) {
  double d = 0.0;
  for (std::size_t i = 0; i < h.v.size(); ++i) d += h.v[i] * x[i];
  d *= h.tau;
  for (std::size_t i = 0; i < h.v.size(); ++i) x[i] -= d * h.v[i];
}

}  // namespace

QrResult qr_householder(const RealVector& c0, const RealVector& c1) {
  const std::size_t n = c0.size();
  if (c1.size() != n || n < 2) {
    throw Error(ErrorKind::InvalidArgument, "qr_householder: need an n x 2 matrix with n >= 2");
  }
  std::vector<double> a0(c0.begin(), c0.end());
  std::vector<double> a1(c1.begin(), c1.end());

  const Reflector h1 = make_reflector(a0);
  apply_reflector(h1, a1);
  const Reflector h2 = make_reflector(std::span<const double>(a1).subspan(1));

  QrResult out;
  out.r = {h1.beta, a1[0], 0.0, h2.beta};

  // Q = H1 H2 [e1 e2].
  std::vector<double> q0(n, 0.0);
  std::vector<double> q1(n, 0.0);
  q0[0] = 1.0;
  q1[1] = 1.0;
  apply_reflector(h2, std::span<double>(q0).subspan(1));
  apply_reflector(h2, std::span<double>(q1).subspan(1));
  apply_reflector(h1, q0);
  apply_reflector(h1, q1);
  out.q = {RealVector(std::move(q0)), RealVector(std::move(q1))};
  return out;
}

QrResult qr_sign_corrected(const RealVector& c0, const RealVector& c1) {
  QrResult qr = qr_householder(c0, c1);
  const double n0 = norm(c0);
  const double n1 = norm(c1);
  if (!(n0 > 0.0) || !(std::abs(qr.r.m22) > kParallelSine * n1)) {
    throw Error(ErrorKind::DegeneratePair, "qr_sign_corrected: columns are dependent");
  }
  if (qr.r.m11 < 0.0) {
    qr.q.x *= -1.0;
    qr.r.m11 = -qr.r.m11;
    qr.r.m12 = -qr.r.m12;
  }
  if (qr.r.m22 < 0.0) {
    qr.q.y *= -1.0;
    qr.r.m22 = -qr.r.m22;
  }
  return qr;
}

template <typename Scalar>
double unit_angle(const BasicVector<Scalar>& a, const BasicVector<Scalar>& b) {
  const double c = real_of(inner(a, b));
  BasicVector<Scalar> w = b;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * a[i];
  return std::atan2(norm(w), c);
}

template <typename Scalar>
BasicVector<Scalar> direct_rotation(const BasicVector<Scalar>& a, const BasicVector<Scalar>& b,
                                    double t) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::InvalidArgument, "direct_rotation: length mismatch");
  }
  const double c = std::clamp(real_of(inner(a, b)), -1.0, 1.0);
  if (c <= -1.0 + 1e-10) {
    throw Error(ErrorKind::AntipodalPair, "direct_rotation: vectors are antipodal");
  }
  BasicVector<Scalar> w = b;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * a[i];
  const double s = norm(w);
  const double theta = std::atan2(s, c);
  if (theta < 1e-12) return a;
  w *= Scalar(1.0 / s);
  const double ct = std::cos(t * theta);
  const double st = std::sin(t * theta);
  BasicVector<Scalar> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ct * a[i] + st * w[i];
  return out;
}

namespace {

struct RealSvd {
  Matrix2<double> u;
  double s1;
  double s2;
  Matrix2<double> v;
};

Matrix2<double> rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c, -s, s, c};
}

// M = Rot(phi) diag(sx, sy) Rot(theta) for real 2 x 2 M.
RealSvd real_svd(const Matrix2<double>& m) {
  const double e = 0.5 * (m.m11 + m.m22);
  const double f = 0.5 * (m.m11 - m.m22);
  const double g = 0.5 * (m.m21 + m.m12);
  const double h = 0.5 * (m.m21 - m.m12);
  const double q = std::hypot(e, h);
  const double r = std::hypot(f, g);
  const double a1 = std::atan2(g, f);
  const double a2 = std::atan2(h, e);
  const double theta = 0.5 * (a2 - a1);
  const double phi = 0.5 * (a2 + a1);
  RealSvd out{rotation(phi), q + r, q - r, rotation(-theta)};
  if (out.s2 < 0.0) {
    out.s2 = -out.s2;
    out.v.m12 = -out.v.m12;
    out.v.m22 = -out.v.m22;
  }
  return out;
}

template <typename Scalar>
Matrix2<Scalar> lift(const Matrix2<double>& m) {
  return {Scalar(m.m11), Scalar(m.m12), Scalar(m.m21), Scalar(m.m22)};
}

}  // namespace

template <typename Scalar>
Svd2Result<Scalar> svd_2x2(const Matrix2<Scalar>& m) {
  // Givens rotation g with g * m upper triangular.
  Matrix2<Scalar> g = Matrix2<Scalar>::identity();
  const double rho = std::hypot(std::abs(m.m11), std::abs(m.m21));
  if (std::abs(m.m21) > 0.0) {
    g = {conj_of(m.m11) / rho, conj_of(m.m21) / rho, -m.m21 / rho, m.m11 / rho};
  }
  Matrix2<Scalar> t = g * m;
  t.m21 = Scalar{};

  // t = diag(1, row2) * real triangular * diag(col1, col2).
  const Scalar col1 = phase_of(t.m11);
  t.m11 *= conj_of(col1);
  const Scalar col2 = phase_of(t.m12);
  t.m12 *= conj_of(col2);
  t.m22 *= conj_of(col2);
  const Scalar row2 = phase_of(t.m22);
  t.m22 *= conj_of(row2);

  const Matrix2<double> triangular{real_of(t.m11), real_of(t.m12), 0.0, real_of(t.m22)};
  const RealSvd core = real_svd(triangular);

  const Matrix2<Scalar> left{Scalar(1.0), Scalar{}, Scalar{}, row2};
  const Matrix2<Scalar> right{col1, Scalar{}, Scalar{}, col2};

  Svd2Result<Scalar> out;
  out.u = adjoint(g) * left * lift<Scalar>(core.u);
  out.v = adjoint(right) * lift<Scalar>(core.v);
  out.sigma1 = core.s1;
  out.sigma2 = core.s2;

  // Canonical phases: first row of u real and nonnegative where defined.
  const Scalar p1 = conj_of(phase_of(out.u.m11));
  const Scalar p2 = conj_of(phase_of(out.u.m12));
  out.u.m11 *= p1;
  out.u.m21 *= p1;
  out.v.m11 *= p1;
  out.v.m21 *= p1;
  out.u.m12 *= p2;
  out.u.m22 *= p2;
  out.v.m12 *= p2;
  out.v.m22 *= p2;
  return out;
}

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (const double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

Complex compensated_sum(std::span<const Complex> values) {
  std::vector<double> re;
  std::vector<double> im;
  re.reserve(values.size());
  im.reserve(values.size());
  for (const auto& v : values) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return {compensated_sum(std::span<const double>(re)),
          compensated_sum(std::span<const double>(im))};
}

#define STIEFEL_INSTANTIATE(S)                                                               \
  template class BasicVector<S>;                                                             \
  template S inner<S>(const BasicVector<S>&, const BasicVector<S>&);                         \
  template double norm<S>(const BasicVector<S>&);                                            \
  template bool is_unit<S>(const BasicVector<S>&, double);                                   \
  template BasicVector<S> normalized<S>(const BasicVector<S>&);                              \
  template FrameDefects frame_defects<S>(const Frame2<S>&);                                  \
  template bool is_orthonormal<S>(const Frame2<S>&, double);                                 \
  template struct Svd2Result<S>;                                                             \
  template Frame2<S> gram_schmidt_pair<S>(const BasicVector<S>&, const BasicVector<S>&);     \
  template double unit_angle<S>(const BasicVector<S>&, const BasicVector<S>&);               \
  template BasicVector<S> direct_rotation<S>(const BasicVector<S>&, const BasicVector<S>&,   \
                                             double);                                        \
  template Svd2Result<S> svd_2x2<S>(const Matrix2<S>&);

STIEFEL_INSTANTIATE(double)
STIEFEL_INSTANTIATE(Complex)

#undef STIEFEL_INSTANTIATE

}  // namespace stiefel
