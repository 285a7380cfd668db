#include "stiefel/paths.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <type_traits>

#include "stiefel/error.hpp"

namespace stiefel {

const char* to_string(PathKind kind) {
  switch (kind) {
    case PathKind::stiefel: return "stiefel";
    case PathKind::grassmann_geodesic: return "geodesic";
  }
  return "?";
}

namespace {

constexpr double kProjectionFloor = 1e-10;
constexpr double kPlaneFloor = 1e-10;

template <typename Scalar>
void require_same_size(const Frame2<Scalar>& f0, const Frame2<Scalar>& f1, const char* who) {
  if (f0.x.size() != f0.y.size() || f1.x.size() != f1.y.size() || f0.size() != f1.size()) {
    throw Error(ErrorKind::InvalidArgument, std::string(who) + ": frame sizes differ");
  }
}

// Complex targets are rotated by exp(-i alpha) so the overlap is real and
// nonnegative; the phase comes back linearly so t = 1 lands on b itself.
template <typename Scalar>
BasicVector<Scalar> phased_rotation(const BasicVector<Scalar>& a, const BasicVector<Scalar>& b,
                                    double t) {
  if constexpr (std::is_same_v<Scalar, Complex>) {
    const Complex c = inner(a, b);
    const double alpha = std::abs(c) > 0.0 ? std::arg(c) : 0.0;
    const BasicVector<Scalar> aligned = std::polar(1.0, -alpha) * b;
    return std::polar(1.0, alpha * t) * direct_rotation(a, aligned, t);
  } else {
    return direct_rotation(a, b, t);
  }
}

template <typename Scalar>
BasicVector<Scalar> combine(const BasicVector<Scalar>& x, const BasicVector<Scalar>& y, Scalar cx,
                            Scalar cy) {
  BasicVector<Scalar> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = cx * x[i] + cy * y[i];
  return out;
}

template <typename Scalar>
double frame_step(const Frame2<Scalar>& a, const Frame2<Scalar>& b) {
  return std::hypot(norm(b.x - a.x), norm(b.y - a.y));
}

}  // namespace

template <typename Scalar>
Matrix2<Scalar> overlap(const Frame2<Scalar>& f0, const Frame2<Scalar>& f1) {
  return {inner(f0.x, f1.x), inner(f0.x, f1.y), inner(f0.y, f1.x), inner(f0.y, f1.y)};
}

template <typename Scalar>
Frame2<Scalar> MorphPath<Scalar>::eval(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "MorphPath::eval: t outside [0, 1]");
  }
  if (t == 0.0) return start_;
  if (t == 1.0) return end_;

  if (kind_ == PathKind::grassmann_geodesic) {
    return {direct_rotation(start_.x, end_.x, t), direct_rotation(start_.y, end_.y, t)};
  }

  const auto& lead0 = swapped_ ? start_.y : start_.x;
  const auto& lead1 = swapped_ ? end_.y : end_.x;
  const auto& follow0 = swapped_ ? start_.x : start_.y;
  const auto& follow1 = swapped_ ? end_.x : end_.y;

  BasicVector<Scalar> lead = phased_rotation(lead0, lead1, t);
  BasicVector<Scalar> follow = phased_rotation(follow0, follow1, t);
  const Scalar c = inner(lead, follow);
  for (std::size_t i = 0; i < follow.size(); ++i) follow[i] -= c * lead[i];
  const double len = norm(follow);
  if (len <= kProjectionFloor) {
    throw Error(ErrorKind::DegenerateProjection,
                "stiefel path: projection vanishes at t = " + std::to_string(t));
  }
  follow *= Scalar(1.0 / len);
  if (swapped_) return {std::move(follow), std::move(lead)};
  return {std::move(lead), std::move(follow)};
}

template <typename Scalar>
double MorphPath<Scalar>::length(std::size_t steps) const {
  if (steps == 0) steps = 1;
  double total = 0.0;
  Frame2<Scalar> prev = eval(0.0);
  for (std::size_t k = 1; k <= steps; ++k) {
    Frame2<Scalar> next = eval(static_cast<double>(k) / static_cast<double>(steps));
    total += frame_step(prev, next);
    prev = std::move(next);
  }
  return total;
}

template <typename Scalar>
MorphPath<Scalar> stiefel_path(const Frame2<Scalar>& f0, const Frame2<Scalar>& f1,
                               bool swap_roles) {
  require_same_size(f0, f1, "stiefel_path");
  const auto& lead0 = swap_roles ? f0.y : f0.x;
  const auto& lead1 = swap_roles ? f1.y : f1.x;
  if constexpr (std::is_same_v<Scalar, double>) {
    if (inner(lead0, lead1) <= -1.0 + 1e-10) {
      throw Error(ErrorKind::AntipodalPair, "stiefel_path: leading vectors are antipodal");
    }
  }
  MorphPath<Scalar> path;
  path.kind_ = PathKind::stiefel;
  path.start_ = f0;
  path.end_ = f1;
  path.swapped_ = swap_roles;
  return path;
}

template <typename Scalar>
GrassmannAlignment<Scalar> grassmann_align(const Frame2<Scalar>& f0, const Frame2<Scalar>& f1) {
  require_same_size(f0, f1, "grassmann_align");
  GrassmannAlignment<Scalar> out;
  out.svd = svd_2x2(overlap(f0, f1));
  if (out.svd.sigma1 <= kPlaneFloor) {
    throw Error(ErrorKind::DegeneratePlanes, "grassmann_align: planes are orthogonal");
  }
  if constexpr (std::is_same_v<Scalar, double>) {
    // Keep both bases right handed so the endpoint polygons are rotated,
    // never mirrored, copies of the inputs. When adjoint(M0) M1 has negative
    // determinant this leaves a negative overlap between the y vectors.
    auto& s = out.svd;
    auto det = [](const Matrix2<double>& m) { return m.m11 * m.m22 - m.m12 * m.m21; };
    if (det(s.u) < 0.0) {
      s.u.m12 = -s.u.m12;
      s.u.m22 = -s.u.m22;
      s.v.m12 = -s.v.m12;
      s.v.m22 = -s.v.m22;
    }
    if (det(s.v) < 0.0) {
      s.v.m12 = -s.v.m12;
      s.v.m22 = -s.v.m22;
      s.sigma2 = -s.sigma2;
    }
  }
  const auto& u = out.svd.u;
  const auto& v = out.svd.v;
  out.start = {combine(f0.x, f0.y, u.m11, u.m21), combine(f0.x, f0.y, u.m12, u.m22)};
  out.end = {combine(f1.x, f1.y, v.m11, v.m21), combine(f1.x, f1.y, v.m12, v.m22)};
  out.angles = {unit_angle(out.start.x, out.end.x), unit_angle(out.start.y, out.end.y)};
  return out;
}

template <typename Scalar>
MorphPath<Scalar> grassmann_geodesic(const Frame2<Scalar>& f0, const Frame2<Scalar>& f1) {
  GrassmannAlignment<Scalar> aligned = grassmann_align(f0, f1);
  if (aligned.svd.sigma2 <= -1.0 + 1e-10) {
    throw Error(ErrorKind::AntipodalPair,
                "grassmann_geodesic: the planes differ by a reflection only");
  }
  MorphPath<Scalar> path;
  path.kind_ = PathKind::grassmann_geodesic;
  path.start_ = std::move(aligned.start);
  path.end_ = std::move(aligned.end);
  path.angles_ = aligned.angles;
  return path;
}

template <typename Scalar>
double grassmann_distance(const Frame2<Scalar>& f0, const Frame2<Scalar>& f1) {
  require_same_size(f0, f1, "grassmann_distance");
  const auto svd = svd_2x2(overlap(f0, f1));
  const double t1 = std::acos(std::min(1.0, svd.sigma1));
  const double t2 = std::acos(std::min(1.0, svd.sigma2));
  return std::hypot(t1, t2);
}

std::vector<StiefelFrame> lift_variants(const PlanarPolygon& p, std::size_t max_n) {
  if (max_n > 20) {
    throw Error(ErrorKind::InvalidArgument, "lift_variants: max_n may not exceed 20");
  }
  const std::size_t n = p.size();
  if (n > max_n) {
    throw Error(ErrorKind::TooLarge, "lift_variants: " + std::to_string(n) +
                                         " edges would give 2^" + std::to_string(n) + " lifts");
  }
  const StiefelFrame base = polygon_to_frame(p);
  std::vector<StiefelFrame> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    StiefelFrame f = base;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (std::size_t{1} << k)) {
        f.x[k] = -f.x[k];
        f.y[k] = -f.y[k];
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

ClosestLift closest_lift(const StiefelFrame& from, const PlanarPolygon& to) {
  const std::size_t n = to.size();
  if (n > 12) {
    throw Error(ErrorKind::TooLarge, "closest_lift: brute force is limited to n <= 12");
  }
  if (from.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "closest_lift: polygon sizes differ");
  }
  const StiefelFrame base = polygon_to_frame(to);
  ClosestLift best;
  best.distance = std::numeric_limits<double>::infinity();
  for (std::size_t shift = 0; shift < n; ++shift) {
    const StiefelFrame relabeled = cyclic_relabel(base, static_cast<std::ptrdiff_t>(shift));
    for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)); ++mask) {
      StiefelFrame f = relabeled;
      std::vector<int> signs(n, 1);
      for (std::size_t k = 1; k < n; ++k) {
        if (mask & (std::size_t{1} << (k - 1))) {
          f.x[k] = -f.x[k];
          f.y[k] = -f.y[k];
          signs[k] = -1;
        }
      }
      const double d = grassmann_distance(from, f);
      if (d < best.distance) {
        best = {std::move(f), shift, std::move(signs), d};
      }
    }
  }
  return best;
}

#define STIEFEL_INSTANTIATE(S)                                                                \
  template class MorphPath<S>;                                                                \
  template Matrix2<S> overlap<S>(const Frame2<S>&, const Frame2<S>&);                         \
  template MorphPath<S> stiefel_path<S>(const Frame2<S>&, const Frame2<S>&, bool);            \
  template GrassmannAlignment<S> grassmann_align<S>(const Frame2<S>&, const Frame2<S>&);      \
  template MorphPath<S> grassmann_geodesic<S>(const Frame2<S>&, const Frame2<S>&);            \
  template double grassmann_distance<S>(const Frame2<S>&, const Frame2<S>&);

STIEFEL_INSTANTIATE(double)
STIEFEL_INSTANTIATE(Complex)

#undef STIEFEL_INSTANTIATE

}  // namespace stiefel
