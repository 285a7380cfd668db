#include "stiefel/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stiefel/error.hpp"

namespace stiefel {

namespace {

constexpr double kSectionClearance = 1e-8;

Vec3 sum_compensated(const std::vector<Vec3>& edges) {
  Vec3 out{};
  std::vector<double> column(edges.size());
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t k = 0; k < edges.size(); ++k) column[k] = edges[k][c];
    out[c] = compensated_sum(std::span<const double>(column));
  }
  return out;
}

}  // namespace

double Quaternion::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quaternion operator+(const Quaternion& a, const Quaternion& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}

Quaternion operator-(const Quaternion& a, const Quaternion& b) {
  return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}

Quaternion operator*(double s, const Quaternion& q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }

double norm(const Vec3& v) { return std::hypot(v[0], v[1], v[2]); }

SpacePolygon SpacePolygon::normalized(std::vector<Vec3> edges) {
  if (edges.size() < 3) {
    throw Error(ErrorKind::InvalidArgument, "polygon needs at least 3 edges");
  }
  SpacePolygon p(std::move(edges));
  const double per = p.perimeter();
  if (!(per > 0.0) || !std::isfinite(per)) {
    throw Error(ErrorKind::InvalidArgument, "polygon has zero or non-finite perimeter");
  }
  for (auto& e : p.edges_) {
    for (auto& c : e) c *= 2.0 / per;
  }
  p.validate();
  return p;
}

double SpacePolygon::perimeter() const {
  std::vector<double> lengths;
  lengths.reserve(edges_.size());
  for (const auto& e : edges_) lengths.push_back(norm(e));
  return compensated_sum(std::span<const double>(lengths));
}

double SpacePolygon::closure_defect() const { return norm(sum_compensated(edges_)); }

void SpacePolygon::validate(double closure_tol, double perimeter_tol) const {
  if (edges_.size() < 3) {
    throw Error(ErrorKind::InvalidArgument, "polygon needs at least 3 edges");
  }
  const double per = perimeter();
  const double gap = closure_defect();
  if (!(gap <= closure_tol * per)) {
    throw Error(ErrorKind::NotClosed,
                "space polygon does not close: |sum of edges| = " + std::to_string(gap));
  }
  if (!(std::abs(per - 2.0) <= perimeter_tol)) {
    throw Error(ErrorKind::NotNormalized,
                "space polygon perimeter is " + std::to_string(per) + ", expected 2");
  }
}

Quaternion hopf_map(const Quaternion& q) { return q.conj() * Quaternion::unit_i() * q; }

Quaternion hopf_section(const Vec3& e) {
  const double len = norm(e);
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw Error(ErrorKind::InvalidArgument, "hopf_section: zero or non-finite edge");
  }
  // |e| i + e, with |e| + e_x evaluated without cancellation near u = -i.
  const double transverse = e[1] * e[1] + e[2] * e[2];
  const double along = e[0] >= 0.0 ? len + e[0] : transverse / (len - e[0]);
  const double dir = std::sqrt(along * along + transverse);
  if (dir <= kSectionClearance * len) {
    throw Error(ErrorKind::SectionSingular, "hopf_section: edge points along -i");
  }
  const double scale = std::sqrt(len) / dir;
  return {0.0, scale * along, scale * e[1], scale * e[2]};
}

SpacePolygon frame_to_space_polygon(const HermitianFrame& f) {
  if (f.x.size() != f.y.size()) {
    throw Error(ErrorKind::InvalidArgument, "frame_to_space_polygon: x and y lengths differ");
  }
  std::vector<Vec3> edges(f.size());
  for (std::size_t l = 0; l < f.size(); ++l) {
    edges[l] = imaginary_part(hopf_map(Quaternion::from_complex_pair(f.x[l], f.y[l])));
  }
  return SpacePolygon(std::move(edges));
}

HermitianFrame space_polygon_to_frame(const SpacePolygon& p, std::span<const double> angles) {
  p.validate();
  if (!angles.empty() && angles.size() != p.size()) {
    throw Error(ErrorKind::InvalidArgument, "space_polygon_to_frame: need one angle per edge");
  }
  ComplexVector x(p.size());
  ComplexVector y(p.size());
  for (std::size_t l = 0; l < p.size(); ++l) {
    Quaternion q = hopf_section(p[l]);
    if (!angles.empty()) {
      const Quaternion fiber{std::cos(angles[l]), std::sin(angles[l]), 0.0, 0.0};
      q = fiber * q;
    }
    x[l] = q.complex_part();
    y[l] = q.j_part();
  }
  return {std::move(x), std::move(y)};
}

HermitianFrame space_polygon_to_frame(const SpacePolygon& p) {
  return space_polygon_to_frame(p, std::span<const double>{});
}

HermitianFrame apply_framing(const HermitianFrame& f, std::span<const double> angles) {
  if (angles.size() != f.size() || f.x.size() != f.y.size()) {
    throw Error(ErrorKind::InvalidArgument, "apply_framing: need one angle per entry");
  }
  HermitianFrame out = f;
  for (std::size_t l = 0; l < f.size(); ++l) {
    const Complex phase = std::polar(1.0, angles[l]);
    out.x[l] *= phase;
    out.y[l] *= phase;
  }
  if (!is_orthonormal(out, 1e-10)) {
    throw Error(ErrorKind::FrameInvalid, "apply_framing: result is not orthonormal");
  }
  const SpacePolygon before = frame_to_space_polygon(f);
  const SpacePolygon after = frame_to_space_polygon(out);
  for (std::size_t l = 0; l < f.size(); ++l) {
    for (std::size_t c = 0; c < 3; ++c) {
      if (std::abs(before[l][c] - after[l][c]) > 1e-12) {
        throw Error(ErrorKind::FrameInvalid, "apply_framing: projected polygon moved");
      }
    }
  }
  return out;
}

FramingAngles twisted_framing(std::size_t n, int twists) {
  FramingAngles theta(n);
  for (std::size_t l = 0; l < n; ++l) {
    theta[l] = 2.0 * std::numbers::pi * twists * static_cast<double>(l) / static_cast<double>(n);
  }
  return theta;
}

SpacePolygon rotate(const SpacePolygon& p, const Quaternion& r) {
  std::vector<Vec3> edges(p.size());
  for (std::size_t l = 0; l < p.size(); ++l) {
    edges[l] = imaginary_part(r * pure(p[l]) * r.conj());
  }
  return SpacePolygon(std::move(edges));
}

double section_clearance(const SpacePolygon& p) {
  double best = 2.0;
  for (const auto& e : p.edges()) {
    const double len = norm(e);
    if (len == 0.0) continue;
    best = std::min(best, std::hypot(1.0 + e[0] / len, e[1] / len, e[2] / len));
  }
  return best;
}

std::vector<Vec3> vertices(const SpacePolygon& p) {
  std::vector<Vec3> out;
  out.reserve(p.size() + 1);
  Vec3 sum{};
  Vec3 carry{};
  out.push_back(sum);
  for (const auto& e : p.edges()) {
    for (std::size_t c = 0; c < 3; ++c) {
      const double y = e[c] - carry[c];
      const double t = sum[c] + y;
      carry[c] = (t - sum[c]) - y;
      sum[c] = t;
    }
    out.push_back(sum);
  }
  return out;
}

SpacePolygon torus_knot_polygon(int p, int q, std::size_t n, double major_radius,
                                double minor_radius) {
  std::vector<Vec3> points(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    const double r = major_radius + minor_radius * std::cos(q * t);
    points[k] = {r * std::cos(p * t), r * std::sin(p * t), minor_radius * std::sin(q * t)};
  }
  std::vector<Vec3> edges(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3& a = points[k];
    const Vec3& b = points[(k + 1) % n];
    edges[k] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
  }
  return SpacePolygon::normalized(std::move(edges));
}

SpacePolygon regular_space_polygon(std::size_t n) {
  std::vector<Vec3> edges(n);
  for (std::size_t k = 0; k < n; ++k) {
    // A quarter-step offset keeps every edge direction away from -i.
    const double a =
        2.0 * std::numbers::pi * (static_cast<double>(k) + 0.25) / static_cast<double>(n);
    edges[k] = {std::cos(a), std::sin(a), 0.0};
  }
  return SpacePolygon::normalized(std::move(edges));
}

}  // namespace stiefel
