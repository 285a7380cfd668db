#include "stiefel/planar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "stiefel/error.hpp"

namespace stiefel {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAngleTolerance = 1e-9;
constexpr double kCollinearTolerance = 1e-12;
constexpr double kBoundaryDistance = 1e-12;
constexpr double kZeroEdge = 1e-14;

double dot(const Complex& a, const Complex& b) {
  return a.real() * b.real() + a.imag() * b.imag();
}

double segment_distance(Point2 p, Point2 a, Point2 b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

void require_nonzero_edges(const PlanarPolygon& p, const char* who) {
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (std::abs(p[k]) <= kZeroEdge) {
      throw Error(ErrorKind::ZeroEdge,
                  std::string(who) + ": edge " + std::to_string(k) + " has no direction");
    }
  }
}

}  // namespace

double cross(const Complex& a, const Complex& b) {
  return a.real() * b.imag() - a.imag() * b.real();
}

const char* to_string(TriangleClass c) {
  switch (c) {
    case TriangleClass::acute: return "acute";
    case TriangleClass::right: return "right";
    case TriangleClass::obtuse: return "obtuse";
  }
  return "?";
}

const char* to_string(QuadClass c) {
  switch (c) {
    case QuadClass::convex: return "convex";
    case QuadClass::reflex: return "reflex";
    case QuadClass::crossed: return "crossed";
  }
  return "?";
}

PlanarPolygon PlanarPolygon::normalized(std::vector<Complex> edges) {
  if (edges.size() < 3) {
    throw Error(ErrorKind::InvalidArgument, "polygon needs at least 3 edges");
  }
  PlanarPolygon p(std::move(edges));
  const double per = p.perimeter();
  if (!(per > 0.0) || !std::isfinite(per)) {
    throw Error(ErrorKind::InvalidArgument, "polygon has zero or non-finite perimeter");
  }
  for (auto& e : p.edges_) e *= 2.0 / per;
  p.validate();
  return p;
}

double PlanarPolygon::perimeter() const {
  std::vector<double> lengths;
  lengths.reserve(edges_.size());
  for (const auto& e : edges_) lengths.push_back(std::abs(e));
  return compensated_sum(std::span<const double>(lengths));
}

double PlanarPolygon::closure_defect() const {
  return std::abs(compensated_sum(std::span<const Complex>(edges_)));
}

void PlanarPolygon::validate(double closure_tol, double perimeter_tol) const {
  if (edges_.size() < 3) {
    throw Error(ErrorKind::InvalidArgument, "polygon needs at least 3 edges");
  }
  const double per = perimeter();
  const double gap = closure_defect();
  if (!(gap <= closure_tol * per)) {
    throw Error(ErrorKind::NotClosed, "polygon does not close: |sum of edges| = " +
                                          std::to_string(gap));
  }
  if (!(std::abs(per - 2.0) <= perimeter_tol)) {
    throw Error(ErrorKind::NotNormalized, "polygon perimeter is " + std::to_string(per) +
                                              ", expected 2");
  }
}

PlanarPolygon frame_to_polygon(const StiefelFrame& f) {
  if (f.x.size() != f.y.size()) {
    throw Error(ErrorKind::InvalidArgument, "frame_to_polygon: x and y lengths differ");
  }
  std::vector<Complex> edges(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Complex z(f.x[k], f.y[k]);
    edges[k] = z * z;
  }
  return PlanarPolygon(std::move(edges));
}

Complex principal_sqrt(const Complex& e) {
  // std::sqrt lands on arg = -pi/2 for a negative real with a -0 imaginary
  // part; the lift uses arg(e) in (-pi, pi], i.e. +pi there.
  if (e.imag() == 0.0 && e.real() < 0.0) return {0.0, std::sqrt(-e.real())};
  return std::sqrt(e);
}

StiefelFrame polygon_to_frame(const PlanarPolygon& p, std::span<const int> signs) {
  p.validate();
  if (signs.size() != p.size()) {
    throw Error(ErrorKind::InvalidArgument, "polygon_to_frame: need one sign per edge");
  }
  RealVector x(p.size());
  RealVector y(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (signs[k] != 1 && signs[k] != -1) {
      throw Error(ErrorKind::InvalidArgument, "polygon_to_frame: signs must be +1 or -1");
    }
    const Complex z = static_cast<double>(signs[k]) * principal_sqrt(p[k]);
    x[k] = z.real();
    y[k] = z.imag();
  }
  return {std::move(x), std::move(y)};
}

StiefelFrame polygon_to_frame(const PlanarPolygon& p) {
  const std::vector<int> plus(p.size(), 1);
  return polygon_to_frame(p, plus);
}

std::vector<int> lift_signs(const StiefelFrame& f) {
  std::vector<int> signs(f.size(), 1);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Complex z(f.x[k], f.y[k]);
    const Complex root = principal_sqrt(z * z);
    if (dot(z, root) < 0.0) signs[k] = -1;
  }
  return signs;
}

std::vector<Point2> vertices(const PlanarPolygon& p, Point2 base) {
  std::vector<Point2> out;
  out.reserve(p.size() + 1);
  out.push_back(base);
  // Kahan-compensated running sum so v_n returns to base for very large n.
  Complex sum = base;
  Complex carry{};
  for (const auto& e : p.edges()) {
    const Complex y = e - carry;
    const Complex t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    out.push_back(sum);
  }
  return out;
}

StiefelFrame cyclic_relabel(const StiefelFrame& f, std::ptrdiff_t k) {
  const auto n = static_cast<std::ptrdiff_t>(f.size());
  if (n == 0) return f;
  const std::ptrdiff_t shift = ((k % n) + n) % n;
  std::vector<double> x(f.x.begin(), f.x.end());
  std::vector<double> y(f.y.begin(), f.y.end());
  std::rotate(x.begin(), x.begin() + shift, x.end());
  std::rotate(y.begin(), y.begin() + shift, y.end());
  return {RealVector(std::move(x)), RealVector(std::move(y))};
}

std::vector<std::size_t> convexifying_permutation(const PlanarPolygon& p) {
  require_nonzero_edges(p, "convexify");
  std::vector<double> angle(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    double a = std::arg(p[k]);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;
    angle[k] = a;
  }
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return angle[a] < angle[b]; });
  return order;
}

StiefelFrame convexify(const StiefelFrame& f) {
  const auto order = convexifying_permutation(frame_to_polygon(f));
  RealVector x(f.size());
  RealVector y(f.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    x[k] = f.x[order[k]];
    y[k] = f.y[order[k]];
  }
  return {std::move(x), std::move(y)};
}

PlanarPolygon convexify(const PlanarPolygon& p) {
  const auto order = convexifying_permutation(p);
  std::vector<Complex> edges(p.size());
  for (std::size_t k = 0; k < order.size(); ++k) edges[k] = p[order[k]];
  return PlanarPolygon(std::move(edges));
}

bool is_convex(const PlanarPolygon& p, double tol) {
  std::vector<Complex> edges;
  for (const auto& e : p.edges()) {
    if (std::abs(e) > kZeroEdge) edges.push_back(e);
  }
  if (edges.size() < 2) return true;
  double turning = 0.0;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Complex& a = edges[k];
    const Complex& b = edges[(k + 1) % edges.size()];
    const double c = cross(a, b);
    if (c < -tol * std::abs(a) * std::abs(b)) return false;
    turning += std::atan2(c, dot(a, b));
  }
  return std::abs(turning - kTwoPi) < 1e-6;
}

TriangleClass classify_triangle(const PlanarPolygon& p) {
  if (p.size() != 3) {
    throw Error(ErrorKind::InvalidArgument, "classify_triangle: polygon is not a triangle");
  }
  require_nonzero_edges(p, "classify_triangle");
  double largest = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const Complex a = -p[k];
    const Complex b = p[(k + 1) % 3];
    const double angle = std::atan2(std::abs(cross(a, b)), dot(a, b));
    if (angle < kAngleTolerance || angle > std::numbers::pi - kAngleTolerance) {
      throw Error(ErrorKind::Degenerate, "classify_triangle: collinear vertices");
    }
    largest = std::max(largest, angle);
  }
  const double half_pi = 0.5 * std::numbers::pi;
  if (largest > half_pi + kAngleTolerance) return TriangleClass::obtuse;
  if (largest >= half_pi - kAngleTolerance) return TriangleClass::right;
  return TriangleClass::acute;
}

namespace {

// True when segments (a, b) and (c, d) cross at a single interior point.
// Touching or collinear overlap is reported as Degenerate.
bool segments_cross(Point2 a, Point2 b, Point2 c, Point2 d) {
  if (segment_distance(a, c, d) <= kBoundaryDistance ||
      segment_distance(b, c, d) <= kBoundaryDistance ||
      segment_distance(c, a, b) <= kBoundaryDistance ||
      segment_distance(d, a, b) <= kBoundaryDistance) {
    throw Error(ErrorKind::Degenerate, "classify_quadrilateral: opposite edges touch");
  }
  const double o1 = cross(b - a, c - a);
  const double o2 = cross(b - a, d - a);
  const double o3 = cross(d - c, a - c);
  const double o4 = cross(d - c, b - c);
  return ((o1 > 0.0) != (o2 > 0.0)) && ((o3 > 0.0) != (o4 > 0.0));
}

}  // namespace

QuadClass classify_quadrilateral(const PlanarPolygon& p) {
  if (p.size() != 4) {
    throw Error(ErrorKind::InvalidArgument,
                "classify_quadrilateral: polygon is not a quadrilateral");
  }
  require_nonzero_edges(p, "classify_quadrilateral");
  std::array<double, 4> turns{};
  for (std::size_t k = 0; k < 4; ++k) {
    const Complex& a = p[k];
    const Complex& b = p[(k + 1) % 4];
    turns[k] = cross(a, b);
    if (std::abs(turns[k]) <= kCollinearTolerance * std::abs(a) * std::abs(b)) {
      throw Error(ErrorKind::Degenerate, "classify_quadrilateral: collinear consecutive edges");
    }
  }
  const auto v = vertices(p);
  // Crossing takes precedence: a bowtie can still turn consistently.
  if (segments_cross(v[0], v[1], v[2], v[3]) || segments_cross(v[1], v[2], v[3], v[0])) {
    return QuadClass::crossed;
  }
  const bool all_left = std::all_of(turns.begin(), turns.end(), [](double t) { return t > 0.0; });
  const bool all_right = std::all_of(turns.begin(), turns.end(), [](double t) { return t < 0.0; });
  return (all_left || all_right) ? QuadClass::convex : QuadClass::reflex;
}

int winding_number(std::span<const Point2> loop, Point2 query) {
  const std::size_t m = loop.size();
  for (std::size_t k = 0; k < m; ++k) {
    if (segment_distance(query, loop[k], loop[(k + 1) % m]) <= kBoundaryDistance) {
      throw Error(ErrorKind::OnBoundary, "winding_number: query point lies on an edge");
    }
  }
  int wn = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const Point2 a = loop[k];
    const Point2 b = loop[(k + 1) % m];
    const double side = cross(b - a, query - a);
    if (a.imag() <= query.imag()) {
      if (b.imag() > query.imag() && side > 0.0) ++wn;
    } else {
      if (b.imag() <= query.imag() && side < 0.0) --wn;
    }
  }
  return wn;
}

int winding_number(const PlanarPolygon& p, Point2 base, Point2 query) {
  auto v = vertices(p, base);
  v.pop_back();
  return winding_number(std::span<const Point2>(v), query);
}

}  // namespace stiefel
