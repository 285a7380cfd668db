#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "stiefel/error.hpp"
#include "stiefel/planar.hpp"
#include "stiefel/sampling.hpp"

using namespace stiefel;
using namespace std::complex_literals;

namespace {

const double kRoot = 1.0 / std::sqrt(2.0);

double max_edge_diff(const PlanarPolygon& a, const PlanarPolygon& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double max_diff(const RealVector& a, const RealVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

PlanarPolygon from_vertices(std::vector<Complex> v) {
  std::vector<Complex> e;
  for (std::size_t k = 0; k < v.size(); ++k) e.push_back(v[(k + 1) % v.size()] - v[k]);
  return PlanarPolygon::normalized(e);
}

std::vector<Complex> sorted_edges(const PlanarPolygon& p) {
  std::vector<Complex> e = p.edges();
  std::sort(e.begin(), e.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  return e;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("frame_to_polygon examples") {
  const auto p = frame_to_polygon({RealVector{1, 0, 0}, RealVector{0, 1, 0}});
  CHECK(p.edges() == std::vector<Complex>{1.0, -1.0, 0.0});

  const auto q = frame_to_polygon({RealVector{kRoot, kRoot, 0}, RealVector{kRoot, -kRoot, 0}});
  CHECK(std::abs(q[0] - 1i) <= 1e-15);
  CHECK(std::abs(q[1] + 1i) <= 1e-15);
  CHECK(std::abs(q[2]) == 0.0);
  CHECK(q.closure_defect() <= 1e-15);
  CHECK(std::abs(q.perimeter() - 2.0) <= 1e-15);
}

TEST_CASE("frame_to_polygon output is closed with perimeter 2") {
  SeededRng rng(21);
  for (std::size_t n : {3, 4, 5, 100, 1000}) {
    for (int k = 0; k < 20; ++k) {
      const auto f = sample_stiefel(n, rng);
      const auto p = frame_to_polygon(f);
      // Direct summation oracle.
      Complex sum{};
      double per = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const Complex z(f.x[i], f.y[i]);
        sum += z * z;
        per += std::norm(z);
      }
      CHECK(std::abs(sum) <= 1e-12);
      CHECK(std::abs(per - 2.0) <= 1e-12);
      CHECK(p.closure_defect() <= 1e-12);
      CHECK(std::abs(p.perimeter() - 2.0) <= 1e-12);
    }
  }
}

TEST_CASE("polygon_to_frame examples") {
  const PlanarPolygon digon({1.0, -1.0, 0.0});
  const auto f = polygon_to_frame(digon, std::vector<int>{1, 1, 1});
  CHECK(max_diff(f.x, RealVector{1, 0, 0}) == 0.0);
  CHECK(max_diff(f.y, RealVector{0, 1, 0}) == 0.0);

  const PlanarPolygon p({1i, -1i, 0.0});
  const auto g = polygon_to_frame(p, std::vector<int>{1, -1, 1});
  CHECK(max_diff(g.x, RealVector{kRoot, -kRoot, 0}) <= 1e-15);
  CHECK(max_diff(g.y, RealVector{kRoot, kRoot, 0}) <= 1e-15);
  CHECK(max_edge_diff(frame_to_polygon(g), p) <= 1e-15);
}

TEST_CASE("polygon_to_frame rejects open or unnormalized polygons") {
  CHECK(kind_of([] { polygon_to_frame(PlanarPolygon({1.0, 1i, -1.0})); }) == ErrorKind::NotClosed);
  CHECK(kind_of([] { polygon_to_frame(PlanarPolygon({1.0, -1.0, 1i, -1i})); }) ==
        ErrorKind::NotNormalized);
}

TEST_CASE("principal square root branch") {
  // arg(e) in (-pi, pi], so arg(z) in (-pi/2, pi/2].
  CHECK(std::abs(principal_sqrt(-1.0) - 1i) <= 1e-16);
  CHECK(std::abs(principal_sqrt(Complex(-1.0, -0.0)) - 1i) <= 1e-16);
  CHECK(std::abs(principal_sqrt(-4i) - std::sqrt(2.0) * Complex(1, -1)) <= 1e-15);
  CHECK(principal_sqrt(0.0) == 0.0);
}

TEST_CASE("regular pentagon lifts and projects back") {
  std::vector<Complex> e;
  for (int k = 0; k < 5; ++k) e.push_back(0.4 * std::polar(1.0, 2.0 * std::numbers::pi * k / 5));
  const PlanarPolygon p = PlanarPolygon::normalized(e);
  const auto back = frame_to_polygon(polygon_to_frame(p));
  CHECK(max_edge_diff(back, p) <= 1e-12);
}

TEST_CASE("round trip through lift signs") {
  SeededRng rng(22);
  for (std::size_t n : {3, 4, 5, 50, 1000}) {
    for (int k = 0; k < 200; ++k) {
      const auto f = sample_stiefel(n, rng);
      const auto p = frame_to_polygon(f);
      const auto signs = lift_signs(f);
      const auto g = polygon_to_frame(p, signs);
      CHECK(max_edge_diff(frame_to_polygon(g), p) <= 1e-10);
      // The recovered signs reproduce the frame itself.
      CHECK(max_diff(g.x, f.x) <= 1e-12);
      CHECK(max_diff(g.y, f.y) <= 1e-12);
      CHECK(frame_defects(g).worst() <= 1e-10);
    }
  }
}

TEST_CASE("vertices examples") {
  const auto v = vertices(PlanarPolygon({1.0, -1.0, 0.0}));
  CHECK(v == std::vector<Complex>{0.0, 1.0, 0.0, 0.0});
  const auto w = vertices(PlanarPolygon({1i, -1i, 0.0}), Complex(2, 2));
  CHECK(w == std::vector<Complex>{Complex(2, 2), Complex(2, 3), Complex(2, 2), Complex(2, 2)});

  SeededRng rng(23);
  const auto p = sample_polygon(500, rng);
  const auto r = vertices(p, 1.0);
  CHECK(r.size() == 501);
  CHECK(std::abs(r.back() - r.front()) <= 1e-12);
}

TEST_CASE("cyclic_relabel") {
  const StiefelFrame f{RealVector{kRoot, kRoot, 0}, RealVector{kRoot, -kRoot, 0}};
  CHECK(cyclic_relabel(f, 0) == f);
  CHECK(cyclic_relabel(f, 3) == f);
  const auto p = frame_to_polygon(cyclic_relabel(f, 1));
  CHECK(std::abs(p[0] + 1i) <= 1e-15);
  CHECK(std::abs(p[1]) == 0.0);
  CHECK(std::abs(p[2] - 1i) <= 1e-15);

  SeededRng rng(24);
  for (int k = 0; k < 50; ++k) {
    const auto g = sample_stiefel(9, rng);
    const std::ptrdiff_t a = k % 9;
    const std::ptrdiff_t b = (k * 5) % 9;
    CHECK(cyclic_relabel(cyclic_relabel(g, a), b) == cyclic_relabel(g, (a + b) % 9));
  }
}

TEST_CASE("convexify on sorted and unsorted quadrilaterals") {
  // Already convex with increasing angles.
  const PlanarPolygon square({0.5, 0.5i, -0.5, -0.5i});
  CHECK(convexifying_permutation(square) == std::vector<std::size_t>{0, 1, 2, 3});

  // Angles pi, 0, pi/2, -pi/2 sort to 0, pi/2, pi, 3pi/2.
  const PlanarPolygon q({-0.5, 0.5, 0.5i, -0.5i});
  CHECK(convexifying_permutation(q) == std::vector<std::size_t>{1, 2, 0, 3});
  const auto c = convexify(q);
  CHECK(is_convex(c));
  CHECK(c.edges() == std::vector<Complex>{0.5, 0.5i, -0.5, -0.5i});

  CHECK(kind_of([] { convexify(PlanarPolygon({1.0, -1.0, 0.0})); }) == ErrorKind::ZeroEdge);
}

TEST_CASE("convexify random frames") {
  SeededRng rng(25);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 4 + static_cast<std::size_t>(k % 47);
    const auto f = sample_stiefel(n, rng);
    const auto g = convexify(f);
    // Same coordinates, permuted: norms and inner product unchanged exactly
    // up to summation order.
    CHECK(frame_defects(g).worst() <= 1e-12);
    const auto p = frame_to_polygon(f);
    const auto c = frame_to_polygon(g);
    CHECK(sorted_edges(p) == sorted_edges(c));
    // Consecutive cross products nonnegative.
    for (std::size_t i = 0; i < n; ++i) {
      const Complex a = c[i];
      const Complex b = c[(i + 1) % n];
      CHECK(a.real() * b.imag() - a.imag() * b.real() >= -1e-12);
    }
    CHECK(is_convex(c));
    CHECK(convexify(c) == c);
  }
}

TEST_CASE("classify_triangle examples") {
  std::vector<Complex> eq;
  for (int k = 0; k < 3; ++k) eq.push_back(std::polar(2.0 / 3.0, 2.0 * std::numbers::pi * k / 3));
  CHECK(classify_triangle(PlanarPolygon::normalized(eq)) == TriangleClass::acute);
  CHECK(classify_triangle(PlanarPolygon::normalized({1.0, Complex(-1, 1), -1i})) ==
        TriangleClass::right);
  // Vertices 0, 1, 0.1i: the right angle sits at the origin.
  CHECK(classify_triangle(PlanarPolygon::normalized({1.0, Complex(-1, 0.1), -0.1i})) ==
        TriangleClass::right);
  // Vertices 0, 1, -0.1 + 0.1i: a sliver with a 135 degree angle.
  const auto sliver = PlanarPolygon::normalized({1.0, Complex(-1.1, 0.1), Complex(0.1, -0.1)});
  CHECK(oracle::triangle_is_obtuse(sliver.edges()));
  CHECK(classify_triangle(sliver) == TriangleClass::obtuse);
  CHECK(kind_of([] { classify_triangle(PlanarPolygon::normalized({1.0, 1.0, -2.0})); }) ==
        ErrorKind::Degenerate);
}

TEST_CASE("classify_triangle agrees with the side length test") {
  SeededRng rng(26);
  for (int k = 0; k < 20000; ++k) {
    const auto p = sample_polygon(3, rng);
    const bool obtuse = classify_triangle(p) == TriangleClass::obtuse;
    CHECK(obtuse == oracle::triangle_is_obtuse(p.edges()));
  }
}

TEST_CASE("classify_quadrilateral examples") {
  CHECK(classify_quadrilateral(PlanarPolygon({0.5, 0.5i, -0.5, -0.5i})) == QuadClass::convex);
  const auto dart = from_vertices({0.0, 1.0, Complex(0.5, 0.2), Complex(0.5, 1.0)});
  CHECK(oracle::quad_class(dart.edges()) == 1);
  CHECK(classify_quadrilateral(dart) == QuadClass::reflex);
  const auto bowtie = from_vertices({0.0, 1.0, 1i, Complex(1, 1)});
  CHECK(oracle::quad_class(bowtie.edges()) == 2);
  CHECK(classify_quadrilateral(bowtie) == QuadClass::crossed);
  const auto flat = from_vertices({0.0, 1.0, 2.0, 1i});
  CHECK(kind_of([&] { classify_quadrilateral(flat); }) == ErrorKind::Degenerate);
}

TEST_CASE("classify_quadrilateral agrees with the intersection oracle") {
  SeededRng rng(27);
  for (int k = 0; k < 100000; ++k) {
    const auto p = sample_polygon(4, rng);
    const QuadClass c = classify_quadrilateral(p);
    CHECK(static_cast<int>(c) == oracle::quad_class(p.edges()));
  }
}

TEST_CASE("winding_number examples") {
  const PlanarPolygon square({0.5, 0.5i, -0.5, -0.5i});
  CHECK(winding_number(square, 0.0, Complex(0.25, 0.25)) == 1);
  CHECK(winding_number(square, 0.0, Complex(0.75, 0.25)) == 0);
  CHECK(kind_of([&] { winding_number(square, 0.0, Complex(0.25, 0.0)); }) ==
        ErrorKind::OnBoundary);

  const auto bowtie = from_vertices({0.0, 1.0, 1i, Complex(1, 1)});
  const auto loop = vertices(bowtie);
  const std::vector<Complex> ring(loop.begin(), loop.end() - 1);
  // Side 1 / (1 + sqrt 2) after normalization; the lobes meet at half of it.
  const double side = 1.0 / (1.0 + std::sqrt(2.0));
  const Complex lower(0.5 * side, 0.15 * side);
  const Complex upper(0.5 * side, 0.85 * side);
  CHECK(winding_number(bowtie, 0.0, lower) == oracle::winding_by_angles(ring, lower));
  CHECK(winding_number(bowtie, 0.0, upper) == oracle::winding_by_angles(ring, upper));
  CHECK(std::abs(winding_number(bowtie, 0.0, lower)) == 1);
  CHECK(winding_number(bowtie, 0.0, lower) == -winding_number(bowtie, 0.0, upper));
}

TEST_CASE("winding_number agrees with angle summation on random polygons") {
  SeededRng rng(28);
  for (int k = 0; k < 500; ++k) {
    const auto p = sample_polygon(3 + k % 20, rng);
    auto v = vertices(p);
    v.pop_back();
    for (int q = 0; q < 10; ++q) {
      const Complex query(rng.uniform() - 0.5, rng.uniform() - 0.5);
      CHECK(winding_number(std::span<const Complex>(v), query) ==
            oracle::winding_by_angles(v, query));
    }
  }
}
