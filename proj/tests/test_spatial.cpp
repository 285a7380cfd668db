#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "stiefel/error.hpp"
#include "stiefel/sampling.hpp"
#include "stiefel/spatial.hpp"

using namespace stiefel;
using namespace std::complex_literals;

namespace {

std::array<double, 4> arr(const Quaternion& q) { return {q.w, q.x, q.y, q.z}; }

Quaternion oracle_hopf(const Quaternion& q) {
  const auto r = oracle::quat_mul(oracle::quat_mul(arr(q.conj()), {0, 1, 0, 0}), arr(q));
  return {r[0], r[1], r[2], r[3]};
}

double qdist(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

double vdist(const Vec3& a, const Vec3& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

double max_edge_diff(const SpacePolygon& a, const SpacePolygon& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, vdist(a[k], b[k]));
  return m;
}

double max_frame_diff(const HermitianFrame& a, const HermitianFrame& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max({m, std::abs(a.x[i] - b.x[i]), std::abs(a.y[i] - b.y[i])});
  }
  return m;
}

Quaternion random_quaternion(SeededRng& rng) {
  return {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
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

TEST_CASE("quaternion multiplication table") {
  const Quaternion i = Quaternion::unit_i();
  const Quaternion j = Quaternion::unit_j();
  const Quaternion k = Quaternion::unit_k();
  const Quaternion minus_one{-1, 0, 0, 0};
  CHECK(i * i == minus_one);
  CHECK(j * j == minus_one);
  CHECK(k * k == minus_one);
  CHECK(i * j * k == minus_one);
  CHECK(i * j == k);
  CHECK(j * i == -1.0 * k);

  SeededRng rng(31);
  for (int n = 0; n < 1000; ++n) {
    const Quaternion a = random_quaternion(rng);
    const Quaternion b = random_quaternion(rng);
    const auto r = oracle::quat_mul(arr(a), arr(b));
    CHECK(qdist(a * b, {r[0], r[1], r[2], r[3]}) <= 1e-14 * a.norm() * b.norm());
  }
}

TEST_CASE("hopf_map examples") {
  CHECK(qdist(hopf_map(Quaternion::one()), Quaternion::unit_i()) == 0.0);
  CHECK(qdist(hopf_map(Quaternion::unit_j()), oracle_hopf(Quaternion::unit_j())) == 0.0);
  CHECK(qdist(hopf_map(Quaternion::unit_j()), {0, -1, 0, 0}) == 0.0);
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(qdist(hopf_map({h, h, 0, 0}), Quaternion::unit_i()) <= 1e-15);
}

TEST_CASE("hopf_map is pure, squares the norm and is fiber invariant") {
  SeededRng rng(32);
  for (int n = 0; n < 10000; ++n) {
    const Quaternion q = random_quaternion(rng);
    const Quaternion e = hopf_map(q);
    const double scale = q.norm() * q.norm();
    CHECK(std::abs(e.w) <= 1e-14 * std::max(1.0, scale));
    CHECK(std::abs(e.norm() - scale) <= 1e-13 * scale);
    CHECK(qdist(e, oracle_hopf(q)) <= 1e-13 * scale);
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    const Quaternion phase{std::cos(theta), std::sin(theta), 0, 0};
    CHECK(qdist(hopf_map(phase * q), e) <= 1e-12 * std::max(1.0, scale));
  }
}

TEST_CASE("hopf_section examples") {
  CHECK(qdist(hopf_section({1, 0, 0}), Quaternion::unit_i()) <= 1e-15);
  const double h = 1.0 / std::sqrt(2.0);
  const Quaternion q = hopf_section({0, 1, 0});
  CHECK(qdist(q, {0, h, h, 0}) <= 1e-15);
  CHECK(qdist(oracle_hopf(q), Quaternion::unit_j()) <= 1e-15);
  CHECK(kind_of([] { hopf_section({-1, 0, 0}); }) == ErrorKind::SectionSingular);
  CHECK(kind_of([] { hopf_section({-1, 1e-12, 0}); }) == ErrorKind::SectionSingular);
  CHECK(kind_of([] { hopf_section({0, 0, 0}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("hopf_section round trip") {
  SeededRng rng(33);
  int tested = 0;
  while (tested < 10000) {
    const Vec3 e{rng.normal(), rng.normal(), rng.normal()};
    const double len = norm(e);
    // Stay away from the -i direction.
    if (std::hypot(e[0] / len + 1.0, e[1] / len, e[2] / len) < 1e-3) continue;
    ++tested;
    const Quaternion q = hopf_section(e);
    CHECK(std::abs(q.norm() * q.norm() - len) <= 1e-13 * len);
    CHECK(vdist(imaginary_part(oracle_hopf(q)), e) <= 1e-12 * std::max(1.0, len));
  }
}

TEST_CASE("frame_to_space_polygon examples") {
  const HermitianFrame f{ComplexVector{1.0, 0.0, 0.0}, ComplexVector{0.0, 1.0, 0.0}};
  const auto p = frame_to_space_polygon(f);
  CHECK(vdist(p[0], {1, 0, 0}) == 0.0);
  CHECK(vdist(p[1], {-1, 0, 0}) == 0.0);
  CHECK(vdist(p[2], {0, 0, 0}) == 0.0);

  const double h = 1.0 / std::sqrt(2.0);
  const HermitianFrame g{ComplexVector{h, h, 0.0}, ComplexVector{0.0, 0.0, 1.0}};
  const auto s = frame_to_space_polygon(g);
  CHECK(vdist(s[0], {0.5, 0, 0}) <= 1e-15);
  CHECK(vdist(s[1], {0.5, 0, 0}) <= 1e-15);
  CHECK(vdist(s[2], {-1, 0, 0}) <= 1e-15);
  CHECK(s.closure_defect() <= 1e-15);
  CHECK(std::abs(s.perimeter() - 2.0) <= 1e-15);
}

TEST_CASE("frame_to_space_polygon matches the quaternion formula") {
  SeededRng rng(34);
  for (std::size_t n : {3, 10, 200, 1000}) {
    const auto f = sample_stiefel_complex(n, rng);
    const auto p = frame_to_space_polygon(f);
    CHECK(p.closure_defect() <= 1e-10);
    CHECK(std::abs(p.perimeter() - 2.0) <= 1e-10);
    for (std::size_t l = 0; l < n; ++l) {
      const Quaternion q = Quaternion::from_complex_pair(f.x[l], f.y[l]);
      const Quaternion e = oracle_hopf(q);
      CHECK(std::abs(e.w) <= 1e-15);
      CHECK(vdist(imaginary_part(e), p[l]) <= 1e-15);
    }
  }
}

TEST_CASE("space_polygon_to_frame round trips") {
  const SpacePolygon tri = regular_space_polygon(3);
  const auto f = space_polygon_to_frame(tri);
  CHECK(frame_defects(f).worst() <= 1e-12);
  CHECK(max_edge_diff(frame_to_space_polygon(f), tri) <= 1e-12);

  SeededRng rng(35);
  for (std::size_t n : {3, 10, 200, 1000}) {
    for (int k = 0; k < 20; ++k) {
      const auto p = sample_space_polygon(n, rng);
      const auto g = space_polygon_to_frame(p);
      CHECK(frame_defects(g).worst() <= 1e-10);
      CHECK(max_edge_diff(frame_to_space_polygon(g), p) <= 1e-10);
    }
  }
}

TEST_CASE("framing angles are taken mod 2 pi and pi negates the frame") {
  SeededRng rng(36);
  const auto p = sample_space_polygon(12, rng);
  const auto zero = space_polygon_to_frame(p, std::vector<double>(12, 0.0));
  const auto full = space_polygon_to_frame(p, std::vector<double>(12, 2.0 * std::numbers::pi));
  CHECK(max_frame_diff(zero, full) <= 1e-12);
  const auto half = space_polygon_to_frame(p, std::vector<double>(12, std::numbers::pi));
  const HermitianFrame negated{-zero.x, -zero.y};
  CHECK(max_frame_diff(half, negated) <= 1e-12);
  CHECK(max_edge_diff(frame_to_space_polygon(half), p) <= 1e-12);
}

TEST_CASE("space_polygon_to_frame rejects bad input") {
  CHECK(kind_of([] { space_polygon_to_frame(SpacePolygon({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})); }) ==
        ErrorKind::NotClosed);
  // An edge along -i.
  const SpacePolygon singular({{0.5, 0, 0}, {-1, 0, 0}, {0.5, 0, 0}});
  CHECK(kind_of([&] { space_polygon_to_frame(singular); }) == ErrorKind::SectionSingular);

  SeededRng rng(37);
  const auto moved = move_off_section_singularity(singular, rng);
  CHECK(section_clearance(moved.polygon) >= 1e-4);
  const auto f = space_polygon_to_frame(moved.polygon);
  CHECK(max_edge_diff(frame_to_space_polygon(f), moved.polygon) <= 1e-12);
  CHECK(max_edge_diff(rotate(singular, moved.rotation), moved.polygon) == 0.0);
}

TEST_CASE("apply_framing") {
  SeededRng rng(38);
  const auto f = sample_stiefel_complex(200, rng);
  const auto p = frame_to_space_polygon(f);
  CHECK(max_frame_diff(apply_framing(f, std::vector<double>(200, 0.0)), f) == 0.0);

  const auto neg = apply_framing(f, std::vector<double>(200, std::numbers::pi));
  CHECK(max_frame_diff(neg, HermitianFrame{-f.x, -f.y}) <= 1e-15);
  CHECK(max_edge_diff(frame_to_space_polygon(neg), p) <= 1e-12);

  const auto angles = twisted_framing(200, 3);
  CHECK(angles.size() == 200);
  CHECK(std::abs(angles[1] - 2.0 * std::numbers::pi * 3.0 / 200.0) <= 1e-15);
  const auto twisted = apply_framing(f, angles);
  CHECK(max_edge_diff(frame_to_space_polygon(twisted), p) <= 1e-12);
  CHECK(max_frame_diff(twisted, f) > 0.1);
  CHECK(frame_defects(twisted).worst() <= 1e-12);

  // Arbitrary per-entry angles leave the Hermitian product unchanged.
  std::vector<double> random_angles(200);
  for (auto& a : random_angles) a = 100.0 * rng.normal();
  const auto r = apply_framing(f, random_angles);
  CHECK(std::abs(inner(r.x, r.y) - inner(f.x, f.y)) <= 1e-14);

  // A non-orthonormal input is reported.
  HermitianFrame bad = f;
  bad.y = bad.x;
  CHECK(kind_of([&] { apply_framing(bad, angles); }) == ErrorKind::FrameInvalid);
}

TEST_CASE("torus knot polygon and vertices") {
  const auto p = torus_knot_polygon(2, 3, 1000);
  CHECK(p.size() == 1000);
  CHECK(p.closure_defect() <= 1e-10);
  CHECK(std::abs(p.perimeter() - 2.0) <= 1e-10);
  const auto v = vertices(p);
  CHECK(v.size() == 1001);
  CHECK(norm(v.back()) <= 1e-9);
}

TEST_CASE("rotate preserves edge lengths") {
  SeededRng rng(39);
  const auto p = sample_space_polygon(20, rng);
  const Quaternion r = random_rotation(rng);
  const auto q = rotate(p, r);
  for (std::size_t l = 0; l < p.size(); ++l) {
    CHECK(std::abs(norm(q[l]) - norm(p[l])) <= 1e-15);
  }
  CHECK(q.closure_defect() <= 1e-14);
}
