#include "stiefel/sampling.hpp"

#include <cmath>

#include "stiefel/error.hpp"

namespace stiefel {

namespace {

constexpr int kMaxAttempts = 8;

template <typename Draw>
auto with_retries(Draw&& draw, const char* who) {
  for (int attempt = 1;; ++attempt) {
    try {
      return draw();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegeneratePair && e.kind() != ErrorKind::ZeroEdge) throw;
      if (attempt == kMaxAttempts) {
        throw Error(ErrorKind::SamplingFailure, std::string(who) + ": " + e.what());
      }
    }
  }
}

void require_size(std::size_t n) {
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "sampling needs n >= 3");
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SeededRng SeededRng::for_sample(std::uint64_t seed, std::uint64_t index) {
  return SeededRng(splitmix64(splitmix64(seed) ^ index));
}

double SeededRng::uniform() {
  // (k + 0.5) / 2^53 never hits 0 or 1.
  const std::uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double SeededRng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  for (;;) {
    const double a = 2.0 * uniform() - 1.0;
    const double b = 2.0 * uniform() - 1.0;
    const double s = a * a + b * b;
    if (s >= 1.0 || s == 0.0) continue;
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = b * f;
    return a * f;
  }
}

std::pair<RealVector, RealVector> gaussian_pair(std::size_t n, SeededRng& rng) {
  RealVector u(n);
  RealVector v(n);
  for (auto& e : u) e = rng.normal();
  for (auto& e : v) e = rng.normal();
  return {std::move(u), std::move(v)};
}

std::pair<ComplexVector, ComplexVector> complex_gaussian_pair(std::size_t n, SeededRng& rng) {
  ComplexVector u(n);
  ComplexVector v(n);
  for (auto& e : u) {
    const double re = rng.normal();
    e = {re, rng.normal()};
  }
  for (auto& e : v) {
    const double re = rng.normal();
    e = {re, rng.normal()};
  }
  return {std::move(u), std::move(v)};
}

StiefelFrame sample_stiefel(std::size_t n, SeededRng& rng) {
  require_size(n);
  return with_retries(
      [&] {
        const auto [u, v] = gaussian_pair(n, rng);
        return gram_schmidt_pair(u, v);
      },
      "sample_stiefel");
}

StiefelFrame sample_stiefel_qr(std::size_t n, SeededRng& rng) {
  require_size(n);
  return with_retries(
      [&] {
        const auto [u, v] = gaussian_pair(n, rng);
        return qr_sign_corrected(u, v).q;
      },
      "sample_stiefel_qr");
}

StiefelFrame sample_stiefel_qr_uncorrected(std::size_t n, SeededRng& rng) {
  require_size(n);
  const auto [u, v] = gaussian_pair(n, rng);
  return qr_householder(u, v).q;
}

HermitianFrame sample_stiefel_complex(std::size_t n, SeededRng& rng) {
  require_size(n);
  return with_retries(
      [&] {
        const auto [u, v] = complex_gaussian_pair(n, rng);
        return gram_schmidt_pair(u, v);
      },
      "sample_stiefel_complex");
}

PlanarPolygon sample_polygon(std::size_t n, SeededRng& rng) {
  return frame_to_polygon(sample_stiefel(n, rng));
}

SpacePolygon sample_space_polygon(std::size_t n, SeededRng& rng) {
  return frame_to_space_polygon(sample_stiefel_complex(n, rng));
}

StiefelFrame sample_convex_frame(std::size_t n, SeededRng& rng) {
  return with_retries([&] { return convexify(sample_stiefel(n, rng)); },
                      "sample_convex_frame");
}

PlanarPolygon sample_convex_polygon(std::size_t n, SeededRng& rng) {
  return frame_to_polygon(sample_convex_frame(n, rng));
}

Quaternion random_rotation(SeededRng& rng) {
  for (;;) {
    Quaternion q{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    const double len = q.norm();
    if (len > 1e-6) return (1.0 / len) * q;
  }
}

RotatedPolygon move_off_section_singularity(const SpacePolygon& p, SeededRng& rng,
                                            double clearance) {
  if (section_clearance(p) >= clearance) return {p, Quaternion::one()};
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Quaternion r = random_rotation(rng);
    SpacePolygon rotated = rotate(p, r);
    if (section_clearance(rotated) >= clearance) return {std::move(rotated), r};
  }
  throw Error(ErrorKind::SamplingFailure,
              "move_off_section_singularity: no clear rotation found");
}

}  // namespace stiefel
