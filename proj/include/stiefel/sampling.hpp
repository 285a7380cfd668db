#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>

#include "stiefel/linalg.hpp"
#include "stiefel/planar.hpp"
#include "stiefel/spatial.hpp"

namespace stiefel {

/// Seeded pseudo-random stream.
///
/// Engine: std::mt19937_64 (its output sequence is fixed by the standard).
/// Uniforms: the top 53 bits of one engine word, mapped to (0, 1).
/// Normals: Marsaglia's polar method on pairs of uniforms in (-1, 1); the
/// second value of each accepted pair is cached and returned next.
/// Identical seeds give identical streams on every conforming platform that
/// rounds std::log and std::sqrt correctly.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  /// Independent stream for sample `index` of an ensemble seeded with `seed`
  /// (splitmix64 of the pair). Sharded runners use this so results do not
  /// depend on how samples are split across workers.
  static SeededRng for_sample(std::uint64_t seed, std::uint64_t index);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Two standard Gaussian n-vectors (u first, then v) from the stream.
std::pair<RealVector, RealVector> gaussian_pair(std::size_t n, SeededRng& rng);
std::pair<ComplexVector, ComplexVector> complex_gaussian_pair(std::size_t n, SeededRng& rng);

/// Haar-distributed point of St_2(R^n): Gram-Schmidt of a Gaussian pair.
/// Retries up to 8 draws on DegeneratePair, then throws SamplingFailure.
StiefelFrame sample_stiefel(std::size_t n, SeededRng& rng);

/// Same draws as sample_stiefel, orthonormalized by sign-corrected QR.
StiefelFrame sample_stiefel_qr(std::size_t n, SeededRng& rng);

/// Same draws, raw Householder Q without the diag(R) > 0 fix.
StiefelFrame sample_stiefel_qr_uncorrected(std::size_t n, SeededRng& rng);

/// Haar point of St_2(C^n); real and imaginary parts are independent
/// standard normals (the scale drops out after normalization).
HermitianFrame sample_stiefel_complex(std::size_t n, SeededRng& rng);

PlanarPolygon sample_polygon(std::size_t n, SeededRng& rng);
SpacePolygon sample_space_polygon(std::size_t n, SeededRng& rng);

/// Random polygon with its edges sorted by direction. Resamples (up to 8
/// times) if a zero edge leaves a direction undefined.
PlanarPolygon sample_convex_polygon(std::size_t n, SeededRng& rng);
StiefelFrame sample_convex_frame(std::size_t n, SeededRng& rng);

/// Uniformly random rotation as a unit quaternion.
Quaternion random_rotation(SeededRng& rng);

struct RotatedPolygon {
  SpacePolygon polygon;
  Quaternion rotation;  // polygon == rotate(original, rotation)
};

/// Rotates p by random rotations until every edge direction is at least
/// `clearance` away from -i, so hopf_section is well conditioned. The
/// rotation is returned so callers can undo it.
RotatedPolygon move_off_section_singularity(const SpacePolygon& p, SeededRng& rng,
                                            double clearance = 1e-4);

}  // namespace stiefel
