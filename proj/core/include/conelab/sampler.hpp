#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "conelab/cone.hpp"
#include "conelab/measure.hpp"

namespace conelab {

/// Default seed for every randomized experiment.
inline constexpr std::uint64_t kDefaultSeed = 20240001;

/// splitmix64 mix of (seed, index): seed of trial `index` in a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Deterministic generator. Uses only raw 64-bit draws plus rejection, so instances do
/// not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Uniform double in [0, 1).
  double uniform_unit();
  /// Random rational in [lo, hi] with denominator <= denominator_bound.
  Rational uniform_rational(const Rational& lo, const Rational& hi, unsigned denominator_bound);
  /// Non-zero integer weight in [-bound, bound].
  Rational nonzero_weight(int bound);

 private:
  std::mt19937_64 engine_;
};

/// Instance generator settings. Coordinates are rationals in [-coordinate_bound,
/// coordinate_bound] with bounded denominators; weights are non-zero integers.
struct SamplerConfig {
  std::size_t dim = 1;
  Cone cone = Cone::ray();
  unsigned min_atoms = 1;
  unsigned max_atoms = 30;
  unsigned denominator_bound = 10;
  Rational coordinate_bound{5};
  int weight_bound = 5;
  unsigned trials = 1000;
  std::uint64_t seed = kDefaultSeed;

  /// supp a contained in C(h).
  std::optional<Rational> support_shift;
  /// supp_C a equals r: an atom is placed at (r, 0, ..., 0) and nothing lies above it.
  std::optional<Rational> exact_support;
  /// At least one atom outside C(0).
  bool nonzero_outside_cone = false;
  /// supp_C a is attained only on the x1 axis: an axis atom is placed strictly above
  /// every other atom. Ignores support_shift.
  bool aligned_contact = false;

  void validate() const;
};

ExactMeasure sample_measure(const SamplerConfig& cfg, Rng& rng);

}  // namespace conelab
