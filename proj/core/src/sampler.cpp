#include "conelab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "conelab/support.hpp"

namespace conelab {
namespace {

std::vector<Rational> axis_point(std::size_t dim, const Rational& x1) {
  std::vector<Rational> x(dim, Rational(0));
  x[0] = x1;
  return x;
}

// Smallest integer strictly above v.
Rational integer_above(const ConeSupportValue& v) {
  Rational c(static_cast<long>(std::floor(v.approx())));
  while (ConeSupportValue(c) <= v) c += 1;
  return c;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw PreconditionError("uniform_int: empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw = next();
  while (draw >= limit) draw = next();
  return lo + static_cast<std::int64_t>(draw % range);
}

double Rng::uniform_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Rational Rng::uniform_rational(const Rational& lo, const Rational& hi, unsigned denominator_bound) {
  if (hi < lo) throw PreconditionError("uniform_rational: empty range");
  for (;;) {
    const auto den = uniform_int(1, std::max(1U, denominator_bound));
    Rational scaled_lo = lo * den;
    Rational scaled_hi = hi * den;
    Integer nlo;
    Integer nhi;
    mpz_cdiv_q(nlo.get_mpz_t(), scaled_lo.get_num_mpz_t(), scaled_lo.get_den_mpz_t());
    mpz_fdiv_q(nhi.get_mpz_t(), scaled_hi.get_num_mpz_t(), scaled_hi.get_den_mpz_t());
    if (nhi < nlo) continue;  // no multiple of 1/den inside [lo, hi]
    const auto num = uniform_int(nlo.get_si(), nhi.get_si());
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
}

Rational Rng::nonzero_weight(int bound) {
  const auto w = uniform_int(1, 2 * std::max(1, bound));
  return Rational(w <= bound ? w - bound - 1 : w - bound);
}

void SamplerConfig::validate() const {
  if (dim != cone.dim()) throw PreconditionError("sampler dim differs from cone dim");
  if (min_atoms == 0 || max_atoms < min_atoms) throw PreconditionError("sampler needs 1 <= min_atoms <= max_atoms");
  if (denominator_bound == 0 || coordinate_bound <= 0 || weight_bound <= 0) {
    throw PreconditionError("sampler bounds must be positive");
  }
  if (nonzero_outside_cone && support_shift && *support_shift <= 0) {
    throw PreconditionError("no atom can lie outside C(0) inside C(h) with h <= 0");
  }
  if (nonzero_outside_cone && exact_support && *exact_support <= 0) {
    throw PreconditionError("supp_C <= 0 contradicts an atom outside C(0)");
  }
}

ExactMeasure sample_measure(const SamplerConfig& cfg, Rng& rng) {
  cfg.validate();
  const auto count = static_cast<unsigned>(rng.uniform_int(cfg.min_atoms, cfg.max_atoms));
  const Rational lo = -cfg.coordinate_bound;
  const Rational& hi = cfg.coordinate_bound;

  const auto admissible = [&](const std::vector<Rational>& x) {
    if (cfg.support_shift && !cone_member(cfg.cone, *cfg.support_shift, x)) return false;
    if (cfg.exact_support && !cone_member(cfg.cone, *cfg.exact_support, x)) return false;
    return true;
  };

  std::set<std::vector<Rational>> locations;
  for (unsigned attempt = 0; locations.size() < count && attempt < 64 * count; ++attempt) {
    std::vector<Rational> x(cfg.dim);
    for (auto& c : x) c = rng.uniform_rational(lo, hi, cfg.denominator_bound);
    if (admissible(x)) locations.insert(std::move(x));
  }

  if (cfg.exact_support) locations.insert(axis_point(cfg.dim, *cfg.exact_support));

  if (cfg.nonzero_outside_cone) {
    const bool outside = std::any_of(locations.begin(), locations.end(), [&](const auto& x) {
      return !cone_member(cfg.cone, Rational(0), x);
    });
    if (!outside) {
      const Rational top = cfg.support_shift ? std::min(*cfg.support_shift, hi) : hi;
      const Rational step(1, cfg.denominator_bound);
      const Rational t = top <= step ? top : rng.uniform_rational(step, top, cfg.denominator_bound);
      locations.insert(axis_point(cfg.dim, t));
    }
  }

  if (cfg.aligned_contact && !locations.empty()) {
    ConeSupportValue top = t_functional(cfg.cone, *locations.begin());
    for (const auto& x : locations) top = std::max(top, t_functional(cfg.cone, x));
    locations.insert(axis_point(cfg.dim, integer_above(top)));
  }

  std::vector<Atom<Rational>> atoms;
  atoms.reserve(locations.size());
  for (const auto& x : locations) atoms.push_back({x, rng.nonzero_weight(cfg.weight_bound)});
  return ExactMeasure(cfg.dim, std::move(atoms));
}

}  // namespace conelab
