#pragma once

#include <cstdint>
#include <vector>

#include "conelab/cone.hpp"
#include "conelab/measure.hpp"
#include "conelab/radical.hpp"
#include "conelab/report.hpp"
#include "conelab/sampler.hpp"

namespace conelab {

using Direction = std::vector<Rational>;

/// Convex-hull additivity of supports, probed by support functions.
///
/// For every direction u the inequality h_{a*b}(u) <= h_a(u) + h_b(u) is checked, and so is
/// equality. When both faces in direction u are single atoms x, y, the atom of a*b at x+y
/// must carry weight a(x) b(y). On a tie the faces are refined lexicographically along a
/// rational basis of the orthogonal complement of u (both orientations of the first basis
/// vector), and the same vertex identity is asserted for the refined maximizers.
CheckReport check_hull_additivity(const ExactMeasure& a, const ExactMeasure& b, const std::vector<Direction>& directions);

/// supp_C(a*b) <= supp_C a + supp_C b. NotApplicable when a*b = 0.
CheckReport check_suppc_subadditivity(const ExactMeasure& a, const ExactMeasure& b, const Cone& cone);

/// supp_C(a*b) = supp_C a + supp_C b; computed["gap"] = supp_C a + supp_C b - supp_C(a*b).
CheckReport check_suppc_additivity(const ExactMeasure& a, const ExactMeasure& b, const Cone& cone);

struct AdditivityWitness {
  std::int64_t trial;  ///< -1 for the built-in canonical probe
  ExactMeasure a;
  ExactMeasure b;
  ConeSupportValue k;
  ConeSupportValue l;
  ConeSupportValue product;  ///< supp_C(a*b)
  RadicalSum gap;
};

struct AdditivitySearch {
  CheckReport report{Claim::Thm2};
  /// Sorted by total atom count, then trial index.
  std::vector<AdditivityWitness> witnesses;
};

/// Runs check_suppc_additivity on cfg.trials random pairs (every tenth trial uses
/// single-atom measures) plus, for dim >= 2 and an unconstrained sampler, the canonical
/// probe a = delta(e1+e2), b = delta(e1-e2).
AdditivitySearch falsify_theorem2(const Cone& cone, const SamplerConfig& cfg);

/// Hypotheses: supp a, supp b in C(h) with h > 0; b*a != 0; supp_C(b*a) <= 0;
/// supp_C a = -p with p >= 0. Conclusion: supp_C b <= p.
CheckReport verify_lemma1_instance(const ExactMeasure& a, const ExactMeasure& b, const Cone& cone, const Rational& h);

/// Hypotheses: supp_C a = supp_C b = r; a and b non-zero outside C; a^{*k} = b^{*k}
/// outside C for k = 1..k_max. Conclusion: supp_C of the mixed power sum of order k is
/// k*r for every k <= k_max. Throws PreconditionError if r <= 0 or k_max == 0.
CheckReport verify_lemma2_instance(const ExactMeasure& a, const ExactMeasure& b, const Cone& cone, const Rational& r,
                                   unsigned k_max);

/// supp_C(r*a + b) = supp_C a, for an integer r >= 1 and supp_C b <= supp_C a. The
/// hypothesis that some contact atom of a survives in r*a + b is checked, not assumed.
CheckReport check_dominant_combination(const ExactMeasure& a, const ExactMeasure& b, const Cone& cone, long r);

/// a^{*k} - b^{*k} = (a - b) * (a^{*(k-1)} + ... + b^{*(k-1)}), exactly.
CheckReport check_telescoping(const ExactMeasure& a, const ExactMeasure& b, unsigned k);

struct UniquenessOptions {
  /// Also search for compensating measures by descent on the complement constraints.
  bool constructive = true;
  unsigned perturbation_atoms = 3;
  unsigned compensation_atoms = 3;
  unsigned descent_iterations = 30;
  /// Rounding grid for descended weights before the exact re-check.
  long weight_denominator = 1000;
};

/// Searches for pairs mu != nu supported in C(h), non-zero outside C, whose powers agree
/// outside C for k = 1..K. Each trial draws mu, then nu = mu + d with d inside C and
/// supp_C d in (-(K-1) r, 0], r = supp_C mu; about one trial in eight draws nu = mu to
/// exercise the mu != nu filter. A pair passing all K levels is a candidate; passing a
/// finite K never refutes anything by itself.
CheckReport uniqueness_search(const Cone& cone, const Rational& h, unsigned K, const SamplerConfig& cfg,
                              const UniquenessOptions& opts = {});

}  // namespace conelab
