#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "conelab/errors.hpp"
#include "conelab/rational.hpp"
#include "conelab/region.hpp"

namespace conelab {

enum class Mode { Exact, Float };

std::string_view to_string(Mode mode);

struct NumericMode {
  Mode tag = Mode::Exact;
  /// Float only: atoms with |w| <= zero_threshold * max|w| are dropped, and coordinates
  /// closer than zero_threshold * max(1, |c|) are merged.
  double zero_threshold = 0.0;
};

inline constexpr double kDefaultFloatThreshold = 1e-12;

template <Scalar S>
struct Atom {
  std::vector<S> x;
  S w;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite signed atomic measure on R^n.
///
/// The representation is canonical: atoms are sorted lexicographically by location,
/// locations are pairwise distinct, and no weight is zero (Exact) or below the relative
/// pruning threshold (Float). In Exact mode two measures are equal iff their atom lists
/// are equal. The zero measure is the empty atom list.
template <Scalar S>
class BasicMeasure {
 public:
  using scalar_type = S;
  using atom_type = Atom<S>;

  /// Zero measure of the given dimension.
  explicit BasicMeasure(std::size_t dim, double zero_threshold = default_threshold());

  /// Canonicalizes `atoms`: merges coincident locations by summing weights, drops zeros,
  /// sorts. Throws DimensionMismatch when an atom's location has the wrong length.
  BasicMeasure(std::size_t dim, std::vector<Atom<S>> atoms, double zero_threshold = default_threshold());

  static BasicMeasure dirac(std::vector<S> location, S weight = S(1));

  std::size_t dim() const noexcept { return dim_; }
  NumericMode mode() const noexcept;
  double zero_threshold() const noexcept { return threshold_; }
  std::span<const Atom<S>> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool is_zero() const noexcept { return atoms_.empty(); }

  /// Weight at exactly this location, or zero.
  S weight_at(std::span<const S> x) const;

  friend bool operator==(const BasicMeasure& a, const BasicMeasure& b) {
    return a.dim_ == b.dim_ && a.atoms_ == b.atoms_;
  }

  static constexpr double default_threshold() { return is_exact_v<S> ? 0.0 : kDefaultFloatThreshold; }

 private:
  std::size_t dim_;
  double threshold_;
  std::vector<Atom<S>> atoms_;
};

using ExactMeasure = BasicMeasure<Rational>;
using FloatMeasure = BasicMeasure<double>;

/// A measure whose mode is only known at run time (e.g. loaded from a file).
using AnyMeasure = std::variant<ExactMeasure, FloatMeasure>;

template <Scalar S>
BasicMeasure<S> add(const BasicMeasure<S>& a, const BasicMeasure<S>& b);
template <Scalar S>
BasicMeasure<S> subtract(const BasicMeasure<S>& a, const BasicMeasure<S>& b);
template <Scalar S>
BasicMeasure<S> scale(const BasicMeasure<S>& a, const S& c);

/// Keeps exactly the atoms whose locations lie in `region`.
template <Scalar S>
BasicMeasure<S> restrict(const BasicMeasure<S>& a, const RegionSpec& region);

/// Do a and b agree on `region`? Exact mode requires tol == 0 and compares canonical
/// forms; Float mode allows weight deviations up to tol.
template <Scalar S>
bool equal_on(const BasicMeasure<S>& a, const BasicMeasure<S>& b, const RegionSpec& region, double tol = 0.0);

/// Sum of |w|.
template <Scalar S>
S total_variation(const BasicMeasure<S>& a);

/// Largest bit size over all coordinates and weights (Exact mode); 64 in Float mode.
std::size_t max_bit_size(const ExactMeasure& a);

FloatMeasure to_float(const ExactMeasure& a);

Mode mode_of(const AnyMeasure& m);
std::size_t dim_of(const AnyMeasure& m);
AnyMeasure add(const AnyMeasure& a, const AnyMeasure& b);

template <Scalar S>
void check_same_dim(const BasicMeasure<S>& a, const BasicMeasure<S>& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("measures of dimension " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
}

}  // namespace conelab
