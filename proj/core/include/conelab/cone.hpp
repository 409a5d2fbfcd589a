#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "conelab/radical.hpp"
#include "conelab/rational.hpp"

namespace conelab {

/// Circular cone {x : x1 + m*|x_perp| <= 0} opening toward negative x1, where
/// x_perp = (x2, ..., xn) and m > 0 is the cotangent of the half-angle. In dimension 1
/// the cone is the ray (-inf, 0] and the slope is unused. For n = 2 this is the wedge
/// x1 + m|x2| <= 0.
///
/// C(p) denotes the cone translated by p along the first axis.
class Cone {
 public:
  Cone(std::size_t dim, Rational slope);
  /// The 1D ray.
  static Cone ray() { return Cone(1, Rational(1)); }

  std::size_t dim() const noexcept { return dim_; }
  const Rational& slope() const noexcept { return slope_; }

  friend bool operator==(const Cone&, const Cone&) = default;

 private:
  std::size_t dim_;
  Rational slope_;
};

/// Parses "dim=N,m=P/Q" (or "dim=1"). Throws ParseError.
Cone parse_cone(std::string_view spec);
std::string to_string(const Cone& cone);

/// Absolute tolerance used by every floating-point cone comparison.
inline constexpr double kFloatConeTolerance = 1e-9;

/// Is x in C(p)? Exact mode uses (p - x1 >= 0) && (p - x1)^2 >= m^2 |x_perp|^2, so no
/// square root is ever taken.
bool cone_member(const Cone& cone, const Rational& p, std::span<const Rational> x);
bool cone_member(const Cone& cone, double p, std::span<const double> x);

/// Smallest t with x in C(t): x1 + m*|x_perp|.
ConeSupportValue t_functional(const Cone& cone, std::span<const Rational> x);
double t_functional(const Cone& cone, std::span<const double> x);

}  // namespace conelab
