#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

namespace conelab {

/// Arbitrary-precision rational; GMP keeps it in lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p" or "p/q" (optional leading sign, decimal digits). Throws ParseError on
/// anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

std::size_t hash_value(const Rational& q) noexcept;
std::size_t hash_value(const Integer& z) noexcept;

/// Larger of the bit lengths of numerator and denominator.
std::size_t bit_size(const Rational& q) noexcept;

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

template <class S>
concept Scalar = std::is_same_v<S, Rational> || std::is_same_v<S, double>;

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

/// Converts a rational parameter into the scalar type S.
template <Scalar S>
S from_rational(const Rational& q) {
  if constexpr (is_exact_v<S>) {
    return q;
  } else {
    return q.get_d();
  }
}

template <Scalar S>
S abs_value(const S& x) {
  if constexpr (is_exact_v<S>) {
    return abs(x);
  } else {
    return x < 0 ? -x : x;
  }
}

}  // namespace conelab
