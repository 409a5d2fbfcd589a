#pragma once

#include <compare>
#include <map>
#include <string>

#include "conelab/rational.hpp"

namespace conelab {

/// Writes a positive integer as square * square-free; returns {root of the square part,
/// square-free part}. Throws std::domain_error if the value is too large to factor by
/// trial division (beyond ~2^80 with no small factors).
std::pair<Integer, Integer> split_square_free(const Integer& n);

/// Exact real number a + m*sqrt(q) with m, q >= 0.
///
/// Canonical form: either m = q = 0, or q is a square-free integer > 1 and m > 0. The
/// constructor absorbs square factors and denominators of q into m, so a value whose
/// radical is rational collapses to a pure rational.
class ConeSupportValue {
 public:
  ConeSupportValue() = default;
  ConeSupportValue(Rational a);  // NOLINT(google-explicit-constructor)
  ConeSupportValue(Rational a, Rational m, Rational q);

  const Rational& a() const noexcept { return a_; }
  const Rational& m() const noexcept { return m_; }
  const Rational& q() const noexcept { return q_; }

  bool is_rational() const noexcept { return m_ == 0; }
  double approx() const;
  std::string to_string() const;

  ConeSupportValue operator-() const;

  friend std::strong_ordering operator<=>(const ConeSupportValue& u, const ConeSupportValue& v);
  friend bool operator==(const ConeSupportValue& u, const ConeSupportValue& v) {
    return (u <=> v) == std::strong_ordering::equal;
  }

 private:
  Rational a_{0};
  Rational m_{0};
  Rational q_{0};
};

/// Exact ordering of a1 + m1*sqrt(q1) against a2 + m2*sqrt(q2) by sign analysis and at
/// most two squarings.
std::strong_ordering radical_compare(const ConeSupportValue& u, const ConeSupportValue& v);

/// Finite sum of rational multiples of square roots of square-free integers, i.e. an
/// element of a multiquadratic field. Closed under +, - and *, with an exact sign test.
/// Used for quantities such as k + l - supp_C(a*b) that involve several radicals.
class RadicalSum {
 public:
  RadicalSum() = default;
  RadicalSum(const Rational& r);          // NOLINT(google-explicit-constructor)
  RadicalSum(const ConeSupportValue& v);  // NOLINT(google-explicit-constructor)

  /// Adds c * sqrt(radicand) for any non-negative integer radicand.
  void add_term(const Rational& c, const Integer& radicand);

  bool is_zero() const noexcept { return terms_.empty(); }
  int sign() const;
  double approx() const;
  std::string to_string() const;
  const std::map<Integer, Rational>& terms() const noexcept { return terms_; }

  RadicalSum operator-() const;
  friend RadicalSum operator+(const RadicalSum& x, const RadicalSum& y);
  friend RadicalSum operator-(const RadicalSum& x, const RadicalSum& y);
  friend RadicalSum operator*(const RadicalSum& x, const RadicalSum& y);
  friend std::strong_ordering operator<=>(const RadicalSum& x, const RadicalSum& y);
  friend bool operator==(const RadicalSum& x, const RadicalSum& y) { return x.terms_ == y.terms_; }

 private:
  // square-free radicand -> non-zero coefficient; radicand 1 holds the rational part
  std::map<Integer, Rational> terms_;
};

}  // namespace conelab
