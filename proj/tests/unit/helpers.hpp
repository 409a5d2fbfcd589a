#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "conelab/measure.hpp"

namespace testutil {

using conelab::Atom;
using conelab::ExactMeasure;
using conelab::Rational;

inline Rational q(long p, long d = 1) {
  Rational r{conelab::Integer(p), conelab::Integer(d)};
  r.canonicalize();
  return r;
}

/// 1D exact measure from (location, weight) pairs.
inline ExactMeasure m1(std::initializer_list<std::pair<Rational, Rational>> atoms) {
  std::vector<Atom<Rational>> out;
  for (const auto& [x, w] : atoms) out.push_back({{x}, w});
  return ExactMeasure(1, std::move(out));
}

/// Exact measure in any dimension from (point, weight) pairs.
inline ExactMeasure mn(std::size_t dim, std::initializer_list<std::pair<std::vector<Rational>, Rational>> atoms) {
  std::vector<Atom<Rational>> out;
  for (const auto& [x, w] : atoms) out.push_back({x, w});
  return ExactMeasure(dim, std::move(out));
}

inline std::vector<Rational> pt(std::initializer_list<long> coords) {
  std::vector<Rational> x;
  for (long c : coords) x.emplace_back(c);
  return x;
}

}  // namespace testutil
