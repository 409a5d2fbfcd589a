#pragma once

#include <span>
#include <string>
#include <variant>

#include "conelab/cone.hpp"
#include "conelab/rational.hpp"

namespace conelab {

struct AllSpace {};

/// {x : x1 <= p}
struct LeftHalfSpace {
  Rational p;
};

/// {x : x1 > p}, the complement of LeftHalfSpace{p}.
struct RightOpenHalfSpace {
  Rational p;
};

/// R^n minus C(shift).
struct ConeComplement {
  Cone cone;
  Rational shift;
};

/// C(outer) minus C(inner), inner < outer.
struct ConeShell {
  ConeShell(Cone c, Rational inner_shift, Rational outer_shift);

  Cone cone;
  Rational inner;
  Rational outer;
};

using RegionSpec = std::variant<AllSpace, LeftHalfSpace, RightOpenHalfSpace, ConeComplement, ConeShell>;

bool region_contains(const RegionSpec& region, std::span<const Rational> x);
bool region_contains(const RegionSpec& region, std::span<const double> x);

std::string to_string(const RegionSpec& region);

}  // namespace conelab
