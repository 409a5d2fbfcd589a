#pragma once

#include <array>
#include <span>
#include <type_traits>
#include <vector>

#include "conelab/cone.hpp"
#include "conelab/measure.hpp"
#include "conelab/radical.hpp"

namespace conelab {

/// supp_C in the scalar's mode: exact radical value, or a double.
template <Scalar S>
using SupportValue = std::conditional_t<is_exact_v<S>, ConeSupportValue, double>;

/// Least p with supp(a) contained in C(p), i.e. the max of t_functional over atoms.
/// Throws DegenerateMeasure for the zero measure.
template <Scalar S>
SupportValue<S> supp_c(const Cone& cone, const BasicMeasure<S>& a);

/// The atoms attaining supp_c (the contact set with the boundary of C(supp_c)).
template <Scalar S>
std::vector<Atom<S>> supp_c_contact(const Cone& cone, const BasicMeasure<S>& a);

template <Scalar S>
struct HullProbe {
  S value;                     ///< max over atoms of <u, x>
  std::vector<Atom<S>> face;   ///< atoms attaining it
};

/// Support function of conv(supp a) in direction u, plus the face it selects.
/// Throws DegenerateMeasure or ZeroDirection.
template <Scalar S>
HullProbe<S> hull_support_function(const BasicMeasure<S>& a, std::span<const S> u);

using Point2 = std::array<Rational, 2>;

/// Counter-clockwise convex hull of a planar point set, collinear points removed.
std::vector<Point2> convex_hull_2d(std::vector<Point2> points);

/// Outward normals (not normalized) of the edges of conv(supp a) + conv(supp b), one
/// per edge, in counter-clockwise order. Both measures must be two-dimensional.
std::vector<Point2> minkowski_edge_normals(const ExactMeasure& a, const ExactMeasure& b);

}  // namespace conelab
