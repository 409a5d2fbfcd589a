#include "conelab/support.hpp"

#include <algorithm>

namespace conelab {
namespace {

template <Scalar S>
void require_atoms(const BasicMeasure<S>& a, const char* what) {
  if (a.is_zero()) throw DegenerateMeasure(std::string(what) + " is undefined for the zero measure");
}

template <Scalar S>
bool ge(const SupportValue<S>& x, const SupportValue<S>& y) {
  if constexpr (is_exact_v<S>) {
    return x >= y;
  } else {
    return x >= y - kFloatConeTolerance;
  }
}

Rational cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace

template <Scalar S>
SupportValue<S> supp_c(const Cone& cone, const BasicMeasure<S>& a) {
  require_atoms(a, "supp_C");
  if (cone.dim() != a.dim()) throw DimensionMismatch("cone and measure dimensions differ");
  auto atoms = a.atoms();
  SupportValue<S> best = t_functional(cone, std::span<const S>(atoms.front().x));
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    SupportValue<S> t = t_functional(cone, std::span<const S>(atoms[i].x));
    if (t > best) best = std::move(t);
  }
  return best;
}

template <Scalar S>
std::vector<Atom<S>> supp_c_contact(const Cone& cone, const BasicMeasure<S>& a) {
  const SupportValue<S> top = supp_c(cone, a);
  std::vector<Atom<S>> contact;
  for (const auto& atom : a.atoms()) {
    if (ge<S>(t_functional(cone, std::span<const S>(atom.x)), top)) contact.push_back(atom);
  }
  return contact;
}

template <Scalar S>
HullProbe<S> hull_support_function(const BasicMeasure<S>& a, std::span<const S> u) {
  require_atoms(a, "hull support function");
  if (u.size() != a.dim()) throw DimensionMismatch("direction and measure dimensions differ");
  if (std::all_of(u.begin(), u.end(), [](const S& c) { return c == 0; })) {
    throw ZeroDirection("hull probe direction must be non-zero");
  }
  HullProbe<S> probe{S(0), {}};
  bool first = true;
  for (const auto& atom : a.atoms()) {
    S dot(0);
    for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * atom.x[i];
    if (first || dot > probe.value) {
      probe.value = dot;
      probe.face.clear();
      first = false;
    }
    if (dot == probe.value) probe.face.push_back(atom);
  }
  return probe;
}

std::vector<Point2> convex_hull_2d(std::vector<Point2> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;
  std::vector<Point2> hull(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<Point2> minkowski_edge_normals(const ExactMeasure& a, const ExactMeasure& b) {
  if (a.dim() != 2 || b.dim() != 2) throw DimensionMismatch("edge normals need planar measures");
  require_atoms(a, "Minkowski hull");
  require_atoms(b, "Minkowski hull");
  std::vector<Point2> sums;
  sums.reserve(a.size() * b.size());
  for (const auto& x : a.atoms()) {
    for (const auto& y : b.atoms()) sums.push_back({x.x[0] + y.x[0], x.x[1] + y.x[1]});
  }
  const auto hull = convex_hull_2d(std::move(sums));
  std::vector<Point2> normals;
  if (hull.size() == 2) {
    const Rational dx = hull[1][0] - hull[0][0];
    const Rational dy = hull[1][1] - hull[0][1];
    normals.push_back({dy, -dx});
    normals.push_back({-dy, dx});
    return normals;
  }
  for (std::size_t i = 0; i < hull.size() && hull.size() >= 3; ++i) {
    const auto& p = hull[i];
    const auto& q = hull[(i + 1) % hull.size()];
    normals.push_back({q[1] - p[1], p[0] - q[0]});
  }
  return normals;
}

template ConeSupportValue supp_c(const Cone&, const ExactMeasure&);
template double supp_c(const Cone&, const FloatMeasure&);
template std::vector<Atom<Rational>> supp_c_contact(const Cone&, const ExactMeasure&);
template std::vector<Atom<double>> supp_c_contact(const Cone&, const FloatMeasure&);
template HullProbe<Rational> hull_support_function(const ExactMeasure&, std::span<const Rational>);
template HullProbe<double> hull_support_function(const FloatMeasure&, std::span<const double>);

}  // namespace conelab
