#include "conelab/region.hpp"

#include "conelab/errors.hpp"

namespace conelab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <class S>
bool contains_impl(const RegionSpec& region, std::span<const S> x) {
  return std::visit(
      overloaded{
          [](const AllSpace&) { return true; },
          [&](const LeftHalfSpace& h) { return x[0] <= from_rational<S>(h.p); },
          [&](const RightOpenHalfSpace& h) { return x[0] > from_rational<S>(h.p); },
          [&](const ConeComplement& c) { return !cone_member(c.cone, from_rational<S>(c.shift), x); },
          [&](const ConeShell& c) {
            return cone_member(c.cone, from_rational<S>(c.outer), x) &&
                   !cone_member(c.cone, from_rational<S>(c.inner), x);
          },
      },
      region);
}

}  // namespace

ConeShell::ConeShell(Cone c, Rational inner_shift, Rational outer_shift)
    : cone(std::move(c)), inner(std::move(inner_shift)), outer(std::move(outer_shift)) {
  if (!(inner < outer)) throw PreconditionError("cone shell needs inner shift < outer shift");
}

bool region_contains(const RegionSpec& region, std::span<const Rational> x) { return contains_impl(region, x); }
bool region_contains(const RegionSpec& region, std::span<const double> x) { return contains_impl(region, x); }

std::string to_string(const RegionSpec& region) {
  return std::visit(
      overloaded{
          [](const AllSpace&) { return std::string("all"); },
          [](const LeftHalfSpace& h) { return "x1<=" + to_string(h.p); },
          [](const RightOpenHalfSpace& h) { return "x1>" + to_string(h.p); },
          [](const ConeComplement& c) { return "complement of C(" + to_string(c.shift) + ") [" + to_string(c.cone) + "]"; },
          [](const ConeShell& c) {
            return "C(" + to_string(c.outer) + ") minus C(" + to_string(c.inner) + ") [" + to_string(c.cone) + "]";
          },
      },
      region);
}

}  // namespace conelab
