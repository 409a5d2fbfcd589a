#include "conelab/cone.hpp"

#include <cmath>
#include <string>

#include "conelab/errors.hpp"

namespace conelab {
namespace {

template <class S>
void check_dim(const Cone& cone, std::span<const S> x) {
  if (x.size() != cone.dim()) {
    throw DimensionMismatch("point of dimension " + std::to_string(x.size()) +
                            " tested against cone of dimension " + std::to_string(cone.dim()));
  }
}

}  // namespace

Cone::Cone(std::size_t dim, Rational slope) : dim_(dim), slope_(std::move(slope)) {
  if (dim_ == 0) throw PreconditionError("cone dimension must be positive");
  if (dim_ == 1) slope_ = 1;
  if (slope_ <= 0) throw PreconditionError("cone slope must be positive");
}

Cone parse_cone(std::string_view spec) {
  std::size_t dim = 0;
  Rational slope(1);
  bool have_slope = false;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const auto comma = spec.find(',', pos);
    const auto item = spec.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("--cone", "expected key=value in '" + std::string(spec) + "'");
    const auto key = item.substr(0, eq);
    const auto value = item.substr(eq + 1);
    if (key == "dim") {
      const Rational d = parse_rational(value);
      if (d.get_den() != 1 || d <= 0) throw ParseError("--cone", "dim must be a positive integer");
      dim = d.get_num().get_ui();
    } else if (key == "m") {
      slope = parse_rational(value);
      have_slope = true;
    } else {
      throw ParseError("--cone", "unknown key '" + std::string(key) + "'");
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (dim == 0) throw ParseError("--cone", "missing dim=N");
  if (dim > 1 && !have_slope) throw ParseError("--cone", "cones of dimension >= 2 need m=P/Q");
  try {
    return Cone(dim, slope);
  } catch (const PreconditionError& e) {
    throw ParseError("--cone", e.what());
  }
}

std::string to_string(const Cone& cone) {
  if (cone.dim() == 1) return "dim=1";
  return "dim=" + std::to_string(cone.dim()) + ",m=" + to_string(cone.slope());
}

bool cone_member(const Cone& cone, const Rational& p, std::span<const Rational> x) {
  check_dim(cone, x);
  const Rational gap = p - x[0];
  if (gap < 0) return false;
  Rational perp(0);
  for (std::size_t i = 1; i < x.size(); ++i) perp += x[i] * x[i];
  return gap * gap >= cone.slope() * cone.slope() * perp;
}

bool cone_member(const Cone& cone, double p, std::span<const double> x) {
  return t_functional(cone, x) <= p + kFloatConeTolerance;
}

ConeSupportValue t_functional(const Cone& cone, std::span<const Rational> x) {
  check_dim(cone, x);
  if (cone.dim() == 1) return ConeSupportValue(x[0]);
  Rational perp(0);
  for (std::size_t i = 1; i < x.size(); ++i) perp += x[i] * x[i];
  return ConeSupportValue(x[0], cone.slope(), perp);
}

double t_functional(const Cone& cone, std::span<const double> x) {
  check_dim(cone, x);
  double perp = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) perp += x[i] * x[i];
  return x[0] + cone.slope().get_d() * std::sqrt(perp);
}

}  // namespace conelab
