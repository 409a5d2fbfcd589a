#include "conelab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace conelab {
namespace {

template <Scalar S>
bool lex_less(const Atom<S>& a, const Atom<S>& b) {
  return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(), b.x.end());
}

bool close(double a, double b, double thr) {
  if (thr == 0.0) return a == b;
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= thr * scale;
}

std::vector<Atom<Rational>> canonicalize(std::vector<Atom<Rational>> atoms, double) {
  std::sort(atoms.begin(), atoms.end(), lex_less<Rational>);
  std::vector<Atom<Rational>> out;
  out.reserve(atoms.size());
  for (auto& atom : atoms) {
    if (!out.empty() && out.back().x == atom.x) {
      out.back().w += atom.w;
    } else {
      if (!out.empty() && out.back().w == 0) out.pop_back();
      out.push_back(std::move(atom));
    }
  }
  if (!out.empty() && out.back().w == 0) out.pop_back();
  return out;
}

std::vector<Atom<double>> canonicalize(std::vector<Atom<double>> atoms, double thr) {
  std::sort(atoms.begin(), atoms.end(), lex_less<double>);
  const std::size_t n = atoms.size();
  std::vector<bool> consumed(n, false);
  std::vector<Atom<double>> merged;
  merged.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (consumed[i]) continue;
    Atom<double> rep = atoms[i];
    for (std::size_t j = i + 1; j < n && close(atoms[j].x[0], rep.x[0], thr); ++j) {
      if (consumed[j]) continue;
      bool same = true;
      for (std::size_t d = 1; d < rep.x.size() && same; ++d) same = close(atoms[j].x[d], rep.x[d], thr);
      if (same) {
        rep.w += atoms[j].w;
        consumed[j] = true;
      }
    }
    merged.push_back(std::move(rep));
  }
  double wmax = 0.0;
  for (const auto& a : merged) wmax = std::max(wmax, std::abs(a.w));
  const double cutoff = thr * wmax;
  std::erase_if(merged, [&](const Atom<double>& a) { return a.w == 0.0 || std::abs(a.w) <= cutoff; });
  return merged;
}

}  // namespace

std::string_view to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "float"; }

template <Scalar S>
BasicMeasure<S>::BasicMeasure(std::size_t dim, double zero_threshold) : dim_(dim), threshold_(zero_threshold) {
  if (dim_ == 0) throw PreconditionError("measure dimension must be positive");
  if (threshold_ < 0.0) throw PreconditionError("zero threshold must be non-negative");
  if constexpr (is_exact_v<S>) threshold_ = 0.0;
}

template <Scalar S>
BasicMeasure<S>::BasicMeasure(std::size_t dim, std::vector<Atom<S>> atoms, double zero_threshold)
    : BasicMeasure(dim, zero_threshold) {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].x.size() != dim_) {
      throw DimensionMismatch("atom " + std::to_string(i) + " has dimension " + std::to_string(atoms[i].x.size()) +
                              ", measure has dimension " + std::to_string(dim_));
    }
  }
  atoms_ = canonicalize(std::move(atoms), threshold_);
}

template <Scalar S>
BasicMeasure<S> BasicMeasure<S>::dirac(std::vector<S> location, S weight) {
  const std::size_t dim = location.size();
  std::vector<Atom<S>> atoms;
  atoms.push_back({std::move(location), std::move(weight)});
  return BasicMeasure(dim, std::move(atoms));
}

template <Scalar S>
NumericMode BasicMeasure<S>::mode() const noexcept {
  return NumericMode{is_exact_v<S> ? Mode::Exact : Mode::Float, threshold_};
}

template <Scalar S>
S BasicMeasure<S>::weight_at(std::span<const S> x) const {
  Atom<S> probe{std::vector<S>(x.begin(), x.end()), S(0)};
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), probe, lex_less<S>);
  if (it != atoms_.end() && it->x == probe.x) return it->w;
  return S(0);
}

template <Scalar S>
BasicMeasure<S> add(const BasicMeasure<S>& a, const BasicMeasure<S>& b) {
  check_same_dim(a, b);
  std::vector<Atom<S>> atoms(a.atoms().begin(), a.atoms().end());
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  return BasicMeasure<S>(a.dim(), std::move(atoms), std::max(a.zero_threshold(), b.zero_threshold()));
}

template <Scalar S>
BasicMeasure<S> scale(const BasicMeasure<S>& a, const S& c) {
  std::vector<Atom<S>> atoms(a.atoms().begin(), a.atoms().end());
  for (auto& atom : atoms) atom.w *= c;
  return BasicMeasure<S>(a.dim(), std::move(atoms), a.zero_threshold());
}

template <Scalar S>
BasicMeasure<S> subtract(const BasicMeasure<S>& a, const BasicMeasure<S>& b) {
  return add(a, scale(b, S(-1)));
}

template <Scalar S>
BasicMeasure<S> restrict(const BasicMeasure<S>& a, const RegionSpec& region) {
  if (const auto* c = std::get_if<ConeComplement>(&region); c && c->cone.dim() != a.dim()) {
    throw DimensionMismatch("region cone dimension differs from measure dimension");
  }
  if (const auto* c = std::get_if<ConeShell>(&region); c && c->cone.dim() != a.dim()) {
    throw DimensionMismatch("region cone dimension differs from measure dimension");
  }
  std::vector<Atom<S>> kept;
  for (const auto& atom : a.atoms()) {
    if (region_contains(region, std::span<const S>(atom.x))) kept.push_back(atom);
  }
  return BasicMeasure<S>(a.dim(), std::move(kept), a.zero_threshold());
}

template <Scalar S>
bool equal_on(const BasicMeasure<S>& a, const BasicMeasure<S>& b, const RegionSpec& region, double tol) {
  check_same_dim(a, b);
  if constexpr (is_exact_v<S>) {
    if (tol != 0.0) throw PreconditionError("equal_on in exact mode requires tol = 0");
    return restrict(a, region) == restrict(b, region);
  } else {
    const auto diff = restrict(subtract(a, b), region);
    return std::all_of(diff.atoms().begin(), diff.atoms().end(),
                       [tol](const Atom<double>& atom) { return std::abs(atom.w) <= tol; });
  }
}

template <Scalar S>
S total_variation(const BasicMeasure<S>& a) {
  S total(0);
  for (const auto& atom : a.atoms()) total += abs_value(atom.w);
  return total;
}

std::size_t max_bit_size(const ExactMeasure& a) {
  std::size_t bits = 0;
  for (const auto& atom : a.atoms()) {
    bits = std::max(bits, bit_size(atom.w));
    for (const auto& c : atom.x) bits = std::max(bits, bit_size(c));
  }
  return bits;
}

FloatMeasure to_float(const ExactMeasure& a) {
  std::vector<Atom<double>> atoms;
  atoms.reserve(a.size());
  for (const auto& atom : a.atoms()) {
    std::vector<double> x;
    x.reserve(atom.x.size());
    for (const auto& c : atom.x) x.push_back(c.get_d());
    atoms.push_back({std::move(x), atom.w.get_d()});
  }
  return FloatMeasure(a.dim(), std::move(atoms));
}

Mode mode_of(const AnyMeasure& m) { return std::holds_alternative<ExactMeasure>(m) ? Mode::Exact : Mode::Float; }

std::size_t dim_of(const AnyMeasure& m) {
  return std::visit([](const auto& x) { return x.dim(); }, m);
}

AnyMeasure add(const AnyMeasure& a, const AnyMeasure& b) {
  if (a.index() != b.index()) throw ModeMismatch("cannot add an exact measure and a float measure");
  return std::visit(
      [&](const auto& x) -> AnyMeasure {
        using M = std::decay_t<decltype(x)>;
        return add(x, std::get<M>(b));
      },
      a);
}

#define CONELAB_INSTANTIATE(S)                                                                      \
  template class BasicMeasure<S>;                                                                   \
  template BasicMeasure<S> add(const BasicMeasure<S>&, const BasicMeasure<S>&);                     \
  template BasicMeasure<S> subtract(const BasicMeasure<S>&, const BasicMeasure<S>&);                \
  template BasicMeasure<S> scale(const BasicMeasure<S>&, const S&);                                 \
  template BasicMeasure<S> restrict(const BasicMeasure<S>&, const RegionSpec&);                     \
  template bool equal_on(const BasicMeasure<S>&, const BasicMeasure<S>&, const RegionSpec&, double); \
  template S total_variation(const BasicMeasure<S>&);

CONELAB_INSTANTIATE(Rational)
CONELAB_INSTANTIATE(double)

#undef CONELAB_INSTANTIATE

}  // namespace conelab
