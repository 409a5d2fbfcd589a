#include "conelab/convolution.hpp"

#include <unordered_map>

namespace conelab {
namespace {

struct LocationHash {
  std::size_t operator()(const std::vector<Rational>& x) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const auto& c : x) h = (h ^ hash_value(c)) * 0x100000001b3ULL;
    return h;
  }
};

ExactMeasure convolve_exact(const ExactMeasure& a, const ExactMeasure& b) {
  std::unordered_map<std::vector<Rational>, Rational, LocationHash> acc;
  acc.reserve(a.size() * b.size());
  std::vector<Rational> sum(a.dim());
  for (const auto& x : a.atoms()) {
    for (const auto& y : b.atoms()) {
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = x.x[i] + y.x[i];
      auto [it, inserted] = acc.try_emplace(sum, x.w * y.w);
      if (!inserted) it->second += x.w * y.w;
    }
  }
  std::vector<Atom<Rational>> atoms;
  atoms.reserve(acc.size());
  for (auto& [loc, w] : acc) {
    if (w != 0) atoms.push_back({loc, std::move(w)});
  }
  return ExactMeasure(a.dim(), std::move(atoms));
}

FloatMeasure convolve_float(const FloatMeasure& a, const FloatMeasure& b) {
  std::vector<Atom<double>> atoms;
  atoms.reserve(a.size() * b.size());
  for (const auto& x : a.atoms()) {
    for (const auto& y : b.atoms()) {
      std::vector<double> sum(a.dim());
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = x.x[i] + y.x[i];
      atoms.push_back({std::move(sum), x.w * y.w});
    }
  }
  return FloatMeasure(a.dim(), std::move(atoms), std::max(a.zero_threshold(), b.zero_threshold()));
}

}  // namespace

template <Scalar S>
BasicMeasure<S> convolve(const BasicMeasure<S>& a, const BasicMeasure<S>& b) {
  check_same_dim(a, b);
  if constexpr (is_exact_v<S>) {
    return convolve_exact(a, b);
  } else {
    return convolve_float(a, b);
  }
}

AnyMeasure convolve(const AnyMeasure& a, const AnyMeasure& b) {
  if (a.index() != b.index()) throw ModeMismatch("cannot convolve an exact measure with a float measure");
  return std::visit(
      [&](const auto& x) -> AnyMeasure {
        using M = std::decay_t<decltype(x)>;
        return convolve(x, std::get<M>(b));
      },
      a);
}

template <Scalar S>
const BasicMeasure<S>& PowerCache<S>::get(unsigned k) {
  if (k == 0) throw PreconditionError("convolution powers start at k = 1");
  while (powers_.size() < k) powers_.push_back(convolve(powers_.front(), powers_.back()));
  return powers_[k - 1];
}

template <Scalar S>
const BasicMeasure<S>& power(const BasicMeasure<S>& a, unsigned k, PowerCache<S>& cache) {
  if (!(cache.base() == a)) throw PreconditionError("power cache was built for a different base measure");
  return cache.get(k);
}

template <Scalar S>
BasicMeasure<S> power(const BasicMeasure<S>& a, unsigned k) {
  PowerCache<S> cache(a);
  return cache.get(k);
}

template <Scalar S>
BasicMeasure<S> mixed_power_sum(PowerCache<S>& a_powers, PowerCache<S>& b_powers, unsigned k) {
  if (k == 0) throw PreconditionError("mixed power sums start at k = 1");
  check_same_dim(a_powers.base(), b_powers.base());
  std::vector<Atom<S>> atoms;
  const auto append = [&atoms](const BasicMeasure<S>& m) { atoms.insert(atoms.end(), m.atoms().begin(), m.atoms().end()); };
  append(a_powers.get(k));
  append(b_powers.get(k));
  for (unsigned j = 1; j < k; ++j) append(convolve(a_powers.get(k - j), b_powers.get(j)));
  return BasicMeasure<S>(a_powers.base().dim(), std::move(atoms), a_powers.base().zero_threshold());
}

template <Scalar S>
BasicMeasure<S> mixed_power_sum(const BasicMeasure<S>& a, const BasicMeasure<S>& b, unsigned k) {
  PowerCache<S> ap(a);
  PowerCache<S> bp(b);
  return mixed_power_sum(ap, bp, k);
}

template <Scalar S>
Telescoped<S> telescoping_difference(const BasicMeasure<S>& a, const BasicMeasure<S>& b, unsigned k) {
  if (k < 2) throw PreconditionError("telescoping difference needs k >= 2");
  PowerCache<S> ap(a);
  PowerCache<S> bp(b);
  auto lhs = subtract(ap.get(k), bp.get(k));
  auto rhs = convolve(subtract(a, b), mixed_power_sum(ap, bp, k - 1));
  return {std::move(lhs), std::move(rhs)};
}

#define CONELAB_INSTANTIATE(S)                                                                           \
  template BasicMeasure<S> convolve(const BasicMeasure<S>&, const BasicMeasure<S>&);                     \
  template class PowerCache<S>;                                                                          \
  template const BasicMeasure<S>& power(const BasicMeasure<S>&, unsigned, PowerCache<S>&);               \
  template BasicMeasure<S> power(const BasicMeasure<S>&, unsigned);                                      \
  template BasicMeasure<S> mixed_power_sum(PowerCache<S>&, PowerCache<S>&, unsigned);                    \
  template BasicMeasure<S> mixed_power_sum(const BasicMeasure<S>&, const BasicMeasure<S>&, unsigned);    \
  template Telescoped<S> telescoping_difference(const BasicMeasure<S>&, const BasicMeasure<S>&, unsigned);

CONELAB_INSTANTIATE(Rational)
CONELAB_INSTANTIATE(double)

#undef CONELAB_INSTANTIATE

}  // namespace conelab
