#pragma once

#include <deque>

#include "conelab/measure.hpp"

namespace conelab {

/// a * b: every pairwise sum x + y carries weight a(x) b(y); coincident sums are merged.
/// In Exact mode cancellation is exact. Throws DimensionMismatch.
template <Scalar S>
BasicMeasure<S> convolve(const BasicMeasure<S>& a, const BasicMeasure<S>& b);

/// Runtime-mode overload; throws ModeMismatch when the modes differ.
AnyMeasure convolve(const AnyMeasure& a, const AnyMeasure& b);

/// Convolution powers of one base measure, filled by the recurrence
/// a^{*1} = a, a^{*(k+1)} = a * a^{*k}. Entries are stable once published.
template <Scalar S>
class PowerCache {
 public:
  explicit PowerCache(BasicMeasure<S> base) { powers_.push_back(std::move(base)); }

  const BasicMeasure<S>& base() const noexcept { return powers_.front(); }
  std::size_t computed() const noexcept { return powers_.size(); }

  /// a^{*k} for k >= 1, extending the cache as needed.
  const BasicMeasure<S>& get(unsigned k);

 private:
  std::deque<BasicMeasure<S>> powers_;
};

/// a^{*k}, k >= 1. `cache` must have been built from `a`.
template <Scalar S>
const BasicMeasure<S>& power(const BasicMeasure<S>& a, unsigned k, PowerCache<S>& cache);

template <Scalar S>
BasicMeasure<S> power(const BasicMeasure<S>& a, unsigned k);

/// sum_{j=0..k} a^{*(k-j)} * b^{*j}, reading a^{*0} * b^{*k} as b^{*k} and vice versa.
template <Scalar S>
BasicMeasure<S> mixed_power_sum(const BasicMeasure<S>& a, const BasicMeasure<S>& b, unsigned k);

template <Scalar S>
BasicMeasure<S> mixed_power_sum(PowerCache<S>& a_powers, PowerCache<S>& b_powers, unsigned k);

template <Scalar S>
struct Telescoped {
  BasicMeasure<S> lhs;  ///< a^{*k} - b^{*k}
  BasicMeasure<S> rhs;  ///< (a - b) * mixed_power_sum(a, b, k - 1)
};

/// Both sides of a^{*k} - b^{*k} = (a - b) * (a^{*(k-1)} + ... + b^{*(k-1)}), k >= 2.
template <Scalar S>
Telescoped<S> telescoping_difference(const BasicMeasure<S>& a, const BasicMeasure<S>& b, unsigned k);

}  // namespace conelab
