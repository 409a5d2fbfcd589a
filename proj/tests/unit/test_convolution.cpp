#include <doctest.h>

#include <map>

#include "conelab/convolution.hpp"
#include "conelab/errors.hpp"
#include "conelab/sampler.hpp"
#include "helpers.hpp"

using namespace conelab;
using testutil::m1;
using testutil::mn;
using testutil::pt;
using testutil::q;

namespace {

// Dense polynomial product on integer exponents, as an independent oracle.
std::map<long, Rational> poly_mul(const std::map<long, Rational>& a, const std::map<long, Rational>& b) {
  std::map<long, Rational> out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) out[ea + eb] += ca * cb;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::map<long, Rational> as_poly(const ExactMeasure& m) {
  std::map<long, Rational> out;
  for (const auto& atom : m.atoms()) out[atom.x[0].get_num().get_si()] = atom.w;
  return out;
}

ExactMeasure integer_measure(Rng& rng, int atoms) {
  std::vector<Atom<Rational>> out;
  for (int i = 0; i < atoms; ++i) out.push_back({{Rational(rng.uniform_int(-8, 8))}, Rational(rng.uniform_int(-4, 4))});
  return ExactMeasure(1, std::move(out));
}

Rational binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

Rational mass(const ExactMeasure& m) {
  Rational s(0);
  for (const auto& atom : m.atoms()) s += atom.w;
  return s;
}

}  // namespace

TEST_CASE("convolve examples") {
  const auto a = m1({{q(0), q(1)}, {q(1), q(-1)}});
  CHECK(convolve(ExactMeasure::dirac(pt({0})), a) == a);
  CHECK(convolve(a, m1({{q(0), q(1)}, {q(1), q(1)}})) == m1({{q(0), q(1)}, {q(2), q(-1)}}));
  CHECK(convolve(ExactMeasure::dirac(pt({1, 1})), ExactMeasure::dirac(pt({1, -1}))) ==
        ExactMeasure::dirac(pt({2, 0})));
  CHECK(convolve(a, ExactMeasure(1)).is_zero());
  CHECK_THROWS_AS(convolve(a, ExactMeasure::dirac(pt({0, 0}))), DimensionMismatch);
  CHECK_THROWS_AS(convolve(AnyMeasure(a), AnyMeasure(to_float(a))), ModeMismatch);
}

TEST_CASE("convolve matches dense polynomial multiplication") {
  Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    const auto a = integer_measure(rng, 1 + i % 12);
    const auto b = integer_measure(rng, 1 + i % 7);
    CHECK(as_poly(convolve(a, b)) == poly_mul(as_poly(a), as_poly(b)));
  }
}

TEST_CASE("power examples") {
  CHECK(power(ExactMeasure::dirac(pt({-1})), 3) == ExactMeasure::dirac(pt({-3})));
  CHECK(power(m1({{q(0), q(1)}, {q(-1), q(1)}}), 2) == m1({{q(0), q(1)}, {q(-1), q(2)}, {q(-2), q(1)}}));
  CHECK(power(ExactMeasure(1), 4).is_zero());
  CHECK_THROWS_AS(power(ExactMeasure(1), 0), PreconditionError);
}

TEST_CASE("powers of a two-point measure are binomial") {
  const auto a = m1({{q(0), q(1)}, {q(-1), q(1)}});
  PowerCache<Rational> cache(a);
  for (unsigned k = 1; k <= 12; ++k) {
    const auto& p = power(a, k, cache);
    REQUIRE(p.size() == k + 1);
    for (unsigned j = 0; j <= k; ++j) CHECK(p.weight_at(std::vector<Rational>{Rational(-static_cast<long>(j))}) == binomial(k, j));
  }
  CHECK(cache.computed() == 12);
  CHECK_THROWS_AS(power(m1({{q(0), q(2)}}), 2, cache), PreconditionError);
}

TEST_CASE("mixed_power_sum examples") {
  const auto dm1 = ExactMeasure::dirac(pt({-1}));
  CHECK(mixed_power_sum(dm1, dm1, 2) == m1({{q(-2), q(3)}}));
  CHECK(mixed_power_sum(ExactMeasure::dirac(pt({0})), dm1, 1) == m1({{q(0), q(1)}, {q(-1), q(1)}}));
  CHECK(mixed_power_sum(m1({{q(0), q(1)}}), m1({{q(0), q(-1)}}), 2) == m1({{q(0), q(1)}}));
}

TEST_CASE("telescoping examples") {
  const auto a = m1({{q(0), q(1)}, {q(-1), q(2)}});
  const auto same = telescoping_difference(a, a, 3);
  CHECK(same.lhs.is_zero());
  CHECK(same.rhs.is_zero());
  const auto t = telescoping_difference(m1({{q(0), q(1)}}), m1({{q(-1), q(1)}}), 2);
  CHECK(t.lhs == m1({{q(0), q(1)}, {q(-2), q(-1)}}));
  CHECK(t.rhs == t.lhs);
  CHECK_THROWS_AS(telescoping_difference(a, a, 1), PreconditionError);
}

TEST_CASE("algebraic laws of convolution on random exact measures") {
  Rng rng(32);
  for (int i = 0; i < 200; ++i) {
    const std::size_t dim = 1 + i % 3;
    SamplerConfig cfg;
    cfg.dim = dim;
    cfg.cone = Cone(dim, q(1));
    cfg.max_atoms = 8;
    const auto a = sample_measure(cfg, rng);
    const auto b = sample_measure(cfg, rng);
    const auto c = sample_measure(cfg, rng);
    CHECK(convolve(a, b) == convolve(b, a));
    CHECK(convolve(convolve(a, b), c) == convolve(a, convolve(b, c)));
    CHECK(convolve(a, add(b, c)) == add(convolve(a, b), convolve(a, c)));
    CHECK(total_variation(convolve(a, b)) <= total_variation(a) * total_variation(b));
    CHECK(mass(convolve(a, b)) == mass(a) * mass(b));
    const unsigned k = 2 + i % 4;
    const auto t = telescoping_difference(a, b, k);
    CHECK(t.lhs == t.rhs);
    CHECK(power(a, k) == convolve(power(a, k - 1), a));
  }
}

TEST_CASE("float convolution tracks exact convolution") {
  Rng rng(33);
  SamplerConfig cfg;
  cfg.dim = 2;
  cfg.cone = Cone(2, q(1));
  cfg.max_atoms = 10;
  for (int i = 0; i < 50; ++i) {
    const auto a = sample_measure(cfg, rng);
    const auto b = sample_measure(cfg, rng);
    const auto exact = to_float(convolve(a, b));
    const auto approx = convolve(to_float(a), to_float(b));
    CHECK(equal_on(exact, approx, AllSpace{}, 1e-9));
  }
}
