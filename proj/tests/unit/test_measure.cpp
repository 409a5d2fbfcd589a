#include <doctest.h>

#include "conelab/errors.hpp"
#include "conelab/measure.hpp"
#include "conelab/sampler.hpp"
#include "helpers.hpp"

using namespace conelab;
using testutil::m1;
using testutil::mn;
using testutil::pt;
using testutil::q;

TEST_CASE("construction canonicalizes") {
  const auto merged = m1({{q(0), q(1)}, {q(0), q(2)}});
  REQUIRE(merged.size() == 1);
  CHECK(merged.atoms()[0].w == 3);
  CHECK(m1({{q(0), q(1)}, {q(0), q(-1)}}).is_zero());
  const auto ordered = mn(2, {{pt({1, 1}), q(1, 2)}, {pt({1, -1}), q(1, 3)}});
  REQUIRE(ordered.size() == 2);
  CHECK(ordered.atoms()[0].x == pt({1, -1}));
  CHECK(ordered.atoms()[0].w == q(1, 3));
  CHECK(ordered.atoms()[1].x == pt({1, 1}));
  CHECK(m1({{q(2, 4), q(1)}}) == m1({{q(1, 2), q(1)}}));
}

TEST_CASE("construction validates dimensions") {
  CHECK_THROWS_AS(ExactMeasure(2, {{pt({1}), q(1)}}), DimensionMismatch);
  CHECK_THROWS_AS(ExactMeasure(0), PreconditionError);
}

TEST_CASE("add, subtract, scale examples") {
  const auto d0 = ExactMeasure::dirac(pt({0}));
  CHECK(add(d0, scale(d0, q(-1))).is_zero());
  CHECK(scale(m1({{q(0), q(1)}, {q(-2), q(3)}}), q(2)) == m1({{q(0), q(2)}, {q(-2), q(6)}}));
  CHECK(add(m1({{q(0), q(1)}}), m1({{q(-1), q(1)}})) == m1({{q(0), q(1)}, {q(-1), q(1)}}));
  CHECK(scale(d0, q(0)).is_zero());
  CHECK_THROWS_AS(add(d0, ExactMeasure::dirac(pt({0, 0}))), DimensionMismatch);
}

TEST_CASE("restrict examples") {
  const auto a = mn(2, {{pt({1, 0}), q(1)}, {pt({-3, 0}), q(2)}});
  CHECK(restrict(a, LeftHalfSpace{q(0)}) == mn(2, {{pt({-3, 0}), q(2)}}));
  const Cone c(2, q(1));
  CHECK(restrict(ExactMeasure::dirac(pt({0, 0})), ConeComplement{c, q(0)}).is_zero());
  CHECK(restrict(mn(2, {{pt({1, 1}), q(1)}}), ConeComplement{c, q(0)}) == mn(2, {{pt({1, 1}), q(1)}}));
  CHECK_THROWS_AS(restrict(m1({{q(0), q(1)}}), ConeComplement{c, q(0)}), DimensionMismatch);
}

TEST_CASE("equal_on examples") {
  const auto a = m1({{q(0), q(1)}, {q(-3), q(1)}});
  const auto b = m1({{q(0), q(1)}, {q(-2), q(1)}});
  CHECK(equal_on(a, a, AllSpace{}));
  CHECK_FALSE(equal_on(a, b, LeftHalfSpace{q(-1)}));
  CHECK(equal_on(a, b, RightOpenHalfSpace{q(-1)}));
  CHECK_THROWS_AS(equal_on(a, b, AllSpace{}, 0.1), PreconditionError);
}

TEST_CASE("total_variation examples") {
  CHECK(total_variation(ExactMeasure(1)) == 0);
  CHECK(total_variation(m1({{q(0), q(1)}, {q(-2), q(-3)}})) == 4);
  CHECK(total_variation(mn(2, {{pt({1, 1}), q(1, 2)}, {pt({1, -1}), q(-1, 2)}})) == 1);
}

TEST_CASE("float mode merges close coordinates and prunes tiny weights") {
  const FloatMeasure merged(1, {{{0.0}, 1.0}, {{1e-15}, 1.0}});
  REQUIRE(merged.size() == 1);
  CHECK(merged.atoms()[0].w == doctest::Approx(2.0));
  const FloatMeasure pruned(1, {{{0.0}, 1.0}, {{1.0}, 1e-14}});
  CHECK(pruned.size() == 1);
  CHECK(mode_of(AnyMeasure(pruned)) == Mode::Float);
  CHECK(pruned.mode().zero_threshold == kDefaultFloatThreshold);
  CHECK(equal_on(FloatMeasure::dirac({0.0}, 1.0), FloatMeasure::dirac({0.0}, 1.0 + 1e-9), AllSpace{}, 1e-6));
  CHECK_FALSE(equal_on(FloatMeasure::dirac({0.0}, 1.0), FloatMeasure::dirac({0.0}, 1.1), AllSpace{}, 1e-6));
}

TEST_CASE("mixing modes is an error") {
  const AnyMeasure e = ExactMeasure::dirac(pt({0}));
  const AnyMeasure f = FloatMeasure::dirac({0.0});
  CHECK_THROWS_AS(add(e, f), ModeMismatch);
  CHECK(std::get<FloatMeasure>(add(f, f)).atoms()[0].w == doctest::Approx(2.0));
}

TEST_CASE("to_float keeps atoms") {
  const auto a = m1({{q(1, 2), q(3)}, {q(-1, 3), q(-1, 4)}});
  const FloatMeasure f = to_float(a);
  REQUIRE(f.size() == 2);
  CHECK(f.atoms()[0].x[0] == doctest::Approx(-1.0 / 3.0));
  CHECK(f.atoms()[0].w == doctest::Approx(-0.25));
}

TEST_CASE("vector-space laws on random exact measures") {
  Rng rng(11);
  SamplerConfig cfg;
  cfg.dim = 2;
  cfg.cone = Cone(2, q(1));
  cfg.max_atoms = 12;
  for (int i = 0; i < 300; ++i) {
    const auto a = sample_measure(cfg, rng);
    const auto b = sample_measure(cfg, rng);
    const auto c = sample_measure(cfg, rng);
    const Rational s = rng.uniform_rational(q(-3), q(3), 5);
    CHECK(add(a, b) == add(b, a));
    CHECK(add(add(a, b), c) == add(a, add(b, c)));
    CHECK(subtract(add(a, b), b) == a);
    CHECK(scale(add(a, b), s) == add(scale(a, s), scale(b, s)));
    CHECK(total_variation(add(a, b)) <= total_variation(a) + total_variation(b));
    CHECK(total_variation(scale(a, s)) == abs(s) * total_variation(a));
    // restriction to a half-space and its complement partitions the measure
    const Rational p = rng.uniform_rational(q(-5), q(5), 10);
    CHECK(add(restrict(a, LeftHalfSpace{p}), restrict(a, RightOpenHalfSpace{p})) == a);
    CHECK(restrict(restrict(a, LeftHalfSpace{p}), RightOpenHalfSpace{p}).is_zero());
    CHECK(equal_on(a, add(a, restrict(b, RightOpenHalfSpace{p})), LeftHalfSpace{p}));
  }
}
