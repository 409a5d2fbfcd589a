#include <doctest.h>

#include "conelab/convolution.hpp"
#include "conelab/errors.hpp"
#include "conelab/io.hpp"
#include "conelab/support.hpp"
#include "conelab/titchmarsh.hpp"
#include "helpers.hpp"

using namespace conelab;
using testutil::m1;
using testutil::mn;
using testutil::pt;
using testutil::q;

namespace {

std::vector<Direction> compass() {
  return {pt({1, 0}), pt({0, 1}), pt({-1, 0}), pt({0, -1}), pt({1, 1}), pt({-1, -1}), pt({2, -1}), pt({-1, 3})};
}

SamplerConfig small_sampler(const Cone& cone, unsigned trials, std::uint64_t seed) {
  SamplerConfig cfg;
  cfg.dim = cone.dim();
  cfg.cone = cone;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.max_atoms = 12;
  return cfg;
}

}  // namespace

TEST_CASE("hull additivity on (1+x+y)(1-x)") {
  const auto a = mn(2, {{pt({0, 0}), q(1)}, {pt({1, 0}), q(1)}, {pt({0, 1}), q(1)}});
  const auto b = mn(2, {{pt({0, 0}), q(1)}, {pt({1, 0}), q(-1)}});
  const auto r = check_hull_additivity(a, b, compass());
  CHECK(r.verdict() == Verdict::Pass);
  CHECK(r.computed["tie_probes"].get<int>() > 0);
  CHECK(r.computed["subadditive_failures"] == 0);
}

TEST_CASE("hull additivity in 1D and for point masses") {
  const auto a = m1({{q(3), q(2)}, {q(-1), q(5)}, {q(1, 2), q(-1)}});
  const auto b = m1({{q(0), q(1)}, {q(-4), q(7)}});
  CHECK(check_hull_additivity(a, b, {pt({1}), pt({-1})}).verdict() == Verdict::Pass);
  const auto d = ExactMeasure::dirac(pt({2, 0}));
  const auto r = check_hull_additivity(d, d, compass());
  CHECK(r.verdict() == Verdict::Pass);
  CHECK(r.computed["tie_probes"] == 0);
  CHECK_THROWS_AS(check_hull_additivity(ExactMeasure(2), d, compass()), DegenerateMeasure);
  CHECK_THROWS_AS(check_hull_additivity(d, d, {pt({0, 0})}), ZeroDirection);
}

TEST_CASE("hull additivity on random planar pairs") {
  Rng rng(41);
  const auto cfg = small_sampler(Cone(2, q(1)), 1, 41);
  for (int i = 0; i < 40; ++i) {
    const auto a = sample_measure(cfg, rng);
    const auto b = sample_measure(cfg, rng);
    std::vector<Direction> dirs = compass();
    for (const auto& n : minkowski_edge_normals(a, b)) dirs.push_back({n[0], n[1]});
    const auto r = check_hull_additivity(a, b, dirs);
    CHECK(r.verdict() == Verdict::Pass);
  }
}

TEST_CASE("subadditivity examples") {
  const auto r1 = check_suppc_subadditivity(m1({{q(0), q(1)}, {q(-1), q(1)}}), m1({{q(0), q(1)}, {q(-1), q(-1)}}),
                                            Cone::ray());
  CHECK(r1.verdict() == Verdict::Pass);
  CHECK(r1.claim() == Claim::Identity);
  CHECK(r1.computed["gap"]["exact"] == "0");
  const Cone c(2, q(1));
  const auto r2 = check_suppc_subadditivity(ExactMeasure::dirac(pt({1, 1})), ExactMeasure::dirac(pt({1, -1})), c);
  CHECK(r2.verdict() == Verdict::Pass);
  CHECK(r2.computed["supp_c_ab"]["exact"] == "2");
  CHECK(r2.computed["gap"]["exact"] == "2");
  const auto a = mn(2, {{pt({1, 1}), q(3)}, {pt({-2, 0}), q(1)}});
  const auto r3 = check_suppc_subadditivity(a, ExactMeasure::dirac(pt({0, 0})), c);
  CHECK(r3.computed["gap"]["exact"] == "0");
}

TEST_CASE("additivity examples") {
  const auto r1 = check_suppc_additivity(m1({{q(2), q(1)}, {q(-1), q(3)}}), m1({{q(1, 2), q(-2)}}), Cone::ray());
  CHECK(r1.verdict() == Verdict::Pass);
  CHECK(r1.claim() == Claim::Thm2);
  const Cone c(2, q(1));
  const auto r2 = check_suppc_additivity(ExactMeasure::dirac(pt({1, 1})), ExactMeasure::dirac(pt({1, -1})), c);
  CHECK(r2.verdict() == Verdict::Fail);
  CHECK(r2.computed["gap"]["exact"] == "2");
  REQUIRE(r2.witness());
  CHECK(r2.witness()->contains("a"));
  const Cone c3(3, q(1));
  const auto r3 =
      check_suppc_additivity(ExactMeasure::dirac(pt({0, 1, 0})), ExactMeasure::dirac(pt({0, -1, 0})), c3);
  CHECK(r3.verdict() == Verdict::Fail);
  CHECK(r3.computed["gap"]["exact"] == "2");
  CHECK(r3.computed["supp_c_ab"]["exact"] == "0");
}

TEST_CASE("1D additivity gap is exactly zero on random pairs") {
  Rng rng(42);
  const auto cfg = small_sampler(Cone::ray(), 1, 42);
  for (int i = 0; i < 300; ++i) {
    const auto r = check_suppc_additivity(sample_measure(cfg, rng), sample_measure(cfg, rng), Cone::ray());
    CHECK(r.verdict() == Verdict::Pass);
  }
}

TEST_CASE("subadditivity never has a negative gap") {
  Rng rng(43);
  for (int i = 0; i < 300; ++i) {
    const std::size_t dim = 1 + i % 3;
    const Cone cone(dim, rng.uniform_rational(q(1, 3), q(3), 3));
    const auto cfg = small_sampler(cone, 1, 43);
    const auto a = sample_measure(cfg, rng);
    const auto b = sample_measure(cfg, rng);
    CHECK(check_suppc_subadditivity(a, b, cone).verdict() == Verdict::Pass);
  }
}

TEST_CASE("falsify_theorem2") {
  SUBCASE("ray: no witnesses") {
    const auto s = falsify_theorem2(Cone::ray(), small_sampler(Cone::ray(), 200, 1));
    CHECK(s.witnesses.empty());
    CHECK(s.report.verdict() == Verdict::Pass);
  }
  SUBCASE("wedge: canonical witness first") {
    const Cone c(2, q(1));
    const auto s = falsify_theorem2(c, small_sampler(c, 100, 2));
    REQUIRE(!s.witnesses.empty());
    CHECK(s.report.verdict() == Verdict::Fail);
    const auto& w = s.witnesses.front();
    CHECK(w.trial == -1);
    CHECK(w.k == ConeSupportValue(q(2)));
    CHECK(w.l == ConeSupportValue(q(2)));
    CHECK(w.product == ConeSupportValue(q(2)));
    CHECK(w.gap.to_string() == "2");
    for (std::size_t i = 1; i < s.witnesses.size(); ++i) {
      CHECK(s.witnesses[i - 1].a.size() + s.witnesses[i - 1].b.size() <=
            s.witnesses[i].a.size() + s.witnesses[i].b.size());
      CHECK(s.witnesses[i].gap.sign() != 0);
    }
  }
  SUBCASE("wedge with aligned contact: no witnesses") {
    const Cone c(2, q(1));
    auto cfg = small_sampler(c, 200, 3);
    cfg.aligned_contact = true;
    const auto s = falsify_theorem2(c, cfg);
    CHECK(s.witnesses.empty());
  }
  SUBCASE("same seed, same report") {
    const Cone c(2, q(1, 2));
    const auto x = falsify_theorem2(c, small_sampler(c, 60, 9));
    const auto y = falsify_theorem2(c, small_sampler(c, 60, 9));
    CHECK(dump_report(x.report) == dump_report(y.report));
  }
}

TEST_CASE("lemma 1 examples") {
  const Cone ray = Cone::ray();
  const auto r1 = verify_lemma1_instance(ExactMeasure::dirac(pt({-2})), m1({{q(2), q(1)}, {q(0), q(1)}}), ray, q(2));
  CHECK(r1.hypotheses_satisfied());
  CHECK(r1.verdict() == Verdict::Pass);
  const auto r2 = verify_lemma1_instance(ExactMeasure::dirac(pt({-2})), ExactMeasure::dirac(pt({3})), ray, q(3));
  CHECK_FALSE(r2.hypotheses_satisfied());
  CHECK(r2.verdict() == Verdict::NotApplicable);
  CHECK_FALSE(r2.concluded());
  const auto d0 = ExactMeasure::dirac(pt({0}));
  CHECK(verify_lemma1_instance(d0, d0, ray, q(1)).verdict() == Verdict::Pass);
  CHECK(verify_lemma1_instance(d0, d0, ray, q(0)).verdict() == Verdict::NotApplicable);
  CHECK_THROWS_AS(verify_lemma1_instance(ExactMeasure(1), d0, ray, q(1)), DegenerateMeasure);
}

TEST_CASE("lemma 1 holds whenever its hypotheses hold in 1D") {
  Rng rng(44);
  int applicable = 0;
  for (int i = 0; i < 400; ++i) {
    auto cfg = small_sampler(Cone::ray(), 1, 44);
    const Rational h = rng.uniform_rational(q(1, 10), q(4), 10);
    cfg.support_shift = h;
    const auto a = sample_measure(cfg, rng);
    const auto b = sample_measure(cfg, rng);
    const auto r = verify_lemma1_instance(a, b, Cone::ray(), h);
    if (r.hypotheses_satisfied()) {
      ++applicable;
      CHECK(r.conclusion_holds());
    } else {
      CHECK(r.verdict() == Verdict::NotApplicable);
    }
  }
  CHECK(applicable > 0);
}

TEST_CASE("lemma 2 examples") {
  const Cone ray = Cone::ray();
  const auto a = m1({{q(1), q(1)}, {q(-1), q(1)}});
  const auto r1 = verify_lemma2_instance(a, a, ray, q(1), 3);
  CHECK(r1.verdict() == Verdict::Pass);
  CHECK(r1.computed["levels"].size() == 3);
  const auto b = m1({{q(1), q(1)}, {q(-1), q(2)}});
  const auto r2 = verify_lemma2_instance(a, b, ray, q(1), 3);
  CHECK(r2.verdict() == Verdict::NotApplicable);
  CHECK(r2.computed["powers_agree_outside_c_up_to"] == 2);
  const auto r3 = verify_lemma2_instance(a, b, ray, q(1), 2);
  CHECK(r3.verdict() == Verdict::Pass);
  CHECK_THROWS_AS(verify_lemma2_instance(a, a, ray, q(0), 2), PreconditionError);
  CHECK_THROWS_AS(verify_lemma2_instance(a, a, ray, q(1), 0), PreconditionError);
  // wrong r: hypothesis fails
  CHECK(verify_lemma2_instance(a, a, ray, q(2), 2).verdict() == Verdict::NotApplicable);
  // nothing outside C
  const auto inside = m1({{q(0), q(1)}});
  CHECK(verify_lemma2_instance(inside, inside, ray, q(1), 1).verdict() == Verdict::NotApplicable);
}

TEST_CASE("dominant combination") {
  const Cone ray = Cone::ray();
  const auto a = m1({{q(1), q(1)}, {q(0), q(2)}});
  const auto b = m1({{q(1), q(-1)}, {q(-1), q(1)}});
  CHECK(check_dominant_combination(a, b, ray, 2).verdict() == Verdict::Pass);
  const auto cancelled = check_dominant_combination(a, b, ray, 1);
  CHECK(cancelled.verdict() == Verdict::NotApplicable);
  CHECK(cancelled.computed["surviving_contact_atoms"] == 0);
}

TEST_CASE("telescoping report") {
  const auto a = m1({{q(1), q(1)}, {q(0), q(2)}});
  const auto b = m1({{q(1), q(-1)}, {q(-1), q(1)}});
  CHECK(check_telescoping(a, b, 4).verdict() == Verdict::Pass);
  CHECK(check_telescoping(a, b, 1).verdict() == Verdict::NotApplicable);
}

TEST_CASE("a perturbation deeper than (K-1) r is invisible to K powers") {
  // mu has supp_C = r = 1; d sits at -(K-1) r = -2 for K = 3.
  const Cone ray = Cone::ray();
  const auto mu = m1({{q(1), q(1)}, {q(-2), q(1)}});
  const auto nu = add(mu, m1({{q(-2), q(1)}}));
  const RegionSpec outside = ConeComplement{ray, q(0)};
  for (unsigned k = 1; k <= 3; ++k) CHECK(equal_on(power(mu, k), power(nu, k), outside));
  CHECK_FALSE(equal_on(power(mu, 4), power(nu, 4), outside));
}

TEST_CASE("uniqueness_search") {
  SUBCASE("ray: no candidates, equal draws filtered") {
    auto cfg = small_sampler(Cone::ray(), 80, 5);
    const auto r = uniqueness_search(Cone::ray(), q(1), 3, cfg);
    CHECK(r.verdict() == Verdict::Pass);
    CHECK(r.computed["candidates"] == 0);
    CHECK(r.computed["constructive_candidates"] == 0);
    CHECK(r.computed["excluded_equal_pairs"].get<int>() > 0);
    CHECK(r.computed["constructive_runs"].get<int>() > 0);
    int detected = 0;
    for (const auto& [k, n] : r.computed["first_difference_at_k"].items()) detected += n.get<int>();
    CHECK(detected + r.computed["excluded_equal_pairs"].get<int>() == 80);
  }
  SUBCASE("deterministic") {
    auto cfg = small_sampler(Cone(2, q(1)), 20, 6);
    cfg.max_atoms = 5;
    const auto x = uniqueness_search(Cone(2, q(1)), q(1), 2, cfg);
    const auto y = uniqueness_search(Cone(2, q(1)), q(1), 2, cfg);
    CHECK(dump_report(x) == dump_report(y));
  }
  SUBCASE("preconditions") {
    auto cfg = small_sampler(Cone::ray(), 1, 7);
    CHECK_THROWS_AS(uniqueness_search(Cone::ray(), q(0), 3, cfg), PreconditionError);
    CHECK_THROWS_AS(uniqueness_search(Cone::ray(), q(1), 0, cfg), PreconditionError);
  }
}
