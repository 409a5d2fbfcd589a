#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "conelab/errors.hpp"
#include "conelab/io.hpp"
#include "conelab/sampler.hpp"
#include "conelab/titchmarsh.hpp"
#include "helpers.hpp"

using namespace conelab;
using nlohmann::json;
using testutil::m1;
using testutil::pt;
using testutil::q;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "conelab_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("exact measure JSON form") {
  const json j = measure_to_json(m1({{q(1, 2), q(3)}, {q(-2), q(-1, 4)}}));
  CHECK(j["dim"] == 1);
  CHECK(j["mode"] == "exact");
  CHECK(j["atoms"][0]["x"][0] == "-2");
  CHECK(j["atoms"][0]["w"] == "-1/4");
  CHECK(j["atoms"][1]["x"][0] == "1/2");
}

TEST_CASE("save and load round-trip exactly") {
  Rng rng(51);
  for (int i = 0; i < 50; ++i) {
    SamplerConfig cfg;
    cfg.dim = 1 + i % 3;
    cfg.cone = Cone(cfg.dim, q(1));
    const ExactMeasure m = sample_measure(cfg, rng);
    const auto path = scratch("rt.json");
    save_measure(m, path);
    CHECK(std::get<ExactMeasure>(load_measure(path)) == m);
  }
  const FloatMeasure f(2, {{{0.25, -1.5}, 3.0}, {{1.0, 2.0}, -0.125}});
  save_measure(f, scratch("f.json"));
  CHECK(std::get<FloatMeasure>(load_measure(scratch("f.json"))) == f);
}

TEST_CASE("loading canonicalizes") {
  const auto path = scratch("dup.json");
  write(path, R"({"dim": 1, "mode": "exact", "atoms": [{"x": ["0"], "w": "1"}, {"x": ["2/4"], "w": "1"},
                   {"x": ["0"], "w": "2"}]})");
  CHECK(std::get<ExactMeasure>(load_measure(path)) == m1({{q(0), q(3)}, {q(1, 2), q(1)}}));
}

TEST_CASE("parse errors carry locations") {
  const auto path = scratch("bad.json");
  write(path, R"({"dim": 1, "mode": "exact", "atoms": [{"x": ["0"], "w": "1/0"}]})");
  try {
    load_measure(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.where() == path.string() + "#/atoms/0/w");
    CHECK(std::string(e.what()).find("/atoms/0/w: /atoms") == std::string::npos);
  }
  write(path, "{\"dim\": 1,\n \"atoms\": [\n}");
  try {
    load_measure(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.where().rfind(path.string() + ":3:", 0) == 0);
  }
  for (const char* text : {R"({"dim": 0, "atoms": []})", R"({"dim": 2, "atoms": [{"x": ["1"], "w": "1"}]})",
                           R"({"dim": 1, "mode": "fuzzy", "atoms": []})",
                           R"({"dim": 1, "atoms": [{"x": [1.5], "w": "1"}]})",
                           R"({"dim": 1, "mode": "float", "atoms": [{"x": ["1"], "w": 1}]})"}) {
    CAPTURE(text);
    write(path, text);
    CHECK_THROWS_AS(load_measure(path), ParseError);
  }
  CHECK_THROWS_AS(load_measure(scratch("missing.json")), Error);
}

TEST_CASE("expect_exact") {
  const AnyMeasure f = FloatMeasure::dirac({1.0});
  CHECK_THROWS_AS(expect_exact(f, "--a"), ModeMismatch);
}

TEST_CASE("support values serialize exactly") {
  const json j = support_to_json(ConeSupportValue(q(1), q(1), q(2)));
  CHECK(j["exact"] == "1+1*sqrt(2)");
  CHECK(j["approx"].get<double>() == doctest::Approx(2.41421356));
}

TEST_CASE("report JSON") {
  const auto r = check_suppc_additivity(ExactMeasure::dirac(pt({1, 1})), ExactMeasure::dirac(pt({1, -1})),
                                        Cone(2, q(1)));
  const json j = json::parse(dump_report(r));
  CHECK(j["schema_version"] == "1");
  CHECK(j["claim"] == "Thm2");
  CHECK(j["verdict"] == "fail");
  CHECK(j["hypotheses_satisfied"] == true);
  CHECK(j["conclusion_holds"] == false);
  CHECK(j.contains("witness"));
  CHECK_FALSE(j.contains("timings_ms"));
  CHECK(dump_report(r).back() == '\n');
}

TEST_CASE("CheckReport bookkeeping") {
  CheckReport r(Claim::Identity);
  CHECK(r.verdict() == Verdict::NotApplicable);
  r.hypothesis("h", false);
  r.conclude(false, json{{"x", 1}});
  CHECK(r.verdict() == Verdict::NotApplicable);
  CHECK_FALSE(r.witness());
  CheckReport ok(Claim::Identity);
  ok.hypothesis("h", true);
  ok.conclude(true, json{{"x", 1}});
  CHECK(ok.verdict() == Verdict::Pass);
  CHECK_FALSE(ok.witness());
}
