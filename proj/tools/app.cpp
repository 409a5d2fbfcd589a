#include "app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <new>

#include "conelab/cone.hpp"
#include "conelab/convolution.hpp"
#include "conelab/errors.hpp"
#include "conelab/fejer.hpp"
#include "conelab/io.hpp"
#include "conelab/support.hpp"
#include "conelab/titchmarsh.hpp"

namespace conelab::cli {
namespace {

using nlohmann::json;

std::filesystem::path witness_path(const ExperimentConfig& cfg) {
  if (!cfg.witness.empty()) return cfg.witness;
  if (cfg.json.empty()) return "witness.json";
  auto p = cfg.json;
  p.replace_extension(".witness.json");
  return p;
}

ExitStatus emit(const CheckReport& report, const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.json.empty()) {
    out << dump_report(report, cfg.timings);
  } else {
    save_report(report, cfg.json, cfg.timings);
    out << to_string(report.claim()) << ": " << to_string(report.verdict()) << '\n';
  }
  if (report.verdict() != Verdict::Fail) return ExitStatus::Ok;
  json w{{"claim", to_string(report.claim())}, {"witness", report.witness().value_or(json(nullptr))}};
  if (report.seed) w["seed"] = *report.seed;
  write_text_file(witness_path(cfg), w.dump(2) + "\n");
  return ExitStatus::ClaimFailed;
}

void write_measure(const AnyMeasure& m, const std::filesystem::path& path, std::ostream& out) {
  if (path.empty()) {
    out << measure_to_json(m).dump(2) << '\n';
  } else {
    save_measure(m, path);
  }
}

ExitStatus run_conv(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.subcommand == "pow") {
    if (cfg.inputs.size() != 1) throw PreconditionError("conv pow takes exactly one --in");
    if (cfg.k == 0) throw PreconditionError("-k must be >= 1");
    if (cfg.out.empty()) throw PreconditionError("conv pow needs --out DIR");
    const AnyMeasure base = load_measure(cfg.inputs.front());
    const std::string stem = cfg.inputs.front().stem().string();
    std::filesystem::create_directories(cfg.out);
    AnyMeasure acc = base;
    for (unsigned k = 1; k <= cfg.k; ++k) {
      if (k > 1) acc = convolve(acc, base);
      save_measure(acc, cfg.out / (stem + "^" + std::to_string(k) + ".json"));
    }
    return ExitStatus::Ok;
  }
  if (cfg.inputs.size() < 2) throw PreconditionError("conv needs at least two --in files");
  AnyMeasure acc = load_measure(cfg.inputs.front());
  for (std::size_t i = 1; i < cfg.inputs.size(); ++i) acc = convolve(acc, load_measure(cfg.inputs[i]));
  write_measure(acc, cfg.out, out);
  return ExitStatus::Ok;
}

ExitStatus run_suppc(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.inputs.size() != 1) throw PreconditionError("suppc takes exactly one --in");
  const Cone cone = parse_cone(cfg.cone);
  const AnyMeasure m = load_measure(cfg.inputs.front());
  if (const auto* exact = std::get_if<ExactMeasure>(&m)) {
    out << supp_c(cone, *exact).to_string() << '\n';
  } else {
    out << supp_c(cone, std::get<FloatMeasure>(m)) << '\n';
  }
  return ExitStatus::Ok;
}

Rational default_h(const ExactMeasure& a, const ExactMeasure& b, const Cone& cone) {
  ConeSupportValue top(Rational(1));
  for (const auto* m : {&a, &b}) {
    if (!m->is_zero()) top = std::max(top, supp_c(cone, *m));
  }
  if (top.is_rational()) return top.a();
  return Rational(Integer(static_cast<long>(std::ceil(top.approx())) + 1));
}

ExitStatus run_verify(const ExperimentConfig& cfg, std::ostream& out) {
  const Cone cone = parse_cone(cfg.cone);
  const AnyMeasure a_any = load_measure(cfg.a);
  const AnyMeasure b_any = load_measure(cfg.b);
  const ExactMeasure& a = expect_exact(a_any, "--a");
  const ExactMeasure& b = expect_exact(b_any, "--b");
  if (cfg.subcommand == "lemma1") {
    const Rational h = cfg.h ? parse_rational(*cfg.h) : default_h(a, b, cone);
    return emit(verify_lemma1_instance(a, b, cone, h), cfg, out);
  }
  if (!cfg.r) throw PreconditionError("verify lemma2 needs --r");
  return emit(verify_lemma2_instance(a, b, cone, parse_rational(*cfg.r), cfg.k_max), cfg, out);
}

SamplerConfig sampler_from(const ExperimentConfig& cfg, const Cone& cone) {
  SamplerConfig s;
  s.dim = cone.dim();
  s.cone = cone;
  s.trials = cfg.trials;
  s.seed = cfg.seed;
  s.max_atoms = cfg.max_atoms;
  return s;
}

ExitStatus run_search(const ExperimentConfig& cfg, std::ostream& out) {
  const Cone cone = parse_cone(cfg.cone);
  if (cfg.subcommand == "thm2") return emit(falsify_theorem2(cone, sampler_from(cfg, cone)).report, cfg, out);
  SamplerConfig s = sampler_from(cfg, cone);
  const Rational h = cfg.h ? parse_rational(*cfg.h) : Rational(1);
  UniquenessOptions opts;
  opts.constructive = cfg.constructive;
  return emit(uniqueness_search(cone, h, cfg.K, s, opts), cfg, out);
}

ExitStatus run_fejer(const ExperimentConfig& cfg, std::ostream& out) {
  GridSpec g;
  g.L = cfg.L;
  g.N = cfg.N;
  const CounterexampleRun result = run_counterexample(g, cfg.k_max, cfg.tol);
  if (!cfg.csv_dir.empty()) dump_counterexample_csv(result, cfg.csv_dir);
  return emit(result.report, cfg, out);
}

ExitStatus run_measure(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.inputs.size() != 1) throw PreconditionError("measure takes exactly one --in");
  const AnyMeasure m = load_measure(cfg.inputs.front());
  if (!cfg.out.empty()) save_measure(m, cfg.out);
  std::visit(
      [&](const auto& meas) {
        if (cfg.format == OutputFormat::Csv) {
          for (std::size_t i = 0; i < meas.dim(); ++i) out << 'x' << (i + 1) << ',';
          out << "w\n";
          for (const auto& atom : meas.atoms()) {
            for (const auto& c : atom.x) out << to_string(c) << ',';
            out << to_string(atom.w) << '\n';
          }
          return;
        }
        json summary{{"dim", meas.dim()},
                     {"mode", mode_of(m) == Mode::Exact ? "exact" : "float"},
                     {"atoms", meas.size()},
                     {"total_variation", to_string(total_variation(meas))}};
        out << summary.dump(2) << '\n';
      },
      m);
  return ExitStatus::Ok;
}

}  // namespace

std::optional<ExitStatus> parse(int argc, const char* const* argv, ExperimentConfig& cfg, std::ostream& out,
                                std::ostream& err) {
  CLI::App app{"Signed atomic measures, convolution powers and cone supports", "conelab"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", std::string(kReportSchemaVersion));
  app.require_subcommand(1, 1);

  const auto add_report_flags = [&](CLI::App* sub) {
    sub->add_option("--json", cfg.json, "Write the report here instead of stdout");
    sub->add_option("--witness", cfg.witness, "Witness file on failure (default <json>.witness.json)");
    sub->add_flag("--timings", cfg.timings, "Include wall-clock timings in the report");
  };
  const auto add_sampler_flags = [&](CLI::App* sub) {
    sub->add_option("--trials", cfg.trials, "Number of random trials")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
    sub->add_option("--max-atoms", cfg.max_atoms, "Atoms per sampled measure")->capture_default_str();
  };

  auto* conv = app.add_subcommand("conv", "Convolve measure files");
  conv->add_option("--in", cfg.inputs, "Input measure (repeatable)")->check(CLI::ExistingFile);
  conv->add_option("--out", cfg.out, "Output file (stdout if omitted)");
  auto* pow = conv->add_subcommand("pow", "Write every power a^1..a^k into a directory");
  pow->add_option("--in", cfg.inputs, "Base measure")->required()->check(CLI::ExistingFile);
  pow->add_option("-k", cfg.k, "Highest power")->required();
  pow->add_option("--out", cfg.out, "Output directory")->required();

  auto* suppc = app.add_subcommand("suppc", "Print supp_C of a measure");
  suppc->add_option("--cone", cfg.cone, "dim=N,m=P/Q")->capture_default_str();
  suppc->add_option("--in", cfg.inputs, "Measure file")->required()->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify", "Check one lemma instance");
  verify->require_subcommand(1, 1);
  for (const char* name : {"lemma1", "lemma2"}) {
    auto* sub = verify->add_subcommand(name);
    sub->add_option("--a", cfg.a)->required()->check(CLI::ExistingFile);
    sub->add_option("--b", cfg.b)->required()->check(CLI::ExistingFile);
    sub->add_option("--cone", cfg.cone)->capture_default_str();
    add_report_flags(sub);
  }
  verify->get_subcommand("lemma1")->add_option("--h", cfg.h, "Support bound h (default max(1, supp_C a, supp_C b))");
  verify->get_subcommand("lemma2")->add_option("--r", cfg.r, "Common value of supp_C a and supp_C b")->required();
  verify->get_subcommand("lemma2")->add_option("--kmax", cfg.k_max, "Highest power")->capture_default_str();

  auto* search = app.add_subcommand("search", "Randomized searches");
  search->require_subcommand(1, 1);
  auto* thm2 = search->add_subcommand("thm2", "Look for pairs with supp_C(a*b) != supp_C a + supp_C b");
  thm2->add_option("--cone", cfg.cone)->capture_default_str();
  add_sampler_flags(thm2);
  add_report_flags(thm2);
  auto* uniq = search->add_subcommand("uniqueness", "Look for mu != nu whose powers agree outside C");
  uniq->add_option("--cone", cfg.cone)->capture_default_str();
  uniq->add_option("--h", cfg.h, "Supports lie in C(h) (default 1)");
  uniq->add_option("-K,--K", cfg.K, "Powers checked")->capture_default_str();
  bool no_constructive = false;
  uniq->add_flag("--no-constructive", no_constructive, "Skip the descent-based compensation search");
  add_sampler_flags(uniq);
  add_report_flags(uniq);

  auto* fejer = app.add_subcommand("fejer", "Half-plane counterexample built from Fejer kernels");
  fejer->add_option("--L", cfg.L, "Grid half-width")->capture_default_str();
  fejer->add_option("--N", cfg.N, "Grid points (power of two)")->capture_default_str();
  fejer->add_option("--kmax", cfg.k_max, "Highest power")->capture_default_str();
  fejer->add_option("--tol", cfg.tol, "Tolerance")->capture_default_str();
  fejer->add_option("--dump-csv", cfg.csv_dir, "Write per-k density tables into this directory");
  add_report_flags(fejer);

  auto* measure = app.add_subcommand("measure", "Canonicalize and summarize a measure file");
  measure->add_option("--in", cfg.inputs, "Measure file")->required()->check(CLI::ExistingFile);
  measure->add_option("--out", cfg.out, "Write the canonical form here");
  measure->add_option("--format", cfg.format, "json or csv")
      ->transform(CLI::CheckedTransformer(std::map<std::string, OutputFormat>{{"json", OutputFormat::Json},
                                                                               {"csv", OutputFormat::Csv}}))
      ->option_text("json|csv [json]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ExitStatus::Ok : ExitStatus::UsageError;
  }
  cfg.constructive = !no_constructive;
  for (auto* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    for (auto* inner : sub->get_subcommands()) cfg.subcommand = inner->get_name();
  }
  return std::nullopt;
}

ExitStatus run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  if (cfg.command == "conv") return run_conv(cfg, out);
  if (cfg.command == "suppc") return run_suppc(cfg, out);
  if (cfg.command == "verify") return run_verify(cfg, out);
  if (cfg.command == "search") return run_search(cfg, out);
  if (cfg.command == "fejer") return run_fejer(cfg, out);
  if (cfg.command == "measure") return run_measure(cfg, out);
  throw PreconditionError("unknown command '" + cfg.command + "'");
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  try {
    if (auto early = parse(argc, argv, cfg, out, err)) return static_cast<int>(*early);
    return static_cast<int>(run(cfg, out, err));
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::UsageError);
  } catch (const GridOverflow& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::InternalError);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::UsageError);
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return static_cast<int>(ExitStatus::InternalError);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return static_cast<int>(ExitStatus::InternalError);
  }
}

}  // namespace conelab::cli
