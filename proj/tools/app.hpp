#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "conelab/sampler.hpp"

namespace conelab::cli {

enum class ExitStatus : int {
  Ok = 0,           ///< checks passed or were not applicable
  ClaimFailed = 1,  ///< a checked claim failed; a witness file was written
  UsageError = 2,   ///< bad flags or malformed input
  InternalError = 3,
};

enum class OutputFormat { Json, Csv };

struct ExperimentConfig {
  std::string command;     ///< conv | suppc | verify | search | fejer | measure
  std::string subcommand;  ///< pow | lemma1 | lemma2 | thm2 | uniqueness, or empty
  std::string cone = "dim=1";

  std::vector<std::filesystem::path> inputs;
  std::filesystem::path a;
  std::filesystem::path b;
  std::filesystem::path out;
  std::filesystem::path json;
  std::filesystem::path witness;
  std::filesystem::path csv_dir;
  OutputFormat format = OutputFormat::Json;
  bool timings = false;

  unsigned k = 2;
  std::optional<std::string> r;
  std::optional<std::string> h;
  unsigned k_max = 6;

  std::uint64_t seed = kDefaultSeed;
  unsigned trials = 1000;
  unsigned max_atoms = 30;
  unsigned K = 6;
  bool constructive = true;

  double L = 200.0;
  std::size_t N = std::size_t{1} << 16;
  double tol = 0.02;
};

/// Parses argv into a config. Returns the exit status on --help, --version or a usage
/// error (after printing the message), std::nullopt otherwise.
std::optional<ExitStatus> parse(int argc, const char* const* argv, ExperimentConfig& cfg, std::ostream& out,
                                std::ostream& err);

ExitStatus run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

/// parse + run, mapping every exception to its exit status.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace conelab::cli
