#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace conelab {

/// Report schema version printed by `conelab --version`.
inline constexpr std::string_view kReportSchemaVersion = "1";

enum class Claim {
  Thm1,                     ///< convex-hull additivity of supports
  Thm2,                     ///< supp_C(b*a) = supp_C a + supp_C b
  Lemma1,
  Lemma2,
  Thm3Search,               ///< uniqueness from powers agreeing outside the cone
  Identity,                 ///< algebraic identities and unconditional inequalities
  HalfPlaneCounterexample,  ///< Fejer-kernel pair agreeing on x1 > 0
};

std::string_view to_string(Claim claim);

enum class Verdict { Pass, Fail, NotApplicable };

std::string_view to_string(Verdict verdict);

struct Hypothesis {
  std::string name;
  bool satisfied = false;
  std::string detail;
};

/// Structured verdict of one check. A conclusion is only recorded once every hypothesis
/// holds; a witness is attached exactly when the conclusion fails.
class CheckReport {
 public:
  explicit CheckReport(Claim claim) : claim_(claim) {}

  Claim claim() const noexcept { return claim_; }

  /// Records a hypothesis and returns whether it holds.
  bool hypothesis(std::string name, bool satisfied, std::string detail = {});
  const std::vector<Hypothesis>& hypotheses() const noexcept { return hypotheses_; }
  bool hypotheses_satisfied() const noexcept;

  /// Records the conclusion. Ignored (left NotApplicable) if a hypothesis failed.
  void conclude(bool holds, nlohmann::json witness = nullptr);
  bool concluded() const noexcept { return concluded_; }
  bool conclusion_holds() const noexcept { return concluded_ && holds_; }
  const std::optional<nlohmann::json>& witness() const noexcept { return witness_; }

  Verdict verdict() const noexcept;

  nlohmann::json computed = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  std::map<std::string, double> timings_ms;

 private:
  Claim claim_;
  std::vector<Hypothesis> hypotheses_;
  bool concluded_ = false;
  bool holds_ = false;
  std::optional<nlohmann::json> witness_;
};

/// JSON form of a report. Timings are wall-clock and therefore omitted unless asked for,
/// which keeps reports byte-identical across runs with the same seed.
nlohmann::json to_json(const CheckReport& report, bool include_timings = false);

}  // namespace conelab
