#include "conelab/report.hpp"

#include <algorithm>

namespace conelab {

std::string_view to_string(Claim claim) {
  switch (claim) {
    case Claim::Thm1: return "Thm1";
    case Claim::Thm2: return "Thm2";
    case Claim::Lemma1: return "Lemma1";
    case Claim::Lemma2: return "Lemma2";
    case Claim::Thm3Search: return "Thm3Search";
    case Claim::Identity: return "Identity";
    case Claim::HalfPlaneCounterexample: return "HalfPlaneCounterexample";
  }
  return "?";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not_applicable";
  }
  return "?";
}

bool CheckReport::hypothesis(std::string name, bool satisfied, std::string detail) {
  hypotheses_.push_back({std::move(name), satisfied, std::move(detail)});
  return satisfied;
}

bool CheckReport::hypotheses_satisfied() const noexcept {
  return std::all_of(hypotheses_.begin(), hypotheses_.end(), [](const Hypothesis& h) { return h.satisfied; });
}

void CheckReport::conclude(bool holds, nlohmann::json witness) {
  if (!hypotheses_satisfied()) return;
  concluded_ = true;
  holds_ = holds;
  if (holds) {
    witness_.reset();
  } else {
    witness_ = witness.is_null() ? nlohmann::json::object() : std::move(witness);
  }
}

Verdict CheckReport::verdict() const noexcept {
  if (!concluded_) return Verdict::NotApplicable;
  return holds_ ? Verdict::Pass : Verdict::Fail;
}

nlohmann::json to_json(const CheckReport& report, bool include_timings) {
  nlohmann::json hyps = nlohmann::json::array();
  for (const auto& h : report.hypotheses()) {
    nlohmann::json entry{{"name", h.name}, {"satisfied", h.satisfied}};
    if (!h.detail.empty()) entry["detail"] = h.detail;
    hyps.push_back(std::move(entry));
  }
  nlohmann::json out{
      {"schema_version", std::string(kReportSchemaVersion)},
      {"claim", std::string(to_string(report.claim()))},
      {"verdict", std::string(to_string(report.verdict()))},
      {"hypotheses_satisfied", report.hypotheses_satisfied()},
      {"hypotheses", std::move(hyps)},
      {"conclusion_holds", report.conclusion_holds()},
      {"computed", report.computed},
  };
  if (report.witness()) out["witness"] = *report.witness();
  if (report.seed) out["seed"] = *report.seed;
  if (include_timings) out["timings_ms"] = report.timings_ms;
  return out;
}

}  // namespace conelab
