#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "conelab/measure.hpp"
#include "conelab/radical.hpp"
#include "conelab/report.hpp"

namespace conelab {

// Measure files:
//   {"dim": n, "mode": "exact" | "float",
//    "atoms": [{"x": [...], "w": ...}, ...]}
// Exact scalars are strings "p/q" (or "p"); float scalars are JSON numbers. Atoms may be
// unsorted and repeated; loading canonicalizes. Float files may carry "zero_threshold".

nlohmann::json measure_to_json(const ExactMeasure& m);
nlohmann::json measure_to_json(const FloatMeasure& m);
nlohmann::json measure_to_json(const AnyMeasure& m);

/// Throws ParseError whose where() is a JSON pointer to the offending field.
AnyMeasure measure_from_json(const nlohmann::json& j);

/// Throws ParseError with "line:column" for malformed JSON or a field pointer for schema
/// violations, and Error when the file cannot be read.
AnyMeasure load_measure(const std::filesystem::path& path);
void save_measure(const AnyMeasure& m, const std::filesystem::path& path);

/// Exact measure held by `m`; throws ModeMismatch for float measures.
const ExactMeasure& expect_exact(const AnyMeasure& m, const std::string& what);

/// {"exact": "a+m*sqrt(q)", "approx": double}
nlohmann::json support_to_json(const ConeSupportValue& v);
nlohmann::json support_to_json(const RadicalSum& v);

/// Canonical text of a report: two-space indented JSON plus trailing newline.
std::string dump_report(const CheckReport& report, bool include_timings = false);
void save_report(const CheckReport& report, const std::filesystem::path& path, bool include_timings = false);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace conelab
