#include "conelab/io.hpp"

#include <fstream>
#include <sstream>

namespace conelab {
namespace {

using nlohmann::json;

std::string pointer(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

Rational exact_scalar(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where, e.message());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ParseError(where, "exact scalars must be \"p/q\" strings");
}

double float_scalar(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where, "float scalars must be JSON numbers");
  return v.get<double>();
}

template <Scalar S>
BasicMeasure<S> atoms_from_json(const json& j, std::size_t dim, double threshold) {
  const auto it = j.find("atoms");
  if (it == j.end() || !it->is_array()) throw ParseError("/atoms", "missing atoms array");
  std::vector<Atom<S>> atoms;
  atoms.reserve(it->size());
  for (std::size_t i = 0; i < it->size(); ++i) {
    const auto& a = (*it)[i];
    const std::string at = pointer("/atoms", i);
    if (!a.is_object() || !a.contains("x") || !a.contains("w")) throw ParseError(at, "atom needs \"x\" and \"w\"");
    const auto& xs = a["x"];
    if (!xs.is_array() || xs.size() != dim) {
      throw ParseError(at + "/x", "expected " + std::to_string(dim) + " coordinates");
    }
    Atom<S> atom;
    for (std::size_t d = 0; d < dim; ++d) {
      if constexpr (is_exact_v<S>) {
        atom.x.push_back(exact_scalar(xs[d], pointer(at + "/x", d)));
      } else {
        atom.x.push_back(float_scalar(xs[d], pointer(at + "/x", d)));
      }
    }
    if constexpr (is_exact_v<S>) {
      atom.w = exact_scalar(a["w"], at + "/w");
    } else {
      atom.w = float_scalar(a["w"], at + "/w");
    }
    atoms.push_back(std::move(atom));
  }
  return BasicMeasure<S>(dim, std::move(atoms), threshold);
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

json measure_to_json(const ExactMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms()) {
    json x = json::array();
    for (const auto& c : a.x) x.push_back(to_string(c));
    atoms.push_back({{"x", std::move(x)}, {"w", to_string(a.w)}});
  }
  return {{"dim", m.dim()}, {"mode", "exact"}, {"atoms", std::move(atoms)}};
}

json measure_to_json(const FloatMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms()) atoms.push_back({{"x", a.x}, {"w", a.w}});
  json out{{"dim", m.dim()}, {"mode", "float"}, {"atoms", std::move(atoms)}};
  if (m.zero_threshold() != kDefaultFloatThreshold) out["zero_threshold"] = m.zero_threshold();
  return out;
}

json measure_to_json(const AnyMeasure& m) {
  return std::visit([](const auto& x) { return measure_to_json(x); }, m);
}

AnyMeasure measure_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("", "measure must be a JSON object");
  const auto dim_it = j.find("dim");
  if (dim_it == j.end() || !dim_it->is_number_unsigned() || dim_it->get<std::size_t>() == 0) {
    throw ParseError("/dim", "dim must be a positive integer");
  }
  const auto dim = dim_it->get<std::size_t>();
  const std::string mode = j.value("mode", std::string("exact"));
  try {
    if (mode == "exact") return atoms_from_json<Rational>(j, dim, 0.0);
    if (mode == "float") {
      double thr = kDefaultFloatThreshold;
      if (j.contains("zero_threshold")) thr = float_scalar(j["zero_threshold"], "/zero_threshold");
      if (thr < 0) throw ParseError("/zero_threshold", "must be non-negative");
      return atoms_from_json<double>(j, dim, thr);
    }
  } catch (const DimensionMismatch& e) {
    throw ParseError("/atoms", e.what());
  }
  throw ParseError("/mode", "mode must be \"exact\" or \"float\"");
}

AnyMeasure load_measure(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    throw ParseError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col), "malformed JSON");
  }
  try {
    return measure_from_json(j);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + "#" + e.where(), e.message());
  }
}

void save_measure(const AnyMeasure& m, const std::filesystem::path& path) {
  write_text_file(path, measure_to_json(m).dump(2) + "\n");
}

const ExactMeasure& expect_exact(const AnyMeasure& m, const std::string& what) {
  if (const auto* e = std::get_if<ExactMeasure>(&m)) return *e;
  throw ModeMismatch(what + " must be an exact-mode measure");
}

json support_to_json(const ConeSupportValue& v) { return {{"exact", v.to_string()}, {"approx", v.approx()}}; }
json support_to_json(const RadicalSum& v) { return {{"exact", v.to_string()}, {"approx", v.approx()}}; }

std::string dump_report(const CheckReport& report, bool include_timings) {
  return to_json(report, include_timings).dump(2) + "\n";
}

void save_report(const CheckReport& report, const std::filesystem::path& path, bool include_timings) {
  write_text_file(path, dump_report(report, include_timings));
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

}  // namespace conelab
