#include "schwarz_atlas/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace schwarz_atlas::report {

namespace {

bool ends_with_residual(const std::string& key) {
  static const std::string suffix = "_residual";
  return key.size() > suffix.size() && key.compare(key.size() - suffix.size(), suffix.size(), suffix) == 0;
}

const std::vector<std::string>& module_names() {
  static const std::vector<std::string> names{"exact", "roots", "gauss", "triangle",
                                              "torussystem", "schwarzcond", "cli"};
  return names;
}

}  // namespace

json rational(const Rational& r) { return r.num().str() + "/" + r.den().str(); }

json rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(rational(r));
  return out;
}

json complex(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json complex_matrix(const Eigen::MatrixXcd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

json complex_vector(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex(v(i)));
  return out;
}

json to_json(const Envelope& e) {
  for (auto it = e.residuals.begin(); it != e.residuals.end(); ++it)
    if (!ends_with_residual(it.key())) throw std::logic_error("residual key without suffix: " + it.key());
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["module"] = e.module;
  doc["operation"] = e.operation;
  doc["inputs"] = e.inputs;
  doc["results"] = e.results;
  doc["residuals"] = e.residuals;
  doc["paper_refs"] = e.paper_refs;
  return doc;
}

json schema() {
  json rational_string = {{"type", "string"}, {"pattern", "^-?[0-9]+/[0-9]+$"}};
  json s;
  s["$schema"] = "https://json-schema.org/draft/2020-12/schema";
  s["$id"] = std::string("urn:schwarz-atlas:report:") + kSchemaVersion;
  s["title"] = "schwarz-atlas report";
  s["type"] = "object";
  s["required"] = {"schema_version", "module", "operation", "inputs", "results", "residuals", "paper_refs"};
  s["additionalProperties"] = false;
  s["properties"] = {
      {"schema_version", {{"const", kSchemaVersion}}},
      {"module", {{"enum", module_names()}}},
      {"operation", {{"type", "string"}, {"minLength", 1}}},
      {"inputs", {{"type", "object"}}},
      {"results", {{"type", "object"}}},
      {"residuals",
       {{"type", "object"},
        {"propertyNames", {{"pattern", "_residual$"}}},
        {"additionalProperties", {{"type", "number"}, {"minimum", 0}}}}},
      {"paper_refs",
       {{"type", "array"},
        {"minItems", 1},
        {"items", {{"type", "string"}, {"pattern", "^(claim|invented):[a-z0-9-]+$"}}}}}};
  s["$defs"] = {{"rational", rational_string},
                {"complex", {{"type", "array"}, {"prefixItems", {{{"type", "number"}}, {{"type", "number"}}}},
                             {"minItems", 2}, {"maxItems", 2}}}};
  return s;
}

std::string envelope_problem(const json& doc) {
  if (!doc.is_object()) return "document is not an object";
  for (const char* key : {"schema_version", "module", "operation", "inputs", "results", "residuals", "paper_refs"})
    if (!doc.contains(key)) return std::string("missing key ") + key;
  if (doc.size() != 7) return "unexpected top-level key";
  if (doc["schema_version"] != kSchemaVersion) return "schema version mismatch";
  const auto& names = module_names();
  if (!doc["module"].is_string() ||
      std::find(names.begin(), names.end(), doc["module"].get<std::string>()) == names.end())
    return "unknown module";
  if (!doc["inputs"].is_object() || !doc["results"].is_object()) return "inputs/results must be objects";
  if (!doc["residuals"].is_object()) return "residuals must be an object";
  for (auto it = doc["residuals"].begin(); it != doc["residuals"].end(); ++it) {
    if (!ends_with_residual(it.key())) return "bad residual key " + it.key();
    if (!it.value().is_number() || it.value().get<double>() < 0) return "bad residual value " + it.key();
  }
  if (!doc["paper_refs"].is_array() || doc["paper_refs"].empty()) return "paper_refs empty";
  for (const auto& ref : doc["paper_refs"])
    if (!ref.is_string()) return "paper_refs entry not a string";
  return {};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace schwarz_atlas::report
