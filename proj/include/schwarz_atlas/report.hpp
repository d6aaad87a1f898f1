#pragma once

// JSON envelope shared by every machine-readable output, plus the
// serializers for the value types that appear in it.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "schwarz_atlas/exact.hpp"

namespace schwarz_atlas::report {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0.0";

/// Always "p/q", including integers ("3/1").
json rational(const Rational& r);
json rationals(const std::vector<Rational>& v);
/// [re, im]
json complex(std::complex<double> z);
json complex_matrix(const Eigen::MatrixXcd& m);
json complex_vector(const Eigen::VectorXcd& v);

struct Envelope {
  std::string module;
  std::string operation;
  json inputs = json::object();
  json results = json::object();
  /// Keys must end in "_residual"; values are numbers.
  json residuals = json::object();
  std::vector<std::string> paper_refs;
};

/// Throws std::logic_error when a residual key breaks the naming rule.
json to_json(const Envelope& e);

/// JSON Schema (draft 2020-12) for to_json output.
json schema();

/// Structural check of an envelope against schema() without a validator:
/// required keys, types, residual naming. Empty string when valid.
std::string envelope_problem(const json& doc);

/// Deterministic serialization: two-space indent, trailing newline.
std::string dump(const json& doc);

}  // namespace schwarz_atlas::report
