#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kreinlab/twistkit.hpp"

namespace kreinlab {

using json = nlohmann::json;

inline const char* kMatrixSchema = "kreinlab.matrix/1";
inline const char* kTwistSchema = "kreinlab.twist/1";

struct MatrixDocument {
  ComplexMatrix matrix;
  std::optional<std::string> role;  // metric, hamiltonian, symmetry, gradation
  std::optional<int> varpi;         // -1 marks an anti-linear operator

  Eigen::Index dimension() const { return matrix.rows(); }
  bool operator==(const MatrixDocument& o) const;
};

struct TwistDocument {
  TwistData twist;
  json metadata = json::object();
};

// Entries are written as [re, im] pairs in row-major order; doubles keep
// their shortest round-trip representation, so parse(serialize(x)) == x bit for bit.
json to_json(const MatrixDocument& doc);
MatrixDocument matrix_from_json(const json& j);

json to_json(const TwistDocument& doc);
// Throws InvalidInput when the twist fails validate_twist.
TwistDocument twist_from_json(const json& j);

// Throws ParseError on malformed text.
json parse_json_text(const std::string& text);
json read_json_file(const std::string& path);

// A file holds one document or an array of them.
std::vector<MatrixDocument> read_matrix_documents(const std::string& path);

// Deterministic rendering used by every report.
std::string dump(const json& j);

// Bitwise equality, -0.0 and NaN payloads included.
bool bit_equal(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace kreinlab
