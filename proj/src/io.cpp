#include "kreinlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace kreinlab {

namespace {

const std::vector<std::string> kRoles = {"metric", "hamiltonian", "symmetry", "gradation"};

double finite_or_throw(double x) {
  if (!std::isfinite(x)) throw InvalidInput("only finite values can be serialized");
  return x;
}

json pair_of(cplx z) { return json::array({finite_or_throw(z.real()), finite_or_throw(z.imag())}); }

cplx pair_from(const json& p, const char* what) {
  if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
    throw ParseError(std::string(what) + ": expected a [re, im] pair");
  return {p[0].get<double>(), p[1].get<double>()};
}

void require_schema(const json& j, const char* schema) {
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  if (!j.contains("schema") || !j["schema"].is_string())
    throw ParseError("document has no \"schema\" field");
  if (j["schema"].get<std::string>() != schema)
    throw ParseError("unsupported schema \"" + j["schema"].get<std::string>() + "\", expected \"" +
                     schema + "\"");
}

std::vector<int> sign_list(const json& j, const char* key, int n) {
  if (!j.contains(key) || !j[key].is_array()) throw ParseError(std::string("missing list \"") + key + "\"");
  const json& a = j[key];
  if (int(a.size()) != n)
    throw DimensionMismatch(std::string("\"") + key + "\" has " + std::to_string(a.size()) +
                            " entries for a group of order " + std::to_string(n));
  std::vector<int> out;
  for (const auto& v : a) {
    if (!v.is_number_integer()) throw ParseError(std::string("\"") + key + "\" must hold ±1 integers");
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

bool bit_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return a.size() == 0 ||
         std::memcmp(a.data(), b.data(), sizeof(cplx) * std::size_t(a.size())) == 0;
}

bool MatrixDocument::operator==(const MatrixDocument& o) const {
  return bit_equal(matrix, o.matrix) && role == o.role && varpi == o.varpi;
}

json to_json(const MatrixDocument& doc) {
  if (doc.matrix.rows() != doc.matrix.cols()) throw DimensionMismatch("matrix document must be square");
  json j;
  j["schema"] = kMatrixSchema;
  j["dimension"] = doc.matrix.rows();
  json entries = json::array();
  for (Eigen::Index r = 0; r < doc.matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < doc.matrix.cols(); ++c) entries.push_back(pair_of(doc.matrix(r, c)));
  j["entries"] = std::move(entries);
  if (doc.role) j["role"] = *doc.role;
  if (doc.varpi) j["varpi"] = *doc.varpi;
  return j;
}

MatrixDocument matrix_from_json(const json& j) {
  require_schema(j, kMatrixSchema);
  if (!j.contains("dimension") || !j["dimension"].is_number_integer())
    throw ParseError("matrix document needs an integer \"dimension\"");
  const long long n = j["dimension"].get<long long>();
  if (n < 0) throw ParseError("negative dimension");
  if (!j.contains("entries") || !j["entries"].is_array()) throw ParseError("missing \"entries\" array");
  const json& e = j["entries"];
  if ((long long)e.size() != n * n)
    throw DimensionMismatch("dimension " + std::to_string(n) + " needs " + std::to_string(n * n) +
                            " entries, found " + std::to_string(e.size()));
  MatrixDocument doc;
  doc.matrix.resize(n, n);
  for (long long k = 0; k < n * n; ++k) doc.matrix(k / n, k % n) = pair_from(e[k], "entries");
  if (j.contains("role")) {
    if (!j["role"].is_string()) throw ParseError("\"role\" must be a string");
    std::string r = j["role"].get<std::string>();
    if (std::find(kRoles.begin(), kRoles.end(), r) == kRoles.end())
      throw ParseError("unknown role \"" + r + "\"");
    doc.role = r;
  }
  if (j.contains("varpi")) {
    if (!j["varpi"].is_number_integer()) throw ParseError("\"varpi\" must be ±1");
    int v = j["varpi"].get<int>();
    if (v != 1 && v != -1) throw ParseError("\"varpi\" must be ±1");
    doc.varpi = v;
  }
  return doc;
}

json to_json(const TwistDocument& doc) {
  const TwistData& t = doc.twist;
  json j;
  j["schema"] = kTwistSchema;
  j["labels"] = t.group.labels;
  j["table"] = t.group.table;
  j["unit"] = t.group.unit;
  j["varpi"] = t.varpi;
  j["wp"] = t.wp;
  j["c"] = t.c;
  json tau = json::array();
  for (const auto& row : t.tau) {
    json r = json::array();
    for (const auto& p : row) r.push_back(pair_of(p.value));
    tau.push_back(std::move(r));
  }
  j["tau"] = std::move(tau);
  j["metadata"] = doc.metadata;
  return j;
}

TwistDocument twist_from_json(const json& j) {
  require_schema(j, kTwistSchema);
  if (!j.contains("table") || !j["table"].is_array()) throw ParseError("missing \"table\"");
  std::vector<std::vector<int>> table;
  for (const auto& row : j["table"]) {
    if (!row.is_array()) throw ParseError("\"table\" rows must be arrays");
    std::vector<int> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw ParseError("\"table\" entries must be integers");
      r.push_back(v.get<int>());
    }
    table.push_back(std::move(r));
  }
  const int n = int(table.size());
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw ParseError("\"labels\" must be an array");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw ParseError("\"labels\" must hold strings");
      labels.push_back(l.get<std::string>());
    }
    if (int(labels.size()) != n) throw DimensionMismatch("\"labels\" and \"table\" differ in size");
  } else {
    for (int k = 0; k < n; ++k) labels.push_back("g" + std::to_string(k));
  }
  TwistDocument doc;
  TwistData& t = doc.twist;
  t.group = FiniteGroupData::from_table(labels, table);
  if (j.contains("unit") && (!j["unit"].is_number_integer() || j["unit"].get<int>() != t.group.unit))
    throw InvalidInput("\"unit\" does not match the identity of the table");
  t.varpi = sign_list(j, "varpi", n);
  t.wp = sign_list(j, "wp", n);
  t.c = sign_list(j, "c", n);
  if (!j.contains("tau") || !j["tau"].is_array() || int(j["tau"].size()) != n)
    throw DimensionMismatch("\"tau\" must be a |G|×|G| table");
  for (const auto& row : j["tau"]) {
    if (!row.is_array() || int(row.size()) != n) throw DimensionMismatch("\"tau\" must be a |G|×|G| table");
    std::vector<Phase> r;
    for (const auto& p : row) r.push_back(Phase::from_complex(pair_from(p, "tau")));
    t.tau.push_back(std::move(r));
  }
  if (j.contains("metadata")) doc.metadata = j["metadata"];
  TwistVerdict v = validate_twist(t);
  if (!v.ok) throw InvalidInput("twist document rejected: " + v.failure);
  return doc;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

std::vector<MatrixDocument> read_matrix_documents(const std::string& path) {
  json j = read_json_file(path);
  std::vector<MatrixDocument> out;
  if (j.is_array()) {
    for (const auto& d : j) out.push_back(matrix_from_json(d));
  } else {
    out.push_back(matrix_from_json(j));
  }
  return out;
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace kreinlab
