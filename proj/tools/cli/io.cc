#include "cli/io.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace unitarize::cli {

namespace {

[[noreturn]] void bad(const std::string& what, const std::string& msg) {
  throw Error(ErrorKind::kInvalidInput, what + ": " + msg, what);
}

Complex entry(const json& e, const std::string& what) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
    bad(what, "entries must be [re, im] number pairs");
  }
  return {e[0].get<double>(), e[1].get<double>()};
}

Index dim_of(const json& j, const std::string& what) {
  if (!j.is_object()) bad(what, "expected a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) bad(what, "missing integer 'dim'");
  const auto n = j["dim"].get<long long>();
  if (n < 1) bad(what, "'dim' must be positive");
  if (!j.contains("data") || !j["data"].is_array()) bad(what, "missing array 'data'");
  return static_cast<Index>(n);
}

json reals(const json& j, const char* key) {
  if (!j.contains(key)) return json();
  if (!j[key].is_array()) {
    throw Error(ErrorKind::kInvalidInput, std::string("grid spec field '") + key +
                                              "' must be an array of numbers");
  }
  return j[key];
}

Eigen::VectorXd vector_of(const json& arr, const char* key) {
  if (arr.is_null()) return {};
  Eigen::VectorXd v(static_cast<Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw Error(ErrorKind::kInvalidInput,
                  std::string("grid spec field '") + key + "' must hold numbers");
    }
    v(static_cast<Index>(i)) = arr[i].get<double>();
  }
  return v;
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const CMatrix& m) {
  json data = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index k = 0; k < m.cols(); ++k) data.push_back(complex_to_json(m(i, k)));
  }
  return {{"dim", m.rows()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const json& j, const std::string& what) {
  const Index n = dim_of(j, what);
  const json& data = j["data"];
  if (static_cast<Index>(data.size()) != n * n) {
    bad(what, "'data' has " + std::to_string(data.size()) + " entries, expected " +
                  std::to_string(n * n));
  }
  CMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < n; ++k) {
      m(i, k) = entry(data[static_cast<std::size_t>(i * n + k)], what);
    }
  }
  return m;
}

json form_to_json(const HermitianForm& h) {
  json j = matrix_to_json(h.gram());
  j["kind"] = "hermitian_form";
  return j;
}

HermitianForm form_from_json(const json& j, const std::string& what, double psd_tol) {
  if (j.is_object() && j.contains("kind") && j["kind"] != "hermitian_form") {
    bad(what, "'kind' must be \"hermitian_form\"");
  }
  return HermitianForm(matrix_from_json(j, what), psd_tol);
}

json vector_to_json(const CVector& v) {
  json data = json::array();
  for (Index i = 0; i < v.size(); ++i) data.push_back(complex_to_json(v(i)));
  return {{"kind", "vector"}, {"dim", v.size()}, {"data", std::move(data)}};
}

CVector vector_from_json(const json& j, const std::string& what) {
  const Index n = dim_of(j, what);
  const json& data = j["data"];
  if (static_cast<Index>(data.size()) != n) {
    bad(what, "vector 'data' has " + std::to_string(data.size()) + " entries, expected " +
                  std::to_string(n));
  }
  CVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = entry(data[static_cast<std::size_t>(i)], what);
  return v;
}

GridOperatorSpec grid_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw Error(ErrorKind::kInvalidInput, "grid spec needs a string 'kind'");
  }
  if (!j.contains("grid_size") || !j["grid_size"].is_number_integer()) {
    throw Error(ErrorKind::kInvalidInput, "grid spec needs an integer 'grid_size'");
  }
  GridOperatorSpec s;
  s.kind = grid_kind_from_string(j["kind"].get<std::string>());
  s.grid_size = j["grid_size"].get<int>();
  if (j.contains("shift")) {
    if (!j["shift"].is_number_integer()) {
      throw Error(ErrorKind::kInvalidInput, "grid spec 'shift' must be an integer");
    }
    s.shift = j["shift"].get<int>();
  }
  s.rho = vector_of(reals(j, "rho"), "rho");
  s.mu = vector_of(reals(j, "mu"), "mu");
  s.phi = vector_of(reals(j, "phi"), "phi");
  s.g = vector_of(reals(j, "g"), "g");
  return s;
}

json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::kInvalidInput, "cannot open '" + path + "'", path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kInvalidInput,
                "malformed JSON in '" + path + "' at byte " + std::to_string(e.byte) + ": " +
                    e.what(),
                path);
  }
}

}  // namespace unitarize::cli
