#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "unitarize/grid_examples.h"
#include "unitarize/linalg.h"

namespace unitarize::cli {

using nlohmann::json;

/// {"dim": n, "data": [[re, im], ...]} row-major with n^2 entries.
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j, const std::string& what);

/// Matrix payload plus "kind": "hermitian_form".
json form_to_json(const HermitianForm& h);
HermitianForm form_from_json(const json& j, const std::string& what, double psd_tol);

/// {"kind": "vector", "dim": n, "data": [[re, im], ...]}.
json vector_to_json(const CVector& v);
CVector vector_from_json(const json& j, const std::string& what);

json complex_to_json(Complex z);

/// {"kind": "...", "grid_size": N, "shift": a, "rho" | "mu" | "phi" | "g": [...]}.
GridOperatorSpec grid_spec_from_json(const json& j);

/// Parses a file, or standard input for "-". Throws kInvalidInput with the
/// parser's byte position on malformed input.
json read_json(const std::string& path);

}  // namespace unitarize::cli
