#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "moi/bounds.hpp"
#include "moi/moi_eval.hpp"

namespace moi {

using Json = nlohmann::json;

// Complex scalars are [re, im] pairs (a bare number is read as real);
// matrices are lists of rows; exponents are numbers or the string "inf".

Json to_json(Complex z);
Json to_json(const ComplexMatrix& m);
Json to_json(SchattenExponent p);
Json to_json(const FiniteSpectralMeasure& e);
Json to_json(const Integrand& psi);
Json to_json(const BoundReport& rep);

Complex complex_from_json(const Json& j);
ComplexMatrix matrix_from_json(const Json& j);
SchattenExponent exponent_from_json(const Json& j);

/// Explicit {"dim", "atoms": [{"point", "projection"}]} or implicit
/// {"hermitian": matrix, "merge_tol"?}.
FiniteSpectralMeasure measure_from_json(const Json& j);

/// {"projective": {...}}, {"haagerup": {...}} or {"haagerup_like": {...}}.
Integrand integrand_from_json(const Json& j);

struct InstanceFile {
  MoiInstance instance;
  std::optional<SchattenExponent> p;
  std::optional<SchattenExponent> q;
};

/// Throws InvalidInput on malformed documents and on instances that fail
/// check_instance (measures included).
InstanceFile instance_from_json(const Json& j);
Json to_json(const InstanceFile& file);

InstanceFile read_instance_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace moi
