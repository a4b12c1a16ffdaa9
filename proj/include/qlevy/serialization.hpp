#pragma once

// JSON encodings. Complex leaves are either a number or a [re, im] pair;
// matrices are arrays of rows. Step-function breakpoints may be numbers or
// "p/q" strings, the latter compared exactly when merging.

#include <filesystem>
#include <json.hpp>

#include "qlevy/bialgebra.hpp"
#include "qlevy/convolution.hpp"
#include "qlevy/schurmann.hpp"
#include "qlevy/step_function.hpp"

namespace qlevy::io {

using Json = nlohmann::json;

Json to_json(cplx z);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const BialgebraDescriptor& B);
Json to_json(const Functional& f);
Json to_json(const KernelMap& phi);
Json to_json(const StepFunction& f);
Json to_json(const SchurmannTriple& t);

/// Throw Error{parse} on malformed input and Error{shape} on inconsistent sizes.
cplx complex_from_json(const Json& j);
Vector vector_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);
BialgebraDescriptor descriptor_from_json(const Json& j);
Functional functional_from_json(const Json& j);
KernelMap kernel_map_from_json(const Json& j);
StepFunction step_function_from_json(const Json& j);
GroupTable group_table_from_json(const Json& j);
Rational parse_rational(const std::string& s);

/// Throws Error{io} when the file cannot be read and Error{parse} on bad JSON.
Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

BialgebraDescriptor load_descriptor(const std::filesystem::path& path);
void save_descriptor(const std::filesystem::path& path, const BialgebraDescriptor& B);

}  // namespace qlevy::io
