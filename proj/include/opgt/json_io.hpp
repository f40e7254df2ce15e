#pragma once

#include "opgt/linalg.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace opgt {

using Json = nlohmann::ordered_json;

/// Malformed input. The message carries a JSON-pointer style location.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what) {}
};

/// {"rows":r,"cols":c,"re":[...],"im":[...]}, entries row-major.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, const std::string& where);

Json matrices_to_json(const std::vector<ComplexMatrix>& ms);
std::vector<ComplexMatrix> matrices_from_json(const Json& j, const std::string& where);

Json vector_to_json(const RealVector& v);
RealVector real_vector_from_json(const Json& j, const std::string& where);

/// Real matrix from comma-separated rows; blank lines and lines starting
/// with '#' are skipped.
ComplexMatrix matrix_from_csv(const std::string& text, const std::string& where);

/// Reads and parses a JSON file; parse failures become InputError.
Json load_json_file(const std::string& path);

}  // namespace opgt
