#pragma once

// Flat-file formats: MatrixFile JSON {"rows", "cols", "data": [[re, im], ...]}
// in row-major order, and 17-significant-digit CSV numbers.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "phqm/linalg.hpp"

namespace phqm::io {

using Json = nlohmann::ordered_json;

/// Throws ParseError on a malformed document, NonFinite on inf/nan entries.
ComplexMatrix matrix_from_json(const Json& doc);
Json matrix_to_json(const ComplexMatrix& m);

ComplexMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const ComplexMatrix& m);

/// A state is a MatrixFile with one column or one row.
ComplexVector read_state(const std::filesystem::path& path);

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& doc);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Lower-case hex SHA-256 of the file contents.
std::string sha256_file(const std::filesystem::path& path);

/// Shortest form carrying 17 significant digits.
std::string format_double(double x);

}  // namespace phqm::io
