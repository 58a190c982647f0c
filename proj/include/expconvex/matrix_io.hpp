#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "expconvex/hermitian.hpp"

namespace expconvex {

using Json = nlohmann::ordered_json;

/// Matrix interchange document. Entries are row-major [re, im] pairs:
///
///   {"n": 2, "entries": [[1,0],[0,1],[0,-1],[3,0]]}
///   {"n": 2, "A": [...4 pairs...], "B": [...4 pairs...]}
struct MatrixDocument {
  Index n = 0;
  std::optional<ComplexMatrix> entries;
  std::optional<ComplexMatrix> a;
  std::optional<ComplexMatrix> b;
};

/// Throws Parse with the line/column of a syntax error, or the key and entry
/// index of a malformed matrix.
MatrixDocument parse_matrix_document(std::string_view text);
MatrixDocument read_matrix_file(const std::filesystem::path& path);

/// Reads a file holding both A and B and validates them as Hermitian.
std::pair<HermitianMatrix, HermitianMatrix> read_hermitian_pair(const std::filesystem::path& path);

Json matrix_to_json(const ComplexMatrix& m);  // {"n", "entries"} for square, {"rows","cols","entries"} otherwise
Json vector_to_json(const ComplexVector& v);  // array of [re, im]
Json real_vector_to_json(const RealVector& v);
ComplexMatrix matrix_from_json(const Json& entries, Index rows, Index cols, std::string_view key);

Json pair_document(const ComplexMatrix& a, const ComplexMatrix& b);

/// Indented JSON with arrays of scalars kept on one line, so [re, im]
/// pairs and grids stay compact.
std::string pretty_json(const Json& doc);

/// Writes text to path, or to stdout when path is empty or "-".
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace expconvex
