#pragma once

#include "qfp/matrix.hpp"
#include "qfp/rational.hpp"

#include <string>

namespace qfp {

/// Text: first line "n", then n rows of integers. JSON: {"n": n, "entries": [[...]]}.
/// The format is detected from the first non-blank character.
SymmetricIntMatrix parse_symmetric_matrix(const std::string& content);

/// Text: first line "rows cols" (or "n" for a square matrix), then rows of
/// "p" or "p/q" entries. JSON: {"rows", "cols", "entries"} with integer or
/// "p/q" string entries ("n" accepted for square input).
RationalMatrix parse_rational_matrix(const std::string& content);

/// FileNotFound when the path cannot be opened.
std::string read_file(const std::string& path);
SymmetricIntMatrix load_symmetric_matrix(const std::string& path);
RationalMatrix load_rational_matrix(const std::string& path);

std::string format_matrix_text(const SymmetricIntMatrix& a);

}  // namespace qfp
