#pragma once

#include <string>

#include "codequiv/code.hpp"

namespace codequiv {

// Text format:
//
//   field p [m c0 c1 ... cm]
//   code k n
//   <k rows of n integers in [0, p^m)>
//
// '#' starts a comment line. Rows need not be reduced; they must be
// independent. Parse errors carry "line L, column C" positions.
LinearCode parse_code(const std::string& text);
LinearCode read_code_file(const std::string& path);

// Parses just a "field ..." header line.
FieldPtr parse_field_header(const std::string& line);

// Canonical (RREF) rendering; parse_code(format_code(c)) == c.
std::string format_code(const LinearCode& code);
void write_code_file(const std::string& path, const LinearCode& code);

// Matrix rows in the same integer encoding, one row per line.
std::string format_matrix(const Matrix& m);

}  // namespace codequiv
