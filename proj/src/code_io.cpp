#include "codequiv/code_io.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace codequiv {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& msg) {
  throw Error(ErrorKind::Parse,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
}

std::uint64_t to_uint(const Token& t, std::size_t line) {
  if (t.text.empty() || t.text.size() > 19) fail(line, t.column, "expected a non-negative integer, got '" + t.text + "'");
  std::uint64_t v = 0;
  for (char c : t.text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      fail(line, t.column, "expected a non-negative integer, got '" + t.text + "'");
    }
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

FieldPtr field_from_tokens(const std::vector<Token>& toks, std::size_t line) {
  if (toks.empty() || toks[0].text != "field") fail(line, toks.empty() ? 1 : toks[0].column, "expected 'field'");
  if (toks.size() < 2) fail(line, toks[0].column + 5, "missing characteristic");
  const std::uint64_t p = to_uint(toks[1], line);
  if (p >= (std::uint64_t{1} << 31)) fail(line, toks[1].column, "characteristic must be below 2^31");
  try {
    if (toks.size() == 2) return Field::prime(static_cast<std::uint32_t>(p));
    const std::uint64_t m = to_uint(toks[2], line);
    if (m == 0 || m > 32) fail(line, toks[2].column, "extension degree out of range");
    if (m == 1 && toks.size() == 3) return Field::prime(static_cast<std::uint32_t>(p));
    if (toks.size() != 3 + m + 1) {
      fail(line, toks[2].column, "expected " + std::to_string(m + 1) + " modulus coefficients");
    }
    std::vector<std::uint32_t> modulus;
    for (std::size_t i = 3; i < toks.size(); ++i) {
      const auto c = to_uint(toks[i], line);
      if (c >= p) fail(line, toks[i].column, "modulus coefficient not below p");
      modulus.push_back(static_cast<std::uint32_t>(c));
    }
    return Field::extension(static_cast<std::uint32_t>(p), static_cast<unsigned>(m), std::move(modulus));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    fail(line, toks[1].column, e.what());
  }
}

}  // namespace

FieldPtr parse_field_header(const std::string& line) { return field_from_tokens(tokenize(line), 1); }

LinearCode parse_code(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  FieldPtr field;
  std::optional<std::pair<std::size_t, std::size_t>> shape;  // (k, n)
  std::vector<std::vector<std::uint32_t>> rows;

  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto toks = tokenize(raw);
    if (toks.empty() || toks[0].text[0] == '#') continue;

    if (!field) {
      field = field_from_tokens(toks, line_no);
      continue;
    }
    if (!shape) {
      if (toks[0].text != "code") fail(line_no, toks[0].column, "expected 'code k n'");
      if (toks.size() != 3) fail(line_no, toks[0].column, "expected 'code k n'");
      const auto k = to_uint(toks[1], line_no);
      const auto n = to_uint(toks[2], line_no);
      if (k > n) fail(line_no, toks[1].column, "dimension k exceeds length n");
      if (n > (1u << 24)) fail(line_no, toks[2].column, "length too large");
      shape = {static_cast<std::size_t>(k), static_cast<std::size_t>(n)};
      continue;
    }
    if (rows.size() == shape->first) fail(line_no, toks[0].column, "more rows than declared");
    if (toks.size() != shape->second) {
      fail(line_no, toks.size() < shape->second ? raw.size() + 1 : toks[shape->second].column,
           "expected " + std::to_string(shape->second) + " entries, got " + std::to_string(toks.size()));
    }
    std::vector<std::uint32_t> row;
    row.reserve(toks.size());
    for (const auto& t : toks) {
      const auto v = to_uint(t, line_no);
      if (v >= field->order()) fail(line_no, t.column, "entry " + t.text + " not below " + std::to_string(field->order()));
      row.push_back(static_cast<std::uint32_t>(v));
    }
    rows.push_back(std::move(row));
  }
  if (!field) fail(line_no + 1, 1, "missing 'field' header");
  if (!shape) fail(line_no + 1, 1, "missing 'code k n' line");
  if (rows.size() != shape->first) {
    fail(line_no + 1, 1, "expected " + std::to_string(shape->first) + " rows, got " + std::to_string(rows.size()));
  }
  Matrix g(field, shape->first, shape->second);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < shape->second; ++j) g(i, j) = Elem{rows[i][j]};
  }
  LinearCode code(g);
  if (code.dimension() != shape->first) {
    fail(line_no + 1, 1, "rows are linearly dependent (rank " + std::to_string(code.dimension()) +
                             " < k = " + std::to_string(shape->first) + ")");
  }
  return code;
}

LinearCode read_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_code(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

std::string format_matrix(const Matrix& m) { return to_string(m); }

std::string format_code(const LinearCode& code) {
  std::ostringstream os;
  os << code.field().header() << '\n';
  os << "code " << code.dimension() << ' ' << code.length() << '\n';
  os << format_matrix(code.generator());
  return os.str();
}

void write_code_file(const std::string& path, const LinearCode& code) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
  out << format_code(code);
}

}  // namespace codequiv
