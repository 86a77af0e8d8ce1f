#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "codequiv/field.hpp"
#include "codequiv/permutation.hpp"

namespace codequiv {

// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldPtr field, std::size_t n);
  // Entries are element reprs; throws InvalidField on out-of-range values and
  // DimensionMismatch on ragged rows.
  static Matrix from_rows(FieldPtr field, const std::vector<std::vector<std::uint32_t>>& rows);
  static Matrix from_rows(FieldPtr field,
                          std::initializer_list<std::initializer_list<std::uint32_t>> rows);
  // Row vector.
  static Matrix row_vector(FieldPtr field, std::span<const Elem> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  const Field& field() const noexcept { return *field_; }

  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const Elem> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Elem> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  bool is_zero() const noexcept;
  bool is_square() const noexcept { return rows_ == cols_; }
  bool is_symmetric() const noexcept;

  std::vector<std::vector<std::uint32_t>> to_reprs() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

struct Rref {
  Matrix reduced;                   // same shape as the input; zero rows last
  std::vector<std::size_t> pivots;  // strictly increasing, 0-based
  std::size_t rank = 0;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
// Entrywise z -> z^(p^e).
Matrix map_entries(const Matrix& a, unsigned e);

// Gauss-Jordan, pivot = first nonzero entry in column order.
Rref rref(const Matrix& a);
std::size_t rank(const Matrix& a);
// nullopt when singular. Throws DimensionMismatch for non-square input.
std::optional<Matrix> inverse(const Matrix& a);
// Rows form a basis of {z : a z^T = 0}; cols - rank(a) rows.
Matrix right_kernel_basis(const Matrix& a);

// Column j of the result is column pi(j) of a; equals a * permutation_matrix(pi).
Matrix permute_columns(const Matrix& a, const Permutation& pi);
Matrix permutation_matrix(FieldPtr field, const Permutation& pi);
Matrix select_columns(const Matrix& a, std::span<const std::size_t> columns);
Matrix delete_column(const Matrix& a, std::size_t column);
Matrix top_rows(const Matrix& a, std::size_t count);
Matrix vstack(const Matrix& top, const Matrix& bottom);

std::string to_string(const Matrix& a);

}  // namespace codequiv
