#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "codequiv/matrix.hpp"

namespace codequiv {

// GF(2) matrix with rows packed into 64-bit words. The generic Matrix
// operations route through this for binary fields.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);
  explicit BitMatrix(const Matrix& m);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool get(std::size_t i, std::size_t j) const {
    return (data_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool v) {
    auto& w = data_[i * words_ + j / 64];
    const std::uint64_t bit = std::uint64_t{1} << (j % 64);
    w = v ? (w | bit) : (w & ~bit);
  }

  std::uint64_t* row(std::size_t i) { return data_.data() + i * words_; }
  const std::uint64_t* row(std::size_t i) const { return data_.data() + i * words_; }

  // In-place reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> reduce();

  Matrix to_matrix(const FieldPtr& gf2) const;

  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);

 private:
  void xor_row(std::size_t dst, std::size_t src, std::size_t from_word);
  void swap_rows(std::size_t a, std::size_t b);

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

std::optional<BitMatrix> inverse(const BitMatrix& a);

}  // namespace codequiv
