#include "codequiv/bitmatrix.hpp"

#include <algorithm>

namespace codequiv {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

BitMatrix::BitMatrix(const Matrix& m) : BitMatrix(m.rows(), m.cols()) {
  for (std::size_t i = 0; i < rows_; ++i) {
    auto src = m.row(i);
    std::uint64_t* dst = row(i);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (src[j].repr) dst[j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }
}

Matrix BitMatrix::to_matrix(const FieldPtr& gf2) const {
  Matrix out(gf2, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    const std::uint64_t* src = row(i);
    auto dst = out.row(i);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = src[w];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        dst[w * 64 + b] = Elem{1};
        bits &= bits - 1;
      }
    }
  }
  return out;
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src, std::size_t from_word) {
  std::uint64_t* d = row(dst);
  const std::uint64_t* s = row(src);
  for (std::size_t w = from_word; w < words_; ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(row(a), row(a) + words_, row(b));
}

std::vector<std::size_t> BitMatrix::reduce() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t p = r;
    while (p < rows_ && !(data_[p * words_ + w] & bit)) ++p;
    if (p == rows_) continue;
    swap_rows(r, p);
    // Row r is zero left of c, so elimination starts at word w.
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i != r && (data_[i * words_ + w] & bit)) xor_row(i, r, w);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    const std::uint64_t* ar = a.row(i);
    std::uint64_t* dst = out.row(i);
    for (std::size_t w = 0; w < a.words_; ++w) {
      std::uint64_t bits = ar[w];
      while (bits) {
        const std::size_t j = w * 64 + __builtin_ctzll(bits);
        const std::uint64_t* br = b.row(j);
        for (std::size_t x = 0; x < b.words_; ++x) dst[x] ^= br[x];
        bits &= bits - 1;
      }
    }
  }
  return out;
}

std::optional<BitMatrix> inverse(const BitMatrix& a) {
  const std::size_t n = a.rows();
  BitMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a.get(i, j)) aug.set(i, j, true);
    }
    aug.set(i, n + i, true);
  }
  const auto pivots = aug.reduce();
  if (pivots.size() < n || (n > 0 && pivots[n - 1] >= n)) return std::nullopt;
  BitMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (aug.get(i, n + j)) out.set(i, j, true);
    }
  }
  return out;
}

}  // namespace codequiv
