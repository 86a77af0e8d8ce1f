#include "codequiv/matrix.hpp"

#include <sstream>

#include "codequiv/bitmatrix.hpp"

namespace codequiv {

namespace {

void require_compatible(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field());
}

// Generic Gauss-Jordan on a mutable matrix. Returns pivot columns.
std::vector<std::size_t> reduce_in_place(Matrix& m) {
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).repr == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      auto rp = m.row(p), rr = m.row(r);
      std::swap_ranges(rp.begin(), rp.end(), rr.begin());
    }
    auto pivot_row = m.row(r);
    const Elem scale = f.inv(pivot_row[c]);
    if (scale != f.one()) {
      for (std::size_t j = c; j < m.cols(); ++j) pivot_row[j] = f.mul(pivot_row[j], scale);
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      auto row = m.row(i);
      const Elem factor = row[c];
      if (factor.repr == 0) continue;
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (pivot_row[j].repr) row[j] = f.sub(row[j], f.mul(factor, pivot_row[j]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Elem{1};
  return m;
}

Matrix Matrix::from_rows(FieldPtr field, const std::vector<std::vector<std::uint32_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = field->element(rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_rows(FieldPtr field,
                         std::initializer_list<std::initializer_list<std::uint32_t>> rows) {
  std::vector<std::vector<std::uint32_t>> v;
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(std::move(field), v);
}

Matrix Matrix::row_vector(FieldPtr field, std::span<const Elem> entries) {
  Matrix m(std::move(field), 1, entries.size());
  std::copy(entries.begin(), entries.end(), m.data_.begin());
  return m;
}

bool Matrix::is_zero() const noexcept {
  for (auto e : data_) {
    if (e.repr) return false;
  }
  return true;
}

bool Matrix::is_symmetric() const noexcept {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

std::vector<std::vector<std::uint32_t>> Matrix::to_reprs() const {
  std::vector<std::vector<std::uint32_t>> out(rows_, std::vector<std::uint32_t>(cols_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j).repr;
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  if (a.field_ && b.field_ && !a.field_->same_as(*b.field_)) return false;
  return a.data_ == b.data_;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  require_compatible(a, b);
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "matmul: inner dimensions differ");
  }
  if (a.field().is_binary()) {
    return (BitMatrix(a) * BitMatrix(b)).to_matrix(a.field_ptr());
  }
  const Field& f = a.field();
  Matrix out(a.field_ptr(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = out.row(i);
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Elem x = a(i, l);
      if (x.repr == 0) continue;
      auto src = b.row(l);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (src[j].repr) dst[j] = f.add(dst[j], f.mul(x, src[j]));
      }
    }
  }
  return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
  require_compatible(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "add: shapes differ");
  }
  Matrix out(a.field_ptr(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().add(a(i, j), b(i, j));
  }
  return out;
}

Matrix sub(const Matrix& a, const Matrix& b) {
  require_compatible(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "sub: shapes differ");
  }
  Matrix out(a.field_ptr(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().sub(a(i, j), b(i, j));
  }
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.field_ptr(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  }
  return out;
}

Matrix map_entries(const Matrix& a, unsigned e) {
  const Field& f = a.field();
  if (e >= f.degree()) {
    throw Error(ErrorKind::InvalidAutomorphism,
                "automorphism index " + std::to_string(e) + " invalid for " + f.name());
  }
  if (e == 0) return a;
  Matrix out(a.field_ptr(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f.frobenius(a(i, j), e);
  }
  return out;
}

Rref rref(const Matrix& a) {
  Rref result;
  if (a.field().is_binary()) {
    BitMatrix bits(a);
    result.pivots = bits.reduce();
    result.reduced = bits.to_matrix(a.field_ptr());
  } else {
    result.reduced = a;
    result.pivots = reduce_in_place(result.reduced);
  }
  result.rank = result.pivots.size();
  return result;
}

std::size_t rank(const Matrix& a) {
  if (a.field().is_binary()) {
    BitMatrix bits(a);
    return bits.reduce().size();
  }
  Matrix copy = a;
  return reduce_in_place(copy).size();
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  if (a.field().is_binary()) {
    auto inv = inverse(BitMatrix(a));
    if (!inv) return std::nullopt;
    return inv->to_matrix(a.field_ptr());
  }
  Matrix aug(a.field_ptr(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = Elem{1};
  }
  const auto pivots = reduce_in_place(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] >= n)) return std::nullopt;
  Matrix out(a.field_ptr(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  }
  return out;
}

Matrix right_kernel_basis(const Matrix& a) {
  const Field& f = a.field();
  const Rref r = rref(a);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  Matrix out(a.field_ptr(), n - r.rank, n);
  std::size_t row = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    out(row, free) = f.one();
    for (std::size_t i = 0; i < r.rank; ++i) {
      out(row, r.pivots[i]) = f.neg(r.reduced(i, free));
    }
    ++row;
  }
  return out;
}

Matrix permute_columns(const Matrix& a, const Permutation& pi) {
  if (pi.size() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "permutation size does not match column count");
  }
  Matrix out(a.field_ptr(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto src = a.row(i);
    auto dst = out.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) dst[j] = src[pi[j]];
  }
  return out;
}

Matrix permutation_matrix(FieldPtr field, const Permutation& pi) {
  Matrix x(std::move(field), pi.size(), pi.size());
  for (std::size_t j = 0; j < pi.size(); ++j) x(pi[j], j) = Elem{1};
  return x;
}

Matrix select_columns(const Matrix& a, std::span<const std::size_t> columns) {
  Matrix out(a.field_ptr(), a.rows(), columns.size());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j] >= a.cols()) throw Error(ErrorKind::IndexOutOfRange, "column index out of range");
      out(i, j) = a(i, columns[j]);
    }
  }
  return out;
}

Matrix delete_column(const Matrix& a, std::size_t column) {
  if (column >= a.cols()) throw Error(ErrorKind::IndexOutOfRange, "column index out of range");
  Matrix out(a.field_ptr(), a.rows(), a.cols() - 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0, k = 0; j < a.cols(); ++j) {
      if (j != column) out(i, k++) = a(i, j);
    }
  }
  return out;
}

Matrix top_rows(const Matrix& a, std::size_t count) {
  if (count > a.rows()) throw Error(ErrorKind::DimensionMismatch, "top_rows: not enough rows");
  Matrix out(a.field_ptr(), count, a.cols());
  for (std::size_t i = 0; i < count; ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), out.row(i).begin());
  }
  return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  require_compatible(top, bottom);
  if (top.cols() != bottom.cols()) throw Error(ErrorKind::DimensionMismatch, "vstack: column counts differ");
  Matrix out(top.field_ptr(), top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i) {
    std::copy(top.row(i).begin(), top.row(i).end(), out.row(i).begin());
  }
  for (std::size_t i = 0; i < bottom.rows(); ++i) {
    std::copy(bottom.row(i).begin(), bottom.row(i).end(), out.row(top.rows() + i).begin());
  }
  return out;
}

std::string to_string(const Matrix& a) {
  std::ostringstream os;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) os << ' ';
      os << a(i, j).repr;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace codequiv
