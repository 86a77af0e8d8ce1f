#include "codequiv/code.hpp"

namespace codequiv {

std::string InnerProduct::to_string() const {
  return e_ == 0 ? "euclidean" : "hermitian(" + std::to_string(e_) + ")";
}

void InnerProduct::validate(const Field& f) const {
  if (e_ >= f.degree()) {
    throw Error(ErrorKind::InvalidAutomorphism,
                to_string() + " is not defined over " + f.name());
  }
}

LinearCode::LinearCode(const Matrix& generators) {
  Rref r = rref(generators);
  gen_ = top_rows(r.reduced, r.rank);
  pivots_ = std::move(r.pivots);
}

LinearCode LinearCode::zero(FieldPtr field, std::size_t n) {
  return LinearCode(Matrix(std::move(field), 0, n));
}

LinearCode LinearCode::full(FieldPtr field, std::size_t n) {
  return LinearCode(Matrix::identity(std::move(field), n));
}

bool LinearCode::contains(std::span<const Elem> word) const {
  if (word.size() != length()) throw Error(ErrorKind::DimensionMismatch, "word length differs from code length");
  // Reduce the word against the RREF rows; it lies in U iff nothing remains.
  const Field& f = field();
  std::vector<Elem> w(word.begin(), word.end());
  for (std::size_t i = 0; i < dimension(); ++i) {
    const Elem c = w[pivots_[i]];
    if (c.repr == 0) continue;
    auto row = gen_.row(i);
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = f.sub(w[j], f.mul(c, row[j]));
  }
  for (auto e : w) {
    if (e.repr) return false;
  }
  return true;
}

LinearCode dual(const LinearCode& u, InnerProduct ip) {
  ip.validate(u.field());
  return LinearCode(right_kernel_basis(map_entries(u.generator(), ip.automorphism())));
}

namespace {

// theta(G) G^T; its right kernel holds the coefficient vectors of hull words.
Matrix hull_gram(const LinearCode& u, InnerProduct ip) {
  ip.validate(u.field());
  const Matrix& g = u.generator();
  return matmul(map_entries(g, ip.automorphism()), transpose(g));
}

}  // namespace

LinearCode hull(const LinearCode& u, InnerProduct ip) {
  const Matrix coeffs = right_kernel_basis(hull_gram(u, ip));
  return LinearCode(matmul(coeffs, u.generator()));
}

std::size_t hull_dimension(const LinearCode& u, InnerProduct ip) {
  return u.dimension() - rank(hull_gram(u, ip));
}

bool has_trivial_hull(const LinearCode& u, InnerProduct ip) {
  return hull_dimension(u, ip) == 0;
}

LinearCode shorten(const LinearCode& u, std::span<const std::size_t> positions) {
  for (auto i : positions) {
    if (i >= u.length()) throw Error(ErrorKind::IndexOutOfRange, "shortening position out of range");
  }
  if (positions.empty()) return u;
  // c with c * G[:, I] = 0
  const Matrix coeffs = right_kernel_basis(transpose(select_columns(u.generator(), positions)));
  return LinearCode(matmul(coeffs, u.generator()));
}

LinearCode puncture(const LinearCode& u, std::size_t position) {
  if (position >= u.length()) throw Error(ErrorKind::IndexOutOfRange, "puncturing position out of range");
  return LinearCode(delete_column(u.generator(), position));
}

LinearCode permute(const LinearCode& u, const Permutation& pi) {
  return LinearCode(permute_columns(u.generator(), pi));
}

std::vector<std::size_t> information_set_of(const LinearCode& u) {
  if (u.dimension() == 0) throw Error(ErrorKind::EmptyCode, "the zero code has no information set");
  return u.pivots();
}

std::vector<std::size_t> hull_spectrum(const LinearCode& u) {
  std::vector<std::size_t> dims;
  for (unsigned e = 0; e < u.field().degree(); ++e) {
    dims.push_back(hull_dimension(u, e == 0 ? InnerProduct::euclidean() : InnerProduct::hermitian(e)));
  }
  return dims;
}

Matrix random_matrix(const FieldPtr& field, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Matrix m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = Elem{static_cast<std::uint32_t>(draw_below(rng, field->order()))};
    }
  }
  return m;
}

namespace {

void check_shape(std::size_t n, std::size_t k) {
  if (k > n) throw Error(ErrorKind::DimensionMismatch, "dimension exceeds length");
}

LinearCode draw_full_rank(const FieldPtr& field, std::size_t n, std::size_t k, std::mt19937_64& rng) {
  for (int tries = 0; tries < 1000; ++tries) {
    LinearCode c(random_matrix(field, k, n, rng));
    if (c.dimension() == k) return c;
  }
  throw Error(ErrorKind::SamplingExhausted, "could not draw a full-rank generator matrix");
}

// Random element of the row space of g.
std::vector<Elem> random_word(const Matrix& g, std::mt19937_64& rng) {
  const Field& f = g.field();
  std::vector<Elem> w(g.cols(), f.zero());
  for (std::size_t i = 0; i < g.rows(); ++i) {
    const Elem c{static_cast<std::uint32_t>(draw_below(rng, f.order()))};
    if (c.repr == 0) continue;
    auto row = g.row(i);
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = f.add(w[j], f.mul(c, row[j]));
  }
  return w;
}

Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  Elem s = f.zero();
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

}  // namespace

LinearCode random_code(const FieldPtr& field, std::size_t n, std::size_t k, std::uint64_t seed) {
  check_shape(n, k);
  std::mt19937_64 rng(seed);
  return draw_full_rank(field, n, k, rng);
}

SampledCode random_trivial_hull_code(const FieldPtr& field, std::size_t n, std::size_t k,
                                     InnerProduct ip, std::uint64_t seed, std::size_t max_attempts) {
  check_shape(n, k);
  ip.validate(*field);
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    LinearCode c = draw_full_rank(field, n, k, rng);
    if (has_trivial_hull(c, ip)) return {std::move(c), attempt};
  }
  throw Error(ErrorKind::SamplingExhausted,
              "no trivial-hull code found for " + field->name() + ", n=" + std::to_string(n) +
                  ", k=" + std::to_string(k) + " after " + std::to_string(max_attempts) + " attempts");
}

SampledCode random_code_with_hull(const FieldPtr& field, std::size_t n, std::size_t k,
                                  std::size_t h, std::uint64_t seed, std::size_t max_attempts) {
  check_shape(n, k);
  if (h == 0) return random_trivial_hull_code(field, n, k, InnerProduct::euclidean(), seed, max_attempts);
  if (k < h || k + h > n) {
    throw Error(ErrorKind::DimensionMismatch, "hull dimension h needs h <= k <= n - h");
  }
  const Field& f = *field;
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    // Grow a self-orthogonal basis one word at a time, drawing from the dual
    // of what has been built so far.
    Matrix self_orth(field, 0, n);
    bool stuck = false;
    while (self_orth.rows() < h && !stuck) {
      const Matrix ambient = dual(LinearCode(self_orth)).generator();
      bool grew = false;
      for (int tries = 0; tries < 200 && !grew; ++tries) {
        auto w = random_word(ambient, rng);
        if (dot(f, w, w).repr != 0) continue;
        Matrix candidate = vstack(self_orth, Matrix::row_vector(field, w));
        if (rank(candidate) == candidate.rows()) {
          self_orth = std::move(candidate);
          grew = true;
        }
      }
      stuck = !grew;
    }
    if (stuck) continue;

    const Matrix ortho = dual(LinearCode(self_orth)).generator();
    Matrix gen = self_orth;
    for (std::size_t i = h; i < k; ++i) {
      gen = vstack(gen, Matrix::row_vector(field, random_word(ortho, rng)));
    }
    LinearCode c(gen);
    if (c.dimension() == k && hull_dimension(c) == h) return {std::move(c), attempt};
  }
  throw Error(ErrorKind::SamplingExhausted,
              "no code with hull dimension " + std::to_string(h) + " found for " + field->name() +
                  ", n=" + std::to_string(n) + ", k=" + std::to_string(k));
}

}  // namespace codequiv
