#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "codequiv/matrix.hpp"

namespace codequiv {

// <x|y> = sum x_i theta(y_i) with theta = frobenius(., e); Euclidean is e = 0.
class InnerProduct {
 public:
  static InnerProduct euclidean() { return InnerProduct(0); }
  // 1 <= e < m; validated against the field when used.
  static InnerProduct hermitian(unsigned e) { return InnerProduct(e); }

  bool is_euclidean() const noexcept { return e_ == 0; }
  unsigned automorphism() const noexcept { return e_; }
  std::string to_string() const;

  // Throws InvalidAutomorphism if the field has no such Frobenius power, or
  // if a Hermitian product is requested over a prime field.
  void validate(const Field& f) const;

  friend bool operator==(InnerProduct, InnerProduct) = default;

 private:
  explicit InnerProduct(unsigned e) : e_(e) {}
  unsigned e_;
};

// A linear code, stored by the reduced row echelon form of a generator
// matrix. Two codes compare equal iff they are the same subspace.
class LinearCode {
 public:
  // Any generator (or spanning) matrix; zero rows and dependencies are dropped.
  explicit LinearCode(const Matrix& generators);

  static LinearCode zero(FieldPtr field, std::size_t n);
  static LinearCode full(FieldPtr field, std::size_t n);

  const Field& field() const noexcept { return gen_.field(); }
  const FieldPtr& field_ptr() const noexcept { return gen_.field_ptr(); }
  std::size_t length() const noexcept { return gen_.cols(); }
  std::size_t dimension() const noexcept { return gen_.rows(); }
  const Matrix& generator() const noexcept { return gen_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(std::span<const Elem> word) const;

  friend bool operator==(const LinearCode& a, const LinearCode& b) { return a.gen_ == b.gen_; }

 private:
  Matrix gen_;
  std::vector<std::size_t> pivots_;
};

// For Hermitian products this is {y : <y|u> = 0 for all u in U}, the right
// kernel of theta(G). It is the kernel of the Hermitian projector, and has
// the same intersection dimension with U as the other-sided complement.
LinearCode dual(const LinearCode& u, InnerProduct ip = InnerProduct::euclidean());
LinearCode hull(const LinearCode& u, InnerProduct ip = InnerProduct::euclidean());
std::size_t hull_dimension(const LinearCode& u, InnerProduct ip = InnerProduct::euclidean());
// G theta(G^T) invertible.
bool has_trivial_hull(const LinearCode& u, InnerProduct ip = InnerProduct::euclidean());

// {u in U : u_i = 0 for i in I}, keeping length n.
LinearCode shorten(const LinearCode& u, std::span<const std::size_t> positions);
// Deletes coordinate `position`; length n - 1.
LinearCode puncture(const LinearCode& u, std::size_t position);
LinearCode permute(const LinearCode& u, const Permutation& pi);
// Pivot columns of the canonical generator. Throws EmptyCode for k = 0.
std::vector<std::size_t> information_set_of(const LinearCode& u);

// Hull dimensions under every inner product the field supports: index 0 is
// Euclidean, index e the Hermitian product for frobenius power e.
std::vector<std::size_t> hull_spectrum(const LinearCode& u);

struct SampledCode {
  LinearCode code;
  std::size_t attempts;
};

Matrix random_matrix(const FieldPtr& field, std::size_t rows, std::size_t cols, std::mt19937_64& rng);
// Uniform k-dimensional code (rejection on rank).
LinearCode random_code(const FieldPtr& field, std::size_t n, std::size_t k, std::uint64_t seed);
// Rejection-samples uniform generators until the hull under ip is trivial.
// Throws SamplingExhausted after max_attempts draws.
SampledCode random_trivial_hull_code(const FieldPtr& field, std::size_t n, std::size_t k,
                                     InnerProduct ip, std::uint64_t seed,
                                     std::size_t max_attempts = 1000);
// A k-dimensional code whose Euclidean hull has dimension exactly h: a random
// h-dimensional self-orthogonal block glued to random words orthogonal to it.
// Requires h <= k <= n - h.
SampledCode random_code_with_hull(const FieldPtr& field, std::size_t n, std::size_t k,
                                  std::size_t h, std::uint64_t seed,
                                  std::size_t max_attempts = 1000);

}  // namespace codequiv
