#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "codequiv/error.hpp"

namespace codequiv {

// An element of GF(p^m), encoded as the base-p integer whose digit i is the
// coefficient of x^i in the polynomial representation.
struct Elem {
  std::uint32_t repr = 0;

  friend constexpr auto operator<=>(Elem, Elem) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Arithmetic context for GF(p) or GF(p^m). Immutable once built, so a single
// instance can be shared across threads.
class Field {
 public:
  // GF(p). Throws InvalidField unless p is a prime below 2^31.
  static FieldPtr prime(std::uint32_t p);

  // GF(p^m) from an explicit monic irreducible modulus, coefficients low to
  // high (m + 1 entries). m == 1 with an empty modulus is GF(p).
  static FieldPtr extension(std::uint32_t p, unsigned m,
                            std::vector<std::uint32_t> modulus);

  // GF(q) for a prime q, or one of the built-in moduli for 4, 8, 9 and 16.
  static FieldPtr standard(std::uint64_t q);

  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return m_; }
  std::uint32_t order() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  bool is_binary() const noexcept { return p_ == 2 && m_ == 1; }
  bool is_prime_field() const noexcept { return m_ == 1; }

  bool contains(Elem a) const noexcept { return a.repr < q_; }
  Elem zero() const noexcept { return Elem{0}; }
  Elem one() const noexcept { return Elem{1}; }
  // Throws InvalidField when repr >= q.
  Elem element(std::uint64_t repr) const;

  Elem add(Elem a, Elem b) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept;
  Elem neg(Elem a) const noexcept;
  Elem mul(Elem a, Elem b) const noexcept;
  // Throws DivisionByZero for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const noexcept;

  // z -> z^(p^e), 0 <= e < m. Throws InvalidAutomorphism otherwise.
  Elem frobenius(Elem a, unsigned e) const;

  // Structural equality: same p, m and modulus.
  bool same_as(const Field& other) const noexcept;

  // "field p" or "field p m c0 ... cm", the header line of the code file format.
  std::string header() const;
  std::string name() const;  // "GF(4)" etc.

  Field(std::uint32_t p, unsigned m, std::vector<std::uint32_t> modulus);

 private:
  Elem poly_mul(Elem a, Elem b) const noexcept;

  std::uint32_t p_;
  unsigned m_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;  // p^i for i <= m

  // log / antilog tables for extension fields with q <= 2^16
  bool tables_ = false;
  std::vector<std::uint32_t> exp_;  // length 2(q-1)
  std::vector<std::uint32_t> log_;
};

// Throws FieldMismatch unless both fields are structurally equal.
void require_same_field(const Field& a, const Field& b);

bool is_prime(std::uint64_t n);

}  // namespace codequiv
