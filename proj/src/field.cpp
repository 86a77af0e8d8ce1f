#include "codequiv/field.hpp"

#include <sstream>

namespace codequiv {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::InvalidAutomorphism: return "InvalidAutomorphism";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidPermutation: return "InvalidPermutation";
    case ErrorKind::EmptyCode: return "EmptyCode";
    case ErrorKind::NonTrivialHull: return "NonTrivialHull";
    case ErrorKind::SamplingExhausted: return "SamplingExhausted";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

// Dense polynomials over GF(p), low-to-high, no trailing zeros.
using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

Poly poly_rem(Poly a, const Poly& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = inv_mod(f.back(), p);
  while (a.size() >= f.size()) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - f.size();
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = (a[shift + i] + (p - c) * f[i]) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
  }
  return poly_rem(std::move(r), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly result{1};
  base = poly_rem(std::move(base), f, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// No irreducible factor of degree <= m/2 <=> irreducible.
bool irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t m = f.size() - 1;
  Poly h{0, 1};
  for (std::size_t k = 1; k <= m / 2; ++k) {
    h = poly_powmod(h, p, f, p);
    Poly diff = h;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;  // x^(p^k) == x mod f
    if (poly_gcd(f, diff, p).size() > 1) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

Field::Field(std::uint32_t p, unsigned m, std::vector<std::uint32_t> modulus)
    : p_(p), m_(m), q_(0), modulus_(std::move(modulus)) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw Error(ErrorKind::InvalidField,
                "characteristic " + std::to_string(p) + " is not a prime below 2^31");
  }
  if (m == 0) throw Error(ErrorKind::InvalidField, "extension degree must be >= 1");
  std::uint64_t q = 1;
  pow_p_.push_back(1);
  for (unsigned i = 0; i < m; ++i) {
    q *= p;
    if (q >= (std::uint64_t{1} << 32)) {
      throw Error(ErrorKind::InvalidField, "field order exceeds 2^32");
    }
    pow_p_.push_back(static_cast<std::uint32_t>(q));
  }
  q_ = static_cast<std::uint32_t>(q);

  if (m == 1) {
    if (!modulus_.empty()) {
      throw Error(ErrorKind::InvalidField, "prime fields take no modulus");
    }
    return;
  }
  if (modulus_.size() != m + 1) {
    throw Error(ErrorKind::InvalidField, "modulus must have m + 1 coefficients");
  }
  for (auto c : modulus_) {
    if (c >= p) throw Error(ErrorKind::InvalidField, "modulus coefficient out of range");
  }
  if (modulus_.back() != 1) throw Error(ErrorKind::InvalidField, "modulus must be monic");
  Poly f(modulus_.begin(), modulus_.end());
  if (!irreducible(f, p)) {
    throw Error(ErrorKind::InvalidField, "modulus is reducible over GF(" + std::to_string(p) + ")");
  }

  if (q_ <= (1u << 16)) {
    // Find a primitive element, then build exp/log.
    const std::uint64_t order = q_ - 1;
    const auto factors = prime_factors(order);
    std::uint32_t gen = 0;
    for (std::uint32_t g = 2; g < q_ && gen == 0; ++g) {
      bool primitive = true;
      for (auto r : factors) {
        if (pow(Elem{g}, order / r) == one()) {
          primitive = false;
          break;
        }
      }
      if (primitive) gen = g;
    }
    if (gen == 0) throw Error(ErrorKind::Internal, "no primitive element found");
    exp_.resize(2 * order);
    log_.assign(q_, 0);
    Elem x = one();
    for (std::uint64_t i = 0; i < order; ++i) {
      exp_[i] = exp_[i + order] = x.repr;
      log_[x.repr] = static_cast<std::uint32_t>(i);
      x = poly_mul(x, Elem{gen});
    }
    tables_ = true;
  }
}

FieldPtr Field::prime(std::uint32_t p) { return std::make_shared<const Field>(p, 1, std::vector<std::uint32_t>{}); }

FieldPtr Field::extension(std::uint32_t p, unsigned m, std::vector<std::uint32_t> modulus) {
  return std::make_shared<const Field>(p, m, std::move(modulus));
}

FieldPtr Field::standard(std::uint64_t q) {
  switch (q) {
    case 4: return extension(2, 2, {1, 1, 1});
    case 8: return extension(2, 3, {1, 1, 0, 1});
    case 9: return extension(3, 2, {2, 2, 1});
    case 16: return extension(2, 4, {1, 1, 0, 0, 1});
    default: break;
  }
  if (q < (1u << 31) && is_prime(q)) return prime(static_cast<std::uint32_t>(q));
  throw Error(ErrorKind::InvalidField,
              "no built-in field of order " + std::to_string(q) + "; give the modulus explicitly");
}

Elem Field::element(std::uint64_t repr) const {
  if (repr >= q_) {
    throw Error(ErrorKind::InvalidField,
                "element " + std::to_string(repr) + " out of range for " + name());
  }
  return Elem{static_cast<std::uint32_t>(repr)};
}

Elem Field::add(Elem a, Elem b) const noexcept {
  if (m_ == 1) {
    const std::uint64_t s = std::uint64_t{a.repr} + b.repr;
    return Elem{static_cast<std::uint32_t>(s >= p_ ? s - p_ : s)};
  }
  if (p_ == 2) return Elem{a.repr ^ b.repr};
  std::uint32_t out = 0;
  for (unsigned i = 0; i < m_; ++i) {
    const std::uint32_t da = a.repr / pow_p_[i] % p_;
    const std::uint32_t db = b.repr / pow_p_[i] % p_;
    out += (da + db) % p_ * pow_p_[i];
  }
  return Elem{out};
}

Elem Field::neg(Elem a) const noexcept {
  if (p_ == 2) return a;
  if (m_ == 1) return Elem{a.repr == 0 ? 0 : p_ - a.repr};
  std::uint32_t out = 0;
  for (unsigned i = 0; i < m_; ++i) {
    const std::uint32_t d = a.repr / pow_p_[i] % p_;
    out += (p_ - d) % p_ * pow_p_[i];
  }
  return Elem{out};
}

Elem Field::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const noexcept {
  if (a.repr == 0 || b.repr == 0) return zero();
  if (m_ == 1) {
    return Elem{static_cast<std::uint32_t>(std::uint64_t{a.repr} * b.repr % p_)};
  }
  if (tables_) return Elem{exp_[log_[a.repr] + log_[b.repr]]};
  return poly_mul(a, b);
}

Elem Field::poly_mul(Elem a, Elem b) const noexcept {
  std::vector<std::uint64_t> da(m_), db(m_), prod(2 * m_ - 1, 0);
  for (unsigned i = 0; i < m_; ++i) {
    da[i] = a.repr / pow_p_[i] % p_;
    db[i] = b.repr / pow_p_[i] % p_;
  }
  for (unsigned i = 0; i < m_; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < m_; ++j) {
      prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
  }
  // modulus is monic: x^m = -(c0 + ... + c_{m-1} x^{m-1})
  for (std::size_t d = prod.size(); d-- > m_;) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (unsigned i = 0; i < m_; ++i) {
      prod[d - m_ + i] = (prod[d - m_ + i] + (p_ - c) * modulus_[i]) % p_;
    }
  }
  std::uint32_t out = 0;
  for (unsigned i = 0; i < m_; ++i) out += static_cast<std::uint32_t>(prod[i]) * pow_p_[i];
  return Elem{out};
}

Elem Field::inv(Elem a) const {
  if (a.repr == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (m_ == 1) return Elem{static_cast<std::uint32_t>(inv_mod(a.repr, p_))};
  if (tables_) return Elem{exp_[(q_ - 1 - log_[a.repr]) % (q_ - 1)]};
  return pow(a, q_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
  Elem result = one();
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Elem Field::frobenius(Elem a, unsigned e) const {
  if (e >= m_) {
    throw Error(ErrorKind::InvalidAutomorphism,
                "frobenius exponent " + std::to_string(e) + " outside [0, " + std::to_string(m_) + ")");
  }
  if (e == 0 || a.repr == 0) return a;
  if (tables_) {
    const std::uint64_t l = std::uint64_t{log_[a.repr]} * pow_p_[e] % (q_ - 1);
    return Elem{exp_[l]};
  }
  return pow(a, pow_p_[e]);
}

bool Field::same_as(const Field& other) const noexcept {
  return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
}

std::string Field::header() const {
  std::ostringstream os;
  os << "field " << p_;
  if (m_ > 1) {
    os << ' ' << m_;
    for (auto c : modulus_) os << ' ' << c;
  }
  return os.str();
}

std::string Field::name() const {
  std::ostringstream os;
  os << "GF(" << q_ << ')';
  return os.str();
}

void require_same_field(const Field& a, const Field& b) {
  if (&a != &b && !a.same_as(b)) {
    throw Error(ErrorKind::FieldMismatch, "field mismatch: " + a.header() + " vs " + b.header());
  }
}

}  // namespace codequiv
