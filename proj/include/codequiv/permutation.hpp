#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace codequiv {

// A permutation of {0, ..., n-1} stored as its image array: (*this)[j] is pi(j).
//
// Acting on vectors, u^pi = (u[pi(0)], ..., u[pi(n-1)]), i.e. column j of the
// permuted matrix is column pi(j) of the source. The matching permutation
// matrix X has X[i][j] = 1 iff i == pi(j), so u^pi == u * X.
//
// Text form (CLI, answer keys) is 1-based.
class Permutation {
 public:
  Permutation() = default;
  // Throws InvalidPermutation unless image is a bijection on [0, n).
  explicit Permutation(std::vector<std::uint32_t> image);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return image_.size(); }
  std::uint32_t operator[](std::size_t j) const { return image_[j]; }
  const std::vector<std::uint32_t>& image() const noexcept { return image_; }

  Permutation inverse() const;
  bool is_identity() const noexcept;

  // Space-separated 1-based image.
  std::string to_string() const;
  static Permutation parse(const std::string& text);

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> image_;
};

// (f o g)(j) = f(g(j)). With the action above,
// permute(permute(a, f), g) == permute(a, compose(f, g)).
Permutation compose(const Permutation& f, const Permutation& g);

// Uniform draw below bound (rejection sampling; portable across standard
// libraries, unlike std::uniform_int_distribution).
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound);

Permutation random_permutation(std::size_t n, std::mt19937_64& rng);

}  // namespace codequiv
