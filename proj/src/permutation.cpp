#include "codequiv/permutation.hpp"

#include <limits>
#include <numeric>
#include <sstream>

#include "codequiv/error.hpp"

namespace codequiv {

Permutation::Permutation(std::vector<std::uint32_t> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (auto v : image_) {
    if (v >= image_.size() || seen[v]) {
      throw Error(ErrorKind::InvalidPermutation, "image array is not a bijection");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::uint32_t> image(n);
  std::iota(image.begin(), image.end(), 0u);
  Permutation p;
  p.image_ = std::move(image);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint32_t> inv(image_.size());
  for (std::size_t j = 0; j < image_.size(); ++j) inv[image_[j]] = static_cast<std::uint32_t>(j);
  Permutation p;
  p.image_ = std::move(inv);
  return p;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t j = 0; j < image_.size(); ++j) {
    if (image_[j] != j) return false;
  }
  return true;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < image_.size(); ++j) {
    if (j) os << ' ';
    os << image_[j] + 1;
  }
  return os.str();
}

Permutation Permutation::parse(const std::string& text) {
  std::istringstream is(text);
  std::vector<std::uint32_t> image;
  long long v;
  while (is >> v) {
    if (v < 1) throw Error(ErrorKind::Parse, "permutation entries are 1-based");
    image.push_back(static_cast<std::uint32_t>(v - 1));
  }
  if (!is.eof()) throw Error(ErrorKind::Parse, "non-integer token in permutation");
  return Permutation(std::move(image));
}

Permutation compose(const Permutation& f, const Permutation& g) {
  if (f.size() != g.size()) throw Error(ErrorKind::DimensionMismatch, "composing permutations of different sizes");
  std::vector<std::uint32_t> image(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) image[j] = f[g[j]];
  return Permutation(std::move(image));
}

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> image(n);
  std::iota(image.begin(), image.end(), 0u);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(image[i - 1], image[draw_below(rng, i)]);
  }
  return Permutation(std::move(image));
}

}  // namespace codequiv
