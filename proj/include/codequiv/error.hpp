#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace codequiv {

enum class ErrorKind {
  InvalidField,
  FieldMismatch,
  DivisionByZero,
  InvalidAutomorphism,
  DimensionMismatch,
  IndexOutOfRange,
  InvalidPermutation,
  EmptyCode,
  NonTrivialHull,
  SamplingExhausted,
  TooLarge,
  Parse,
  Internal,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; the kind is what callers branch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace codequiv
