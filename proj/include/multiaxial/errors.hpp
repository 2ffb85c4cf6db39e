#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace multiaxial {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quantum numbers or ranks outside their allowed range.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Shapes that do not fit together: matrix dimension vs j, mismatched spins.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Input that has the right shape but violates a physical invariant
/// (non-Hermitian, unnormalized, conjugation-inconsistent tensors).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input document. `position()` is a byte offset when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position = npos) : Error(what), position_(position) {}
  std::size_t position() const { return position_; }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t position_;
};

}  // namespace multiaxial
