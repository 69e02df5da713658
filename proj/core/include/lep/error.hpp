#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lep {

// Error taxonomy. The CLI maps each family onto a fixed exit code:
// InputError -> 2, PreconditionError -> 3, NumericalError -> 4.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad model files, unknown identifiers, unparsable bindings.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : InputError(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Shape mismatches between polynomials or matrices (variable lists, dimensions).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lep
