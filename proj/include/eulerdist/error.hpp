#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace eulerdist {

enum class ErrorKind {
  Dimension,
  ZeroPolynomial,
  UnsupportedInput,
  TermNotHyperplaneSupported,
  EscalationExceeded,
  QuadratureNoConvergence,
  PoleOnGrid,
  DuplicateLambda,
  Parse,
  CoordinateConflict,
  InvalidArgument,
  Internal,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the text front end. `offset` is the byte position in the source
/// where parsing stopped; `expected` lists the tokens that would have been
/// accepted there.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected,
             const std::string& what);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace eulerdist
