#include "eulerdist/error.hpp"

#include <utility>

namespace eulerdist {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Dimension: return "DimensionError";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::UnsupportedInput: return "UnsupportedInput";
    case ErrorKind::TermNotHyperplaneSupported: return "TermNotHyperplaneSupported";
    case ErrorKind::EscalationExceeded: return "EscalationExceeded";
    case ErrorKind::QuadratureNoConvergence: return "QuadratureNoConvergence";
    case ErrorKind::PoleOnGrid: return "PoleOnGrid";
    case ErrorKind::DuplicateLambda: return "DuplicateLambda";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::CoordinateConflict: return "CoordinateConflict";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Internal: return "InternalError";
  }
  return "InternalError";
}

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& what)
    : Error(ErrorKind::Parse, what), offset_(offset), expected_(std::move(expected)) {}

}  // namespace eulerdist
