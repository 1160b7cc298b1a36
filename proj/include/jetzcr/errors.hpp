#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetzcr {

enum class ErrorKind {
  Syntax,
  UnknownIdentifier,
  DependentOutOfRange,
  ZeroDenominator,
  SizeMismatch,
  NotInSpan,
  LinearlyDependentBasis,
  NotClosedUnderBracket,
  SingularMatrix,
  OverlappingLeads,
  NonPassive,
  DepthExceeded,
  SingularOnEquation,
  NotAZcr,
  BadDecomposition,
  InternalIdentityFailure,
  GaugeLeavesAlgebra,
  NonAbelianAlgebra,
  NotConserved,
  InvalidInput,
};

const char *error_kind_name(ErrorKind kind);

class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind)
  {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

/// Raised by the expression parser; `position` is the 0-based offset into
/// the input text where the problem was detected.
class ParseError : public Error
{
public:
  ParseError(ErrorKind kind, const std::string &message, std::size_t position)
      : Error(kind, message + " at position " + std::to_string(position)),
        position_(position)
  {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

} // namespace jetzcr
