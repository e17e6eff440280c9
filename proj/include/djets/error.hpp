#pragma once

#include <stdexcept>
#include <string>

namespace djets {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define DJETS_DEFINE_ERROR(Name)            \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

DJETS_DEFINE_ERROR(DimensionError);
DJETS_DEFINE_ERROR(SingularPivot);
DJETS_DEFINE_ERROR(NonUnitDivisor);
DJETS_DEFINE_ERROR(InsufficientPrecision);
DJETS_DEFINE_ERROR(NonTriangular);
DJETS_DEFINE_ERROR(MissingRule);
DJETS_DEFINE_ERROR(PointNotOnVariety);
DJETS_DEFINE_ERROR(BasePointMismatch);
DJETS_DEFINE_ERROR(InvarianceViolation);
DJETS_DEFINE_ERROR(ZeroInput);
DJETS_DEFINE_ERROR(ArityError);
DJETS_DEFINE_ERROR(UnknownName);
DJETS_DEFINE_ERROR(ConfigError);

// A failed verification, as opposed to bad input.
DJETS_DEFINE_ERROR(DecompositionFailure);

#undef DJETS_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace djets
