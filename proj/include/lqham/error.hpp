#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lqham {

enum class ErrorKind {
  kSingularMatrix,
  kSingularInnerMatrix,
  kNoConvergence,
  kNotStabilizing,
  kDimensionMismatch,
  kInvalidArgument,
  kInstanceInvalid,
  kParseError,
  kMissingInput,
  kTooLarge,
  kHorizonTooShort,
};

/// Stable name used in diagnostics and CLI output, e.g. "SingularInnerMatrix".
std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lqham
