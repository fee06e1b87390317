#include "lqham/error.hpp"

namespace lqham {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSingularMatrix: return "SingularMatrix";
    case ErrorKind::kSingularInnerMatrix: return "SingularInnerMatrix";
    case ErrorKind::kNoConvergence: return "NoConvergence";
    case ErrorKind::kNotStabilizing: return "NotStabilizing";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kInstanceInvalid: return "InstanceInvalid";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kMissingInput: return "MissingInput";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kHorizonTooShort: return "HorizonTooShort";
  }
  return "Unknown";
}

}  // namespace lqham
