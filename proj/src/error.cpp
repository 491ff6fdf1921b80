#include "sageev/error.hpp"

namespace sageev {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::NotLinked: return "NotLinked";
    case ErrorKind::BadLetter: return "BadLetter";
    case ErrorKind::IdentityClass: return "IdentityClass";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::RelatorCheckFailed: return "RelatorCheckFailed";
    case ErrorKind::PolygonCheckFailed: return "PolygonCheckFailed";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::NotDiscrete: return "NotDiscrete";
    case ErrorKind::AmbiguousAxes: return "AmbiguousAxes";
    case ErrorKind::InconsistentWalls: return "InconsistentWalls";
    case ErrorKind::VertexNotInFragment: return "VertexNotInFragment";
    case ErrorKind::FragmentTooLarge: return "FragmentTooLarge";
    case ErrorKind::MismatchedClassSets: return "MismatchedClassSets";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace sageev
