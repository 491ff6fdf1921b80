#pragma once

#include <stdexcept>
#include <string>

namespace sageev {

// Every failure surfaced by the library carries one of these kinds; the CLI
// maps each kind to its own exit code.
enum class ErrorKind {
  NotHyperbolic,
  NotLinked,
  BadLetter,
  IdentityClass,
  BudgetExceeded,
  RelatorCheckFailed,
  PolygonCheckFailed,
  NotStabilized,
  NotDiscrete,
  AmbiguousAxes,
  InconsistentWalls,
  VertexNotInFragment,
  FragmentTooLarge,
  MismatchedClassSets,
  ParseError,
  IoError,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sageev
