#pragma once

#include <stdexcept>
#include <string>

namespace aqft {

enum class ErrorKind {
  NonComposable,
  UndecidableForBackend,
  BackendUnsupported,
  ShapeMismatch,
  BadSeedPair,
  BackwardStepNotInW,
  InvalidCategory,
  InvalidComplex,
  InvalidArgument,
  UncertifiedReflectiveData,
  TimeSliceViolated,
  TruncationTooSmall,
  WindowExceedsTruncation,
  Schema,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the whole toolkit; `kind()` discriminates.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace aqft
