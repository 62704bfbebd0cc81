#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gps {

enum class ErrorKind {
  InvalidArgument,
  IncompatibleSeries,
  NotInvertible,
  NormalizeFirst,
  InvalidForm,
  DomainError,
  InvalidModel,
  InvalidParams,
  OutsideValidityRegion,
  ResonanceError,
  UnsupportedSpec,
  LogTermObstruction,
  InconclusivePrecision,
  InvalidDensity,
  InternalError,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every failure reported by the library. The kind is
/// stable and is what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace gps
