#pragma once

#include <stdexcept>
#include <string>

namespace aderdg {

enum class ErrorKind {
  NonPositiveDepth,
  UnsupportedOrder,
  PicardDiverged,
  PathThroughInvalidState,
  BadExtents,
  UnknownSpec,
  NonNestedMeshes,
  ShootingFailed,
  SingularTravelingFrame,
  ComplexEigenvalue,
  PoleGuard,
  OutsideDomain,
  ZeroSignalSpeed,
  ConfigError,
  IoError,
  InvalidArgument,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so that
/// callers (and the CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace aderdg
