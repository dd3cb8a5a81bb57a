#include "aderdg/error.hpp"

namespace aderdg {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonPositiveDepth: return "NonPositiveDepth";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::PicardDiverged: return "PicardDiverged";
    case ErrorKind::PathThroughInvalidState: return "PathThroughInvalidState";
    case ErrorKind::BadExtents: return "BadExtents";
    case ErrorKind::UnknownSpec: return "UnknownSpec";
    case ErrorKind::NonNestedMeshes: return "NonNestedMeshes";
    case ErrorKind::ShootingFailed: return "ShootingFailed";
    case ErrorKind::SingularTravelingFrame: return "SingularTravelingFrame";
    case ErrorKind::ComplexEigenvalue: return "ComplexEigenvalue";
    case ErrorKind::PoleGuard: return "PoleGuard";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::ZeroSignalSpeed: return "ZeroSignalSpeed";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace aderdg
