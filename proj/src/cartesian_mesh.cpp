#include "aderdg/grid/cartesian_mesh.hpp"

namespace aderdg {

BoundaryKind boundary_kind_from_string(const std::string& s) {
  if (s == "periodic") return BoundaryKind::Periodic;
  if (s == "dirichlet") return BoundaryKind::Dirichlet;
  if (s == "free_surface") return BoundaryKind::FreeSurface;
  if (s == "coupled") return BoundaryKind::Coupled;
  throw Error(ErrorKind::UnknownSpec, "unknown boundary kind '" + s + "'");
}

const char* to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::Periodic: return "periodic";
    case BoundaryKind::Dirichlet: return "dirichlet";
    case BoundaryKind::FreeSurface: return "free_surface";
    case BoundaryKind::Coupled: return "coupled";
  }
  return "unknown";
}

}  // namespace aderdg
