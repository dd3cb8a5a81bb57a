#pragma once

#include <cstddef>
#include <functional>

#include "aderdg/error.hpp"
#include "aderdg/models/elastic.hpp"
#include "aderdg/models/state.hpp"

namespace aderdg {

/// Where a ghost state is requested: a face quadrature point of a boundary element.
template <int D>
struct BoundaryPoint {
  Vec<D> x{};           ///< physical position
  double t = 0.0;       ///< physical time of the time node
  int time_node = 0;    ///< index of the time quadrature node within the step
  std::size_t element = 0;
  int axis = 0;
  int side = 0;         ///< 0 = low face, 1 = high face
  int face_node = 0;
  Vec<D> xi{};          ///< reference coordinates of the point inside the element
};

template <HyperbolicModel M>
using GhostFn = std::function<State<M::kVars>(const State<M::kVars>&, const BoundaryPoint<M::kDim>&)>;

template <HyperbolicModel M>
using StateField = std::function<State<M::kVars>(const Vec<M::kDim>&, double)>;

/// Weak Dirichlet condition: the prescribed state is used as the outer trace.
template <HyperbolicModel M>
GhostFn<M> dirichlet_ghost(StateField<M> field) {
  return [field = std::move(field)](const State<M::kVars>&, const BoundaryPoint<M::kDim>& p) { return field(p.x, p.t); };
}

/// Mirror state for a traction-free face with normal along axis: the stress
/// entries that form sigma.n change sign and velocities are copied, so the
/// average of both traces carries zero traction.
template <int D>
State<Elastic<D>::kVars> free_surface_ghost(const State<Elastic<D>::kVars>& q, int axis) {
  auto g = q;
  for (int i = 0; i < D; ++i) g[Elastic<D>::stress_index(i, axis)] = -q[Elastic<D>::stress_index(i, axis)];
  return g;
}

template <HyperbolicModel M>
GhostFn<M> free_surface_ghost_fn() {
  if constexpr (std::is_same_v<M, Elastic<2>> || std::is_same_v<M, Elastic<3>>) {
    return [](const State<M::kVars>& q, const BoundaryPoint<M::kDim>& p) { return free_surface_ghost<M::kDim>(q, p.axis); };
  } else {
    throw Error(ErrorKind::UnknownSpec, "free surface boundaries are defined for elasticity only");
  }
}

}  // namespace aderdg
