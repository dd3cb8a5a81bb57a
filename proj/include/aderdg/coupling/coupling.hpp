#pragma once

#include <cstddef>
#include <vector>

#include "aderdg/dg/solver.hpp"
#include "aderdg/grid/cartesian_mesh.hpp"
#include "aderdg/models/elastic.hpp"
#include "aderdg/models/hsgn.hpp"

namespace aderdg {

/// Location of one solid top-face quadrature point inside the fluid mesh.
struct FacePointLink {
  std::size_t fluid_cell = 0;
  Vec<2> xi{};
};

/// Face-to-subgrid map between the top face of a 3D solid mesh and the 2D
/// fluid mesh that refines it by integer factors.
class CouplingMap {
 public:
  /// Throws NonNestedMeshes unless the horizontal extents coincide and the
  /// fluid counts are integer multiples of the solid counts.
  CouplingMap(const CartesianMesh<3>& solid, const CartesianMesh<2>& fluid, int degree, double rho_w = 1000.0);

  std::array<int, 2> refinement() const { return refine_; }
  double rho_w() const { return rho_w_; }
  int face_nodes() const { return nf_; }
  std::size_t size() const { return links_.size(); }

  /// Link for face node f of the solid element e, which must touch the top face.
  const FacePointLink& link(std::size_t solid_element, int face_node) const;

 private:
  std::array<int, 3> solid_counts_{};
  std::array<int, 2> refine_{};
  int nf_ = 0;
  double rho_w_ = 1000.0;
  std::vector<FacePointLink> links_;
};

/// Depth from the fluid space-time predictor at a mapped point and relative time tau.
double fluid_depth_at(const CouplingMap& map, const Solver<Hsgn>& fluid, std::size_t solid_element, int face_node,
                      double tau);

/// Outer state whose average with q_in carries sigma_zz = target and zero shear on a z face.
State<9> solid_top_ghost(const State<9>& q_in, double target_szz);

/// Common step of the two solvers: the smaller candidate.
double synchronized_dt(double dt_fluid, double dt_solid);

struct CouplingOptions {
  double rho_w = 1000.0;
  bool non_hydrostatic = false;  ///< add rho_w gamma p to the hydrostatic load
  double cfl_fluid = 0.0;        ///< 0 selects default_cfl
  double cfl_solid = 0.0;
};

/// One-way coupled fluid/solid system. The fluid advances first with its
/// predictor kept, then the solid reads it through the top-face ghost.
class CoupledSystem {
 public:
  CoupledSystem(Solver<Hsgn>& fluid, Solver<Elastic3D>& solid, CouplingOptions opt = {});
  CoupledSystem(const CoupledSystem&) = delete;
  CoupledSystem& operator=(const CoupledSystem&) = delete;

  const CouplingMap& map() const { return map_; }
  double candidate_dt() const;
  /// Advances both solvers by dt and returns it.
  double step(double dt);
  double step() { return step(candidate_dt()); }

  /// Target normal stress at a solid face point for the current step.
  double target_szz(std::size_t solid_element, int face_node, double tau) const;

  /// Max deviation of the face-average traction from its targets over the last
  /// step, relative to rho_w g H0. Requires the solid predictor to be kept.
  double traction_residual() const;

 private:
  Solver<Hsgn>& fluid_;
  Solver<Elastic3D>& solid_;
  CouplingOptions opt_;
  CouplingMap map_;
};

}  // namespace aderdg
