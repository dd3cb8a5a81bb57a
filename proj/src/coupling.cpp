#include "aderdg/coupling/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aderdg/dg/basis.hpp"

namespace aderdg {

CouplingMap::CouplingMap(const CartesianMesh<3>& solid, const CartesianMesh<2>& fluid, int degree, double rho_w)
    : solid_counts_(solid.counts()), rho_w_(rho_w) {
  if (!(rho_w > 0.0)) throw Error(ErrorKind::InvalidArgument, "water density must be positive");
  for (int d = 0; d < 2; ++d) {
    const double scale = std::max(1.0, solid.hi()[d] - solid.lo()[d]);
    if (std::abs(solid.lo()[d] - fluid.lo()[d]) > 1e-12 * scale || std::abs(solid.hi()[d] - fluid.hi()[d]) > 1e-12 * scale)
      throw Error(ErrorKind::NonNestedMeshes, "fluid and solid horizontal extents differ on axis " + std::to_string(d));
    if (fluid.counts()[d] % solid.counts()[d] != 0)
      throw Error(ErrorKind::NonNestedMeshes, "fluid cell count " + std::to_string(fluid.counts()[d]) +
                                                  " is not a multiple of the solid count " +
                                                  std::to_string(solid.counts()[d]));
    refine_[d] = fluid.counts()[d] / solid.counts()[d];
  }
  const auto& nodes = basis(degree).nodes();
  const int p = static_cast<int>(nodes.size());
  nf_ = p * p;
  // per axis: sub-cell offset and reference coordinate of every 1D node
  std::array<std::vector<std::pair<int, double>>, 2> sub;
  for (int d = 0; d < 2; ++d)
    for (double a : nodes) {
      const double s = a * refine_[d];
      const int k = std::clamp(static_cast<int>(std::ceil(s)) - 1, 0, refine_[d] - 1);
      sub[d].emplace_back(k, s - k);
    }
  links_.resize(static_cast<std::size_t>(solid_counts_[0]) * solid_counts_[1] * nf_);
  for (int j = 0; j < solid_counts_[1]; ++j)
    for (int i = 0; i < solid_counts_[0]; ++i)
      for (int f = 0; f < nf_; ++f) {
        const auto [ox, rx] = sub[0][f % p];
        const auto [oy, ry] = sub[1][f / p];
        auto& l = links_[(static_cast<std::size_t>(j) * solid_counts_[0] + i) * nf_ + f];
        l.fluid_cell = fluid.linear({i * refine_[0] + ox, j * refine_[1] + oy});
        l.xi = {rx, ry};
      }
}

const FacePointLink& CouplingMap::link(std::size_t solid_element, int face_node) const {
  const std::size_t layer = static_cast<std::size_t>(solid_counts_[0]) * solid_counts_[1];
  if (solid_element / layer != static_cast<std::size_t>(solid_counts_[2] - 1))
    throw Error(ErrorKind::InvalidArgument, "solid element does not touch the top face");
  return links_[(solid_element % layer) * nf_ + face_node];
}

double fluid_depth_at(const CouplingMap& map, const Solver<Hsgn>& fluid, std::size_t solid_element, int face_node,
                      double tau) {
  const auto& l = map.link(solid_element, face_node);
  const auto q = fluid.evaluate_predictor(l.fluid_cell, l.xi, tau);
  fluid.model().validate(q);
  return q[0];
}

State<9> solid_top_ghost(const State<9>& q_in, double target_szz) {
  auto g = q_in;
  g[Elastic3D::stress_index(2, 2)] = 2.0 * target_szz - q_in[Elastic3D::stress_index(2, 2)];
  g[Elastic3D::stress_index(0, 2)] = -q_in[Elastic3D::stress_index(0, 2)];
  g[Elastic3D::stress_index(1, 2)] = -q_in[Elastic3D::stress_index(1, 2)];
  return g;
}

double synchronized_dt(double dt_fluid, double dt_solid) {
  if (!(dt_fluid > 0.0) || !(dt_solid > 0.0)) throw Error(ErrorKind::InvalidArgument, "time steps must be positive");
  return std::min(dt_fluid, dt_solid);
}

CoupledSystem::CoupledSystem(Solver<Hsgn>& fluid, Solver<Elastic3D>& solid, CouplingOptions opt)
    : fluid_(fluid), solid_(solid), opt_(opt), map_(solid.mesh(), fluid.mesh(), solid.degree(), opt.rho_w) {
  if (solid.mesh().boundary(2, 1) != BoundaryKind::Coupled)
    throw Error(ErrorKind::UnknownSpec, "solid top face must be marked coupled");
  fluid_.keep_predictor(true);
  solid_.set_ghost(2, 1, [this](const State<9>& q, const BoundaryPoint<3>& p) {
    const double tau = basis(solid_.degree()).nodes()[p.time_node];
    return solid_top_ghost(q, target_szz(p.element, p.face_node, tau));
  });
}

double CoupledSystem::candidate_dt() const {
  const double cf = opt_.cfl_fluid > 0.0 ? opt_.cfl_fluid : default_cfl(fluid_.degree(), 2);
  const double cs = opt_.cfl_solid > 0.0 ? opt_.cfl_solid : default_cfl(solid_.degree(), 3);
  return synchronized_dt(fluid_.stable_dt(cf), solid_.stable_dt(cs));
}

double CoupledSystem::step(double dt) {
  fluid_.step(dt);  // predictor of this step stays available to the solid ghost
  solid_.step(dt);
  return dt;
}

double CoupledSystem::target_szz(std::size_t solid_element, int face_node, double tau) const {
  const auto& l = map_.link(solid_element, face_node);
  const auto q = fluid_.evaluate_predictor(l.fluid_cell, l.xi, tau);
  fluid_.model().validate(q);
  const auto& prm = fluid_.model().params();
  double load = prm.g * q[0];
  if (opt_.non_hydrostatic) load += prm.gamma * q[4] / q[0];
  return opt_.rho_w * load;
}

double CoupledSystem::traction_residual() const {
  if (!solid_.has_predictor() || !fluid_.has_predictor())
    throw Error(ErrorKind::InvalidArgument, "traction residual needs the predictors of the last step");
  const auto& mesh = solid_.mesh();
  const auto& prm = fluid_.model().params();
  const double scale = opt_.rho_w * prm.g * prm.H0;
  const int p = solid_.degree() + 1, nf = solid_.face_nodes();
  const auto& nodes = basis(solid_.degree()).nodes();
  const int nz = mesh.counts()[2];
  double worst = 0.0;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    if (mesh.cell(e)[2] != nz - 1) continue;
    const auto tr = solid_.predictor_trace(e, 2, 1);
    for (int m = 0; m < p; ++m)
      for (int f = 0; f < nf; ++f) {
        State<9> q;
        std::copy(tr.begin() + (m * nf + f) * 9, tr.begin() + (m * nf + f + 1) * 9, q.begin());
        const double target = target_szz(e, f, nodes[m]);
        const auto g = solid_top_ghost(q, target);
        const auto mid = [&](int v) { return 0.5 * (q[v] + g[v]); };
        worst = std::max({worst, std::abs(mid(Elastic3D::stress_index(2, 2)) - target),
                          std::abs(mid(Elastic3D::stress_index(0, 2))), std::abs(mid(Elastic3D::stress_index(1, 2)))});
      }
  }
  return worst / scale;
}

}  // namespace aderdg
