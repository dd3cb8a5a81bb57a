#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "aderdg/dg/ader_kernel.hpp"
#include "aderdg/dg/numerical_flux.hpp"
#include "aderdg/dg/parallel.hpp"
#include "aderdg/grid/boundary.hpp"
#include "aderdg/grid/cartesian_mesh.hpp"

namespace aderdg {

/// Largest supported polynomial degree.
inline constexpr int kMaxDegree = 7;

/// CFL step dt = cfl h_min / ((2N+1) |lambda_max|).
inline double cfl_time_step(double cfl, double h_min, int degree, double lambda_max) {
  if (!(lambda_max > 0.0)) throw Error(ErrorKind::ZeroSignalSpeed, "maximum signal speed is zero");
  return cfl * h_min / ((2.0 * degree + 1.0) * lambda_max);
}

/// Conservative default CFL number for degree N in d dimensions. The one
/// dimensional limits were measured for this scheme; the 2D and 3D limits
/// are roughly the 1D value divided by d.
inline double default_cfl(int degree, int dim) {
  static constexpr std::array<double, kMaxDegree + 1> kLimit1D{1.0, 0.9, 0.7, 0.6, 0.55, 0.45, 0.4, 0.35};
  if (degree < 0 || degree > kMaxDegree) throw Error(ErrorKind::UnsupportedOrder, "degree out of range");
  return 0.9 * kLimit1D[static_cast<std::size_t>(degree)] / dim;
}

/// Point forcing f(t) delta(x - x_s), given in state units per unit time.
template <HyperbolicModel M>
struct PointSourceTerm {
  Vec<M::kDim> location{};
  std::function<State<M::kVars>(double)> amplitude;
};

struct StepStats {
  int max_picard_iterations = 0;
  double max_picard_residual = 0.0;
};

template <HyperbolicModel M>
class Solver;

namespace detail {

/// Degree-specific stepping, hidden behind a virtual interface so that the
/// solver can pick N at run time.
template <HyperbolicModel M>
class StepperBase {
 public:
  virtual ~StepperBase() = default;
  virtual StepStats step(Solver<M>& s, double dt) = 0;
  virtual State<M::kVars> evaluate(const double* u, const Vec<M::kDim>& xi) const = 0;
  virtual State<M::kVars> evaluate_space_time(const double* q, const Vec<M::kDim>& xi, double tau) const = 0;
  virtual void trace(const double* q, int axis, int side, double* out) const = 0;
  virtual PicardReport predict_element(const Solver<M>& s, std::size_t e, double dt, const PicardOptions& opt,
                                       double* q, std::vector<double>* history) const = 0;
  virtual double fixed_point_residual(const Solver<M>& s, std::size_t e, double dt, const double* q) const = 0;
  virtual std::vector<double> weights_at(const Vec<M::kDim>& xi) const = 0;
};

template <HyperbolicModel M, int N>
class Stepper;

}  // namespace detail

/// Solution on a Cartesian mesh advanced by the ADER-DG one-step scheme.
template <HyperbolicModel M>
class Solver {
 public:
  static constexpr int D = M::kDim;
  static constexpr int V = M::kVars;
  using Material = typename M::Material;
  using StateT = State<V>;
  using Mesh = CartesianMesh<D>;

  Solver(M model, Mesh mesh, int degree, std::function<Material(const Vec<D>&)> material = {})
      : model_(std::move(model)), mesh_(std::move(mesh)), degree_(degree) {
    if (degree < 0 || degree > kMaxDegree)
      throw Error(ErrorKind::UnsupportedOrder, "polynomial degree must be in 0.." + std::to_string(kMaxDegree));
    mesh_.check_boundaries();
    p_ = degree + 1;
    np_ = ipow(p_, D);
    nf_ = ipow(p_, D - 1);
    const std::size_t ne = mesh_.num_elements();
    materials_.resize(ne);
    for (std::size_t e = 0; e < ne; ++e)
      materials_[e] = material ? material(mesh_.barycenter(mesh_.cell(e))) : Material{};
    dofs_.assign(ne * np_ * V, 0.0);
    stepper_ = make_stepper(degree);
    for (int d = 0; d < D; ++d)
      for (int side = 0; side < 2; ++side)
        if (mesh_.boundary(d, side) == BoundaryKind::FreeSurface) ghosts_[d][side] = free_surface_ghost_fn<M>();
  }

  const M& model() const { return model_; }
  const Mesh& mesh() const { return mesh_; }
  int degree() const { return degree_; }
  int nodes_per_element() const { return np_; }
  int face_nodes() const { return nf_; }
  std::size_t num_elements() const { return mesh_.num_elements(); }
  const Material& material(std::size_t e) const { return materials_[e]; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  std::vector<double>& dofs() { return dofs_; }
  const std::vector<double>& dofs() const { return dofs_; }
  double* element_dofs(std::size_t e) { return dofs_.data() + e * np_ * V; }
  const double* element_dofs(std::size_t e) const { return dofs_.data() + e * np_ * V; }

  /// Ghost for a Dirichlet or coupled face; free-surface faces are set up automatically.
  void set_ghost(int axis, int side, GhostFn<M> fn) { ghosts_[axis][side] = std::move(fn); }
  const GhostFn<M>& ghost(int axis, int side) const { return ghosts_[axis][side]; }

  void add_point_source(PointSourceTerm<M> src) { sources_.push_back(std::move(src)); }

  /// Keep the space-time predictor of the last step (coupling reads it).
  void keep_predictor(bool keep) { keep_predictor_ = keep; }
  const double* predictor(std::size_t e) const { return predictor_.data() + e * p_ * np_ * V; }
  bool has_predictor() const { return !predictor_.empty(); }

  void set_picard(const PicardOptions& opt) { picard_ = opt; }
  const PicardOptions& picard() const { return picard_; }

  /// Physical coordinates of node k of element e.
  Vec<D> node_position(std::size_t e, int k) const {
    const auto& b = basis(degree_);
    Vec<D> xi{};
    int rem = k;
    for (int d = 0; d < D; ++d) {
      xi[d] = b.nodes()[rem % p_];
      rem /= p_;
    }
    return mesh_.physical(mesh_.cell(e), xi);
  }

  /// Nodal interpolation at the Gauss-Legendre points.
  void set_state(const std::function<StateT(const Vec<D>&)>& f) {
    parallel_for(num_elements(), [&](std::size_t e) {
      double* u = element_dofs(e);
      for (int k = 0; k < np_; ++k) {
        const auto q = f(node_position(e, k));
        std::copy(q.begin(), q.end(), u + k * V);
      }
    });
  }

  /// Largest |lambda| over all nodes and axis directions.
  double max_signal_speed() const {
    std::vector<double> per(num_elements());
    parallel_for(num_elements(), [&](std::size_t e) {
      double m = 0.0;
      const double* u = element_dofs(e);
      for (int k = 0; k < np_; ++k) {
        StateT q;
        std::copy(u + k * V, u + (k + 1) * V, q.begin());
        for (int d = 0; d < D; ++d) {
          Vec<D> n{};
          n[d] = 1.0;
          m = std::max(m, model_.max_signal_speed(q, n, materials_[e]));
        }
      }
      per[e] = m;
    });
    return per.empty() ? 0.0 : *std::max_element(per.begin(), per.end());
  }

  double stable_dt(double cfl) const { return cfl_time_step(cfl, mesh_.h_min(), degree_, max_signal_speed()); }

  /// One ADER-DG step of size dt.
  StepStats step(double dt) {
    if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "time step must be positive");
    auto stats = stepper_->step(*this, dt);
    time_ += dt;
    return stats;
  }

  /// Solution value at x; a point on a shared face is taken from the lower-index element.
  StateT evaluate(const Vec<D>& x) const {
    const auto c = mesh_.locate(x);
    const std::size_t e = mesh_.linear(c);
    return stepper_->evaluate(element_dofs(e), mesh_.reference(c, x));
  }

  StateT evaluate_in(std::size_t e, const Vec<D>& xi) const { return stepper_->evaluate(element_dofs(e), xi); }
  StateT evaluate_predictor(std::size_t e, const Vec<D>& xi, double tau) const {
    return stepper_->evaluate_space_time(predictor(e), xi, tau);
  }

  /// Trace of element e's last predictor on face (axis, side): [tnode][face node][var].
  std::vector<double> predictor_trace(std::size_t e, int axis, int side) const {
    std::vector<double> out(p_ * nf_ * V);
    stepper_->trace(predictor(e), axis, side, out.data());
    return out;
  }

  /// Predictor of element e for the current state, for inspection.
  PicardReport predict(std::size_t e, double dt, const PicardOptions& opt, std::vector<double>& q,
                       std::vector<double>* history = nullptr) const {
    q.assign(p_ * np_ * V, 0.0);
    return stepper_->predict_element(*this, e, dt, opt, q.data(), history);
  }
  double fixed_point_residual(std::size_t e, double dt, const std::vector<double>& q) const {
    return stepper_->fixed_point_residual(*this, e, dt, q.data());
  }

  /// L2 norm of (u_h - ref) per variable with (N+2)-point Gauss over-integration.
  std::array<double, V> l2_error(const std::function<StateT(const Vec<D>&)>& ref) const {
    return l2_error_mapped<V>(ref, [](const StateT& q) { return q; });
  }

  /// Same norm applied to derived quantities map(q), e.g. primitive variables.
  template <std::size_t K, class Map>
  std::array<double, K> l2_error_mapped(const std::function<StateT(const Vec<D>&)>& ref, Map map) const {
    const auto [pts, wts] = gauss_legendre(degree_ + 2);
    const int nq = static_cast<int>(pts.size());
    const int nq_d = ipow(nq, D);
    std::vector<std::array<double, K>> per(num_elements());
    const double vol = mesh_.cell_volume();
    parallel_for(num_elements(), [&](std::size_t e) {
      std::array<double, K> acc{};
      const auto c = mesh_.cell(e);
      for (int i = 0; i < nq_d; ++i) {
        Vec<D> xi{};
        double w = 1.0;
        int rem = i;
        for (int d = 0; d < D; ++d) {
          xi[d] = pts[rem % nq];
          w *= wts[rem % nq];
          rem /= nq;
        }
        const std::array<double, K> uh = map(stepper_->evaluate(element_dofs(e), xi));
        const std::array<double, K> r = map(ref(mesh_.physical(c, xi)));
        for (std::size_t v = 0; v < K; ++v) acc[v] += w * vol * (uh[v] - r[v]) * (uh[v] - r[v]);
      }
      per[e] = acc;
    });
    std::array<double, K> total{};
    for (const auto& a : per)
      for (std::size_t v = 0; v < K; ++v) total[v] += a[v];
    for (auto& t : total) t = std::sqrt(t);
    return total;
  }

  /// Mesh integral of each variable.
  std::array<double, V> integral() const {
    const auto& w = basis(degree_).weights();
    std::array<double, V> total{};
    for (std::size_t e = 0; e < num_elements(); ++e) {
      const double* u = element_dofs(e);
      for (int k = 0; k < np_; ++k) {
        double c = mesh_.cell_volume();
        int rem = k;
        for (int d = 0; d < D; ++d) {
          c *= w[rem % p_];
          rem /= p_;
        }
        for (int v = 0; v < V; ++v) total[v] += c * u[k * V + v];
      }
    }
    return total;
  }

 private:
  template <HyperbolicModel, int>
  friend class detail::Stepper;

  std::unique_ptr<detail::StepperBase<M>> make_stepper(int degree);

  M model_;
  Mesh mesh_;
  int degree_ = 0, p_ = 1, np_ = 1, nf_ = 1;
  std::vector<Material> materials_;
  std::vector<double> dofs_;
  std::vector<double> predictor_;
  std::vector<double> traces_;
  std::vector<double> fluct_;
  std::vector<double> du_;
  std::array<std::array<GhostFn<M>, 2>, D> ghosts_{};
  std::vector<PointSourceTerm<M>> sources_;
  PicardOptions picard_{};
  bool keep_predictor_ = false;
  double time_ = 0.0;
  std::unique_ptr<detail::StepperBase<M>> stepper_;
};

namespace detail {

template <HyperbolicModel M, int N>
class Stepper final : public StepperBase<M> {
 public:
  using K = AderKernel<M, N>;
  static constexpr int D = M::kDim, V = M::kVars, P = K::P, NP = K::NP, NF = K::NF;
  using StateT = State<V>;

  Stepper() : scratch_(max_threads()) {}

  StepStats step(Solver<M>& s, double dt) override {
    const auto& mesh = s.mesh_;
    const std::size_t ne = mesh.num_elements();
    const auto& b = kernel_.basis1d();
    Vec<D> inv_dx{};
    for (int d = 0; d < D; ++d) inv_dx[d] = 1.0 / mesh.spacing()[d];

    s.predictor_.resize(ne * K::kSpaceTime);
    s.traces_.resize(ne * 2 * D * K::kTrace);
    s.fluct_.resize(ne * 2 * D * NF * V);
    s.du_.resize(ne * K::kDofs);
    std::vector<PicardReport> reports(ne);
    if (scratch_.size() < static_cast<std::size_t>(max_threads())) scratch_.resize(max_threads());

    // 1. predictor, volume terms and face traces
    parallel_for(ne, [&](std::size_t e) {
      auto& sc = scratch_[thread_id()];
      double* q = s.predictor_.data() + e * K::kSpaceTime;
      reports[e] = kernel_.predict(s.model_, s.materials_[e], s.element_dofs(e), dt, inv_dx, s.picard_, q, sc);
      kernel_.volume(s.model_, s.materials_[e], q, dt, inv_dx, s.du_.data() + e * K::kDofs, sc);
      for (int d = 0; d < D; ++d)
        for (int side = 0; side < 2; ++side) kernel_.trace(q, d, side, trace_ptr(s, e, d, side));
    });

    // 2. numerical fluxes; each element owns its high faces and its boundary faces
    parallel_for(ne, [&](std::size_t e) {
      const auto c = mesh.cell(e);
      for (int d = 0; d < D; ++d) {
        Vec<D> n{};
        n[d] = 1.0;
        if (auto nb = mesh.neighbor(e, d, 1)) {
          interior_face(s, e, *nb, d, n);
        } else {
          boundary_face(s, e, c, d, 1, n, dt);
        }
        if (!mesh.neighbor(e, d, 0)) boundary_face(s, e, c, d, 0, n, dt);
      }
    });

    // 3. face terms, point sources and update
    const auto sources = source_weights(s);
    parallel_for(ne, [&](std::size_t e) {
      double* du = s.du_.data() + e * K::kDofs;
      for (int d = 0; d < D; ++d)
        for (int side = 0; side < 2; ++side)
          kernel_.add_face(d, side, fluct_ptr(s, e, d, side), dt * inv_dx[d], du);
      for (const auto& [src, elem, phi] : sources) {
        if (elem != e) continue;
        StateT amp{};
        for (int m = 0; m < P; ++m) {
          const auto a = s.sources_[src].amplitude(s.time_ + b.nodes()[m] * dt);
          for (int v = 0; v < V; ++v) amp[v] += b.weights()[m] * a[v];
        }
        for (int k = 0; k < NP; ++k) {
          const double c = dt * phi[k] / (kernel_.node_weight(k) * s.mesh_.cell_volume());
          for (int v = 0; v < V; ++v) du[k * V + v] += c * amp[v];
        }
      }
      double* u = s.element_dofs(e);
      for (int k = 0; k < NP; ++k)
        for (int v = 0; v < V; ++v)
          if (M::evolves(v)) u[k * V + v] += du[k * V + v];
    });

    if (!s.keep_predictor_) s.predictor_.clear();
    StepStats st;
    for (const auto& r : reports) {
      st.max_picard_iterations = std::max(st.max_picard_iterations, r.iterations);
      st.max_picard_residual = std::max(st.max_picard_residual, r.residual);
    }
    return st;
  }

  StateT evaluate(const double* u, const Vec<D>& xi) const override { return kernel_.evaluate(u, xi); }
  StateT evaluate_space_time(const double* q, const Vec<D>& xi, double tau) const override {
    return kernel_.evaluate_space_time(q, xi, tau);
  }
  void trace(const double* q, int axis, int side, double* out) const override { kernel_.trace(q, axis, side, out); }

  PicardReport predict_element(const Solver<M>& s, std::size_t e, double dt, const PicardOptions& opt, double* q,
                               std::vector<double>* history) const override {
    typename K::Scratch sc;
    return kernel_.predict(s.model_, s.materials_[e], s.element_dofs(e), dt, inv_dx(s), opt, q, sc, history);
  }

  double fixed_point_residual(const Solver<M>& s, std::size_t e, double dt, const double* q) const override {
    typename K::Scratch sc;
    return kernel_.fixed_point_residual(s.model_, s.materials_[e], s.element_dofs(e), dt, inv_dx(s), q, sc);
  }

  std::vector<double> weights_at(const Vec<D>& xi) const override {
    const auto a = kernel_.basis_at(xi);
    return {a.begin(), a.end()};
  }

 private:
  static Vec<D> inv_dx(const Solver<M>& s) {
    Vec<D> r{};
    for (int d = 0; d < D; ++d) r[d] = 1.0 / s.mesh_.spacing()[d];
    return r;
  }

  static double* trace_ptr(Solver<M>& s, std::size_t e, int d, int side) {
    return s.traces_.data() + ((e * D + d) * 2 + side) * K::kTrace;
  }
  static double* fluct_ptr(Solver<M>& s, std::size_t e, int d, int side) {
    return s.fluct_.data() + ((e * D + d) * 2 + side) * NF * V;
  }

  void interior_face(Solver<M>& s, std::size_t e, std::size_t nb, int d, const Vec<D>& n) {
    const double* tl = trace_ptr(s, e, d, 1);
    const double* tr = trace_ptr(s, nb, d, 0);
    double* fl = fluct_ptr(s, e, d, 1);
    double* fr = fluct_ptr(s, nb, d, 0);
    std::fill(fl, fl + NF * V, 0.0);
    std::fill(fr, fr + NF * V, 0.0);
    const auto& w = kernel_.basis1d().weights();
    const auto& ml = s.materials_[e];
    const auto& mr = s.materials_[nb];
    for (int m = 0; m < P; ++m) {
      for (int f = 0; f < NF; ++f) {
        StateT ql, qr;
        std::copy(tl + (m * NF + f) * V, tl + (m * NF + f + 1) * V, ql.begin());
        std::copy(tr + (m * NF + f) * V, tr + (m * NF + f + 1) * V, qr.begin());
        const auto g = rusanov(s.model_, ql, qr, n, ml, mr);
        const auto dn = path_jump(s.model_, ql, qr, n, ml, mr);
        for (int v = 0; v < V; ++v) {
          fl[f * V + v] += w[m] * (g[v] + dn[v]);
          fr[f * V + v] += w[m] * (-g[v] + dn[v]);
        }
      }
    }
  }

  void boundary_face(Solver<M>& s, std::size_t e, const typename CartesianMesh<D>::Index& c, int d, int side,
                     const Vec<D>& n, double dt) {
    const auto& ghost = s.ghosts_[d][side];
    if (!ghost)
      throw Error(ErrorKind::UnknownSpec, std::string("no ghost state for ") + to_string(s.mesh_.boundary(d, side)) +
                                              " face on axis " + std::to_string(d));
    const double* tin = trace_ptr(s, e, d, side);
    double* fl = fluct_ptr(s, e, d, side);
    std::fill(fl, fl + NF * V, 0.0);
    const auto& b = kernel_.basis1d();
    const auto& mat = s.materials_[e];
    BoundaryPoint<D> bp;
    bp.element = e;
    bp.axis = d;
    bp.side = side;
    for (int m = 0; m < P; ++m) {
      bp.time_node = m;
      bp.t = s.time_ + b.nodes()[m] * dt;
      for (int f = 0; f < NF; ++f) {
        const int k = kernel_.line_node(d, f, 0);
        Vec<D> xi = kernel_.node_xi(k);
        xi[d] = side ? 1.0 : 0.0;
        bp.xi = xi;
        bp.face_node = f;
        bp.x = s.mesh_.physical(c, xi);
        StateT qin;
        std::copy(tin + (m * NF + f) * V, tin + (m * NF + f + 1) * V, qin.begin());
        const StateT qout = ghost(qin, bp);
        const StateT& ql = side ? qin : qout;
        const StateT& qr = side ? qout : qin;
        const auto g = rusanov(s.model_, ql, qr, n, mat, mat);
        const auto dn = path_jump(s.model_, ql, qr, n, mat, mat);
        const double sign = side ? 1.0 : -1.0;
        for (int v = 0; v < V; ++v) fl[f * V + v] += b.weights()[m] * (sign * g[v] + dn[v]);
      }
    }
  }

  struct SourceHit {
    std::size_t src;
    std::size_t elem;
    std::vector<double> phi;
  };

  /// Each point source is shared equally by all elements whose closed box holds it.
  std::vector<SourceHit> source_weights(const Solver<M>& s) const {
    std::vector<SourceHit> out;
    const auto& mesh = s.mesh_;
    for (std::size_t i = 0; i < s.sources_.size(); ++i) {
      const auto& x = s.sources_[i].location;
      if (!mesh.contains(x)) throw Error(ErrorKind::OutsideDomain, "point source outside the mesh");
      std::vector<typename CartesianMesh<D>::Index> cells{mesh.locate(x)};
      for (int d = 0; d < D; ++d) {
        const std::size_t count = cells.size();
        for (std::size_t j = 0; j < count; ++j) {
          auto c = cells[j];
          const double xi = (x[d] - mesh.lo()[d]) / mesh.spacing()[d] - c[d];
          if (xi == 1.0 && c[d] + 1 < mesh.counts()[d]) {
            ++c[d];
            cells.push_back(c);
          }
        }
      }
      for (const auto& c : cells) {
        auto phi = weights_at(mesh.reference(c, x));
        for (auto& p : phi) p /= static_cast<double>(cells.size());
        out.push_back({i, mesh.linear(c), std::move(phi)});
      }
    }
    return out;
  }

  K kernel_;
  std::vector<typename K::Scratch> scratch_;
};

template <HyperbolicModel M, int N>
std::unique_ptr<StepperBase<M>> make_stepper_n() {
  return std::make_unique<Stepper<M, N>>();
}

}  // namespace detail

template <HyperbolicModel M>
std::unique_ptr<detail::StepperBase<M>> Solver<M>::make_stepper(int degree) {
  switch (degree) {
    case 0: return detail::make_stepper_n<M, 0>();
    case 1: return detail::make_stepper_n<M, 1>();
    case 2: return detail::make_stepper_n<M, 2>();
    case 3: return detail::make_stepper_n<M, 3>();
    case 4: return detail::make_stepper_n<M, 4>();
    case 5: return detail::make_stepper_n<M, 5>();
    case 6: return detail::make_stepper_n<M, 6>();
    case 7: return detail::make_stepper_n<M, 7>();
  }
  throw Error(ErrorKind::UnsupportedOrder, "polynomial degree must be in 0..7");
}

}  // namespace aderdg
