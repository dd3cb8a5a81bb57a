#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "aderdg/dg/basis.hpp"
#include "aderdg/error.hpp"
#include "aderdg/models/state.hpp"

namespace aderdg {

constexpr int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

struct PicardOptions {
  double tol = 1e-12;
  int max_iterations = 0;  ///< 0 picks the model default
  bool fixed = false;      ///< run exactly max_iterations with no early exit
  bool throw_on_divergence = true;
};

struct PicardReport {
  int iterations = 0;
  double residual = 0.0;  ///< relative max-norm of the last update
  bool converged = false;
};

/// Iteration cap. For a linear system on a tensor-product Q_N element the Picard
/// map is nilpotent after D*N + 1 sweeps; nonlinear systems get 2(N+1) sweeps.
constexpr int default_picard_cap(bool linear, int degree, int dim) {
  return linear ? dim * degree + 1 : 2 * (degree + 1);
}

/// Element-local ADER-DG operators for a fixed model and degree N.
///
/// Layouts: element dofs [node][var]; predictor [tnode][node][var]; a face trace
/// [tnode][face node][var]. Nodes are x-fastest: i0 + P*(i1 + P*i2).
template <HyperbolicModel M, int N>
class AderKernel {
 public:
  static constexpr int D = M::kDim;
  static constexpr int V = M::kVars;
  static constexpr int P = N + 1;
  static constexpr int NP = ipow(P, D);
  static constexpr int NF = ipow(P, D - 1);
  static constexpr int kDofs = NP * V;
  static constexpr int kSpaceTime = P * NP * V;
  static constexpr int kTrace = P * NF * V;
  using Material = typename M::Material;
  using StateT = State<V>;

  struct Scratch {
    std::vector<double> r = std::vector<double>(kSpaceTime);
    std::vector<double> qnew = std::vector<double>(kSpaceTime);
    std::vector<double> grad = std::vector<double>(D * kDofs);
    std::vector<double> flux = std::vector<double>(D * kDofs);
    std::vector<double> deriv = std::vector<double>(kDofs);
    std::vector<double> acc = std::vector<double>(kDofs);
  };

  AderKernel() : b_(basis(N)) {
    for (int d = 0; d < D; ++d) stride_[d] = ipow(P, d);
    for (int k = 0; k < NP; ++k) {
      int rem = k;
      std::array<int, 3> idx{};
      for (int d = 0; d < D; ++d) {
        idx[d] = rem % P;
        rem /= P;
      }
      for (int d = 0; d < D; ++d) {
        node_index_[d][k] = idx[d];
        int f = 0, s = 1;
        for (int a = 0; a < D; ++a) {
          if (a == d) continue;
          f += idx[a] * s;
          s *= P;
        }
        face_of_node_[d][k] = f;
        if (idx[d] == 0) face_base_[d][f] = k;
      }
    }
  }

  const Basis1D& basis1d() const { return b_; }
  int node_coord(int d, int k) const { return node_index_[d][k]; }
  int face_node(int d, int k) const { return face_of_node_[d][k]; }
  /// Volume node sitting on the line through face node f of axis d at position j.
  int line_node(int d, int f, int j) const { return face_base_[d][f] + j * stride_[d]; }

  /// Reference coordinates of node k.
  Vec<D> node_xi(int k) const {
    Vec<D> xi{};
    for (int d = 0; d < D; ++d) xi[d] = b_.nodes()[node_index_[d][k]];
    return xi;
  }

  /// out = d/dx_d of the nodal interpolant of in (one time slice).
  void derivative(const double* in, int d, double inv_dx, double* out) const {
    const int s = stride_[d];
    for (int k = 0; k < NP; ++k) {
      const int i = node_index_[d][k];
      const int base = k - i * s;
      double* o = out + k * V;
      for (int v = 0; v < V; ++v) o[v] = 0.0;
      for (int j = 0; j < P; ++j) {
        const double c = b_.diff(i, j) * inv_dx;
        const double* src = in + (base + j * s) * V;
        for (int v = 0; v < V; ++v) o[v] += c * src[v];
      }
    }
  }

  /// Strong-form space residual R = -div F - B grad q + S on one time slice.
  void residual_slice(const M& model, const Material& mat, const double* q, const Vec<D>& inv_dx, double* r,
                      Scratch& s) const {
    std::fill(r, r + kDofs, 0.0);
    if constexpr (M::kHasFlux) {
      for (int k = 0; k < NP; ++k) {
        StateT qk;
        std::copy(q + k * V, q + (k + 1) * V, qk.begin());
        const auto f = model.flux(qk, mat);
        for (int d = 0; d < D; ++d) std::copy(f[d].begin(), f[d].end(), s.flux.data() + d * kDofs + k * V);
      }
      for (int d = 0; d < D; ++d) {
        derivative(s.flux.data() + d * kDofs, d, inv_dx[d], s.deriv.data());
        for (int i = 0; i < kDofs; ++i) r[i] -= s.deriv[i];
      }
    }
    for (int d = 0; d < D; ++d) derivative(q, d, inv_dx[d], s.grad.data() + d * kDofs);
    for (int k = 0; k < NP; ++k) {
      StateT qk;
      std::copy(q + k * V, q + (k + 1) * V, qk.begin());
      GradientStack<V, D> g;
      for (int d = 0; d < D; ++d) std::copy(s.grad.data() + d * kDofs + k * V, s.grad.data() + d * kDofs + (k + 1) * V, g[d].begin());
      const auto b = model.ncp(qk, g, mat);
      const auto src = model.source(qk, mat);
      for (int v = 0; v < V; ++v) r[k * V + v] += src[v] - b[v];
    }
  }

  /// One Picard sweep: qnew[m] = u + dt sum_l picard(m,l) R(q[l]). Returns the
  /// relative max-norm change.
  double sweep(const M& model, const Material& mat, const double* u, double dt, const Vec<D>& inv_dx, const double* q,
               double* qnew, Scratch& s) const {
    for (int l = 0; l < P; ++l) residual_slice(model, mat, q + l * kDofs, inv_dx, s.r.data() + l * kDofs, s);
    double diff = 0.0, scale = 0.0;
    for (int m = 0; m < P; ++m) {
      double* out = qnew + m * kDofs;
      std::copy(u, u + kDofs, out);
      for (int l = 0; l < P; ++l) {
        const double c = dt * b_.picard(m, l);
        const double* r = s.r.data() + l * kDofs;
        for (int i = 0; i < kDofs; ++i) out[i] += c * r[i];
      }
      for (int i = 0; i < kDofs; ++i) {
        diff = std::max(diff, std::abs(out[i] - q[m * kDofs + i]));
        scale = std::max(scale, std::abs(out[i]));
      }
    }
    if (!std::isfinite(diff) || !std::isfinite(scale)) return std::numeric_limits<double>::infinity();
    return scale > 0.0 ? diff / scale : diff;
  }

  /// Local space-time predictor by Picard iteration. q receives kSpaceTime values.
  /// When history is given, the relative change of every sweep is appended.
  PicardReport predict(const M& model, const Material& mat, const double* u, double dt, const Vec<D>& inv_dx,
                       const PicardOptions& opt, double* q, Scratch& s, std::vector<double>* history = nullptr) const {
    const int cap = opt.max_iterations > 0 ? opt.max_iterations : default_picard_cap(M::kLinear, N, D);
    for (int m = 0; m < P; ++m) std::copy(u, u + kDofs, q + m * kDofs);
    PicardReport rep;
    while (rep.iterations < cap) {
      rep.residual = sweep(model, mat, u, dt, inv_dx, q, s.qnew.data(), s);
      std::copy(s.qnew.begin(), s.qnew.end(), q);
      ++rep.iterations;
      if (history) history->push_back(rep.residual);
      if (!std::isfinite(rep.residual)) break;
      if (!opt.fixed && rep.residual <= opt.tol) {
        rep.converged = true;
        break;
      }
    }
    if (opt.fixed || M::kLinear) rep.converged = rep.converged || std::isfinite(rep.residual);
    if (!std::isfinite(rep.residual))
      throw Error(ErrorKind::PicardDiverged, "non-finite predictor after " + std::to_string(rep.iterations) + " sweeps");
    if (!rep.converged && opt.throw_on_divergence)
      throw Error(ErrorKind::PicardDiverged, "predictor change " + std::to_string(rep.residual) + " above tolerance after " +
                                                 std::to_string(rep.iterations) + " sweeps");
    return rep;
  }

  /// Relative fixed-point residual |Phi(q) - q| / |Phi(q)| of a predictor.
  double fixed_point_residual(const M& model, const Material& mat, const double* u, double dt, const Vec<D>& inv_dx,
                              const double* q, Scratch& s) const {
    return sweep(model, mat, u, dt, inv_dx, q, s.qnew.data(), s);
  }

  /// Volume part of the corrector: du = dt * (sum_d weak div of the time-averaged
  /// flux - time-averaged B grad q + time-averaged S).
  void volume(const M& model, const Material& mat, const double* q, double dt, const Vec<D>& inv_dx, double* du,
              Scratch& s) const {
    const auto& w = b_.weights();
    std::fill(du, du + kDofs, 0.0);
    if constexpr (M::kLinear) {
      std::fill(s.acc.begin(), s.acc.end(), 0.0);
      for (int m = 0; m < P; ++m)
        for (int i = 0; i < kDofs; ++i) s.acc[i] += w[m] * q[m * kDofs + i];
      volume_slice(model, mat, s.acc.data(), 1.0, inv_dx, du, s);
    } else {
      for (int m = 0; m < P; ++m) volume_slice(model, mat, q + m * kDofs, w[m], inv_dx, du, s);
    }
    for (int i = 0; i < kDofs; ++i) du[i] *= dt;
  }

  /// Trace of the predictor on face (d, side): out[(m*NF + f)*V + v].
  void trace(const double* q, int d, int side, double* out) const {
    const int s = stride_[d];
    for (int m = 0; m < P; ++m) {
      const double* qm = q + m * kDofs;
      for (int f = 0; f < NF; ++f) {
        double* o = out + (m * NF + f) * V;
        for (int v = 0; v < V; ++v) o[v] = 0.0;
        const int base = face_base_[d][f];
        for (int j = 0; j < P; ++j) {
          const double c = side ? b_.right(j) : b_.left(j);
          const double* src = qm + (base + j * s) * V;
          for (int v = 0; v < V; ++v) o[v] += c * src[v];
        }
      }
    }
  }

  /// du -= coef * psi_j(side)/w_j * fl[f] for every node (j along d, f on the face).
  /// fl holds the time-integrated face fluctuation, NF*V values; coef = dt/dx_d.
  void add_face(int d, int side, const double* fl, double coef, double* du) const {
    const auto& w = b_.weights();
    for (int k = 0; k < NP; ++k) {
      const int j = node_index_[d][k];
      const double c = coef * (side ? b_.right(j) : b_.left(j)) / w[j];
      const double* src = fl + face_of_node_[d][k] * V;
      for (int v = 0; v < V; ++v) du[k * V + v] -= c * src[v];
    }
  }

  /// Point value of element dofs at reference coordinates xi.
  StateT evaluate(const double* u, const Vec<D>& xi) const {
    std::array<std::vector<double>, D> phi;
    for (int d = 0; d < D; ++d) phi[d] = b_.values(xi[d]);
    StateT out{};
    for (int k = 0; k < NP; ++k) {
      double c = 1.0;
      for (int d = 0; d < D; ++d) c *= phi[d][node_index_[d][k]];
      for (int v = 0; v < V; ++v) out[v] += c * u[k * V + v];
    }
    return out;
  }

  /// Point value of a predictor at (xi, tau).
  StateT evaluate_space_time(const double* q, const Vec<D>& xi, double tau) const {
    const auto pt = b_.values(tau);
    StateT out{};
    for (int m = 0; m < P; ++m) {
      const auto s = evaluate(q + m * kDofs, xi);
      for (int v = 0; v < V; ++v) out[v] += pt[m] * s[v];
    }
    return out;
  }

  /// Basis weights phi_k(xi) for all nodes.
  std::array<double, NP> basis_at(const Vec<D>& xi) const {
    std::array<std::vector<double>, D> phi;
    for (int d = 0; d < D; ++d) phi[d] = b_.values(xi[d]);
    std::array<double, NP> out{};
    for (int k = 0; k < NP; ++k) {
      double c = 1.0;
      for (int d = 0; d < D; ++d) c *= phi[d][node_index_[d][k]];
      out[k] = c;
    }
    return out;
  }

  /// Quadrature weight of node k on the unit reference cell.
  double node_weight(int k) const {
    double c = 1.0;
    for (int d = 0; d < D; ++d) c *= b_.weights()[node_index_[d][k]];
    return c;
  }

 private:
  void volume_slice(const M& model, const Material& mat, const double* q, double wt, const Vec<D>& inv_dx, double* du,
                    Scratch& s) const {
    if constexpr (M::kHasFlux) {
      for (int k = 0; k < NP; ++k) {
        StateT qk;
        std::copy(q + k * V, q + (k + 1) * V, qk.begin());
        const auto f = model.flux(qk, mat);
        for (int d = 0; d < D; ++d) std::copy(f[d].begin(), f[d].end(), s.flux.data() + d * kDofs + k * V);
      }
      for (int d = 0; d < D; ++d) {
        const int st = stride_[d];
        const double* fd = s.flux.data() + d * kDofs;
        for (int k = 0; k < NP; ++k) {
          const int i = node_index_[d][k];
          const int base = k - i * st;
          for (int a = 0; a < P; ++a) {
            const double c = wt * inv_dx[d] * b_.weak_diff(i, a);
            const double* src = fd + (base + a * st) * V;
            for (int v = 0; v < V; ++v) du[k * V + v] += c * src[v];
          }
        }
      }
    }
    for (int d = 0; d < D; ++d) derivative(q, d, inv_dx[d], s.grad.data() + d * kDofs);
    for (int k = 0; k < NP; ++k) {
      StateT qk;
      std::copy(q + k * V, q + (k + 1) * V, qk.begin());
      GradientStack<V, D> g;
      for (int d = 0; d < D; ++d) std::copy(s.grad.data() + d * kDofs + k * V, s.grad.data() + d * kDofs + (k + 1) * V, g[d].begin());
      const auto b = model.ncp(qk, g, mat);
      const auto src = model.source(qk, mat);
      for (int v = 0; v < V; ++v) du[k * V + v] += wt * (src[v] - b[v]);
    }
  }

  const Basis1D& b_;
  std::array<int, 3> stride_{};
  std::array<std::array<int, NP>, D> node_index_{};
  std::array<std::array<int, NP>, D> face_of_node_{};
  std::array<std::array<int, NF>, D> face_base_{};
};

}  // namespace aderdg
