#pragma once

#include <algorithm>
#include <vector>

#include "aderdg/dg/basis.hpp"
#include "aderdg/error.hpp"
#include "aderdg/models/state.hpp"

namespace aderdg {

/// F(Q).n
template <HyperbolicModel M>
State<M::kVars> normal_flux(const M& model, const State<M::kVars>& q, const Vec<M::kDim>& n,
                            const typename M::Material& mat) {
  State<M::kVars> out{};
  if constexpr (M::kHasFlux) {
    const auto f = model.flux(q, mat);
    for (int d = 0; d < M::kDim; ++d)
      for (int v = 0; v < M::kVars; ++v) out[v] += f[d][v] * n[d];
  }
  return out;
}

/// Rusanov flux 1/2 (F(qR) + F(qL)).n - 1/2 s_max (qR - qL).
template <HyperbolicModel M>
State<M::kVars> rusanov(const M& model, const State<M::kVars>& qL, const State<M::kVars>& qR,
                        const Vec<M::kDim>& n, const typename M::Material& matL,
                        const typename M::Material& matR) {
  const double smax = std::max(model.max_signal_speed(qL, n, matL), model.max_signal_speed(qR, n, matR));
  const auto fl = normal_flux(model, qL, n, matL);
  const auto fr = normal_flux(model, qR, n, matR);
  State<M::kVars> g{};
  for (int v = 0; v < M::kVars; ++v) g[v] = 0.5 * (fl[v] + fr[v]) - 0.5 * smax * (qR[v] - qL[v]);
  return g;
}

template <HyperbolicModel M>
State<M::kVars> rusanov(const M& model, const State<M::kVars>& qL, const State<M::kVars>& qR,
                        const Vec<M::kDim>& n, const typename M::Material& mat = {}) {
  return rusanov(model, qL, qR, n, mat, mat);
}

/// 1/2 (int_0^1 B(qL + s (qR - qL)) . n ds) (qR - qL) on the straight segment path,
/// integrated with the rule (nodes, weights) on [0,1]. Material is interpolated along the same path.
template <HyperbolicModel M>
State<M::kVars> path_jump_rule(const M& model, const State<M::kVars>& qL, const State<M::kVars>& qR,
                               const Vec<M::kDim>& n, const typename M::Material& matL,
                               const typename M::Material& matR, const std::vector<double>& nodes,
                               const std::vector<double>& weights) {
  constexpr int V = M::kVars;
  GradientStack<V, M::kDim> g{};
  bool zero = true;
  for (int v = 0; v < V; ++v) {
    const double dq = qR[v] - qL[v];
    zero = zero && dq == 0.0;
    for (int d = 0; d < M::kDim; ++d) g[d][v] = n[d] * dq;
  }
  State<V> out{};
  if (zero) return out;
  if constexpr (M::kLinear) {
    // B does not depend on the state, so with one material the integrand is constant
    if (matL == matR) {
      out = model.ncp(qL, g, matL);
      for (auto& x : out) x *= 0.5;
      return out;
    }
  }
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    const double t = nodes[s];
    State<V> q{};
    for (int v = 0; v < V; ++v) q[v] = qL[v] + t * (qR[v] - qL[v]);
    State<V> b;
    try {
      b = model.ncp(q, g, lerp(matL, matR, t));
    } catch (const Error& e) {
      throw Error(ErrorKind::PathThroughInvalidState, e.what());
    }
    for (int v = 0; v < V; ++v) out[v] += 0.5 * weights[s] * b[v];
  }
  return out;
}

/// Path jump with an npath-point Gauss rule (3 by default).
template <HyperbolicModel M>
State<M::kVars> path_jump(const M& model, const State<M::kVars>& qL, const State<M::kVars>& qR,
                          const Vec<M::kDim>& n, const typename M::Material& matL,
                          const typename M::Material& matR, int npath = 3) {
  const auto& rule = npath == 3 ? path_rule3() : path_rule(npath);
  return path_jump_rule(model, qL, qR, n, matL, matR, rule.first, rule.second);
}

template <HyperbolicModel M>
State<M::kVars> path_jump(const M& model, const State<M::kVars>& qL, const State<M::kVars>& qR,
                          const Vec<M::kDim>& n, const typename M::Material& mat = {}, int npath = 3) {
  return path_jump(model, qL, qR, n, mat, mat, npath);
}

}  // namespace aderdg
