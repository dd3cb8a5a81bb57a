#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <string_view>

namespace aderdg {

template <int V>
using State = std::array<double, V>;

/// Spatial partial derivatives of a state, one row per axis: grad[d][v] = dQ_v/dx_d.
template <int V, int D>
using GradientStack = std::array<State<V>, D>;

/// Flux columns F_x, F_y(, F_z); column d is the flux through a face with normal e_d.
template <int V, int D>
using FluxTensor = std::array<State<V>, D>;

template <int D>
using Vec = std::array<double, D>;

/// Placeholder material for models whose coefficients are global.
struct NoMaterial {
  friend constexpr NoMaterial lerp(const NoMaterial&, const NoMaterial&, double) { return {}; }
  friend constexpr bool operator==(const NoMaterial&, const NoMaterial&) = default;
};

/// What the DG machinery needs from a hyperbolic system
///   dQ/dt + div F(Q) + B(Q) grad Q = S(Q).
template <class M>
concept HyperbolicModel = requires(const M& m, const State<M::kVars>& q,
                                   const GradientStack<M::kVars, M::kDim>& g,
                                   const Vec<M::kDim>& n, const typename M::Material& mat) {
  { M::kVars } -> std::convertible_to<int>;
  { M::kDim } -> std::convertible_to<int>;
  { M::kLinear } -> std::convertible_to<bool>;
  { M::kHasFlux } -> std::convertible_to<bool>;
  { m.flux(q, mat) } -> std::same_as<FluxTensor<M::kVars, M::kDim>>;
  { m.ncp(q, g, mat) } -> std::same_as<State<M::kVars>>;
  { m.source(q, mat) } -> std::same_as<State<M::kVars>>;
  { m.max_signal_speed(q, n, mat) } -> std::same_as<double>;
  { m.validate(q) };
  { M::evolves(0) } -> std::convertible_to<bool>;
  { M::variable_names() };
};

template <std::size_t V>
inline bool all_finite(const std::array<double, V>& q) {
  for (double v : q)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace aderdg
