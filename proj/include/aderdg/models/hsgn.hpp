#pragma once

#include <array>
#include <string_view>

#include "aderdg/error.hpp"
#include "aderdg/models/state.hpp"

namespace aderdg {

/// Parameters of the hyperbolic Serre-Green-Naghdi system.
struct HsgnParams {
  double g = 9.81;
  double gamma = 1.5;  ///< 3/2 gives SGN, 2 gives the Sainte-Marie model
  double c = 20.0;     ///< artificial sound speed
  double H0 = 1.0;     ///< average still water depth

  /// c = alpha * sqrt(g * H0)
  static HsgnParams from_alpha(double alpha, double H0, double gamma = 1.5, double g = 9.81);

  double alpha() const;
  double h_floor() const { return 1e-10 * H0; }
  void check() const;
};

struct HsgnPrimitives {
  double h = 0.0, u = 0.0, v = 0.0, w = 0.0, p = 0.0, zb = 0.0;
};

/// Hyperbolic SGN model in the unified form. State (h, hu, hv, hw, hp, z_b); the
/// bathymetry rides along as a frozen sixth variable so that its gradients reach
/// the non-conservative products.
class Hsgn {
 public:
  static constexpr int kVars = 6;
  static constexpr int kDim = 2;
  static constexpr bool kLinear = false;
  static constexpr bool kHasFlux = true;
  static constexpr int kZb = 5;
  using Material = NoMaterial;
  using StateT = State<kVars>;
  using Grad = GradientStack<kVars, kDim>;

  explicit Hsgn(HsgnParams params = {});

  const HsgnParams& params() const { return params_; }

  static constexpr bool evolves(int var) { return var != kZb; }
  static constexpr std::array<std::string_view, kVars> variable_names() {
    return {"h", "hu", "hv", "hw", "hp", "zb"};
  }

  /// Throws NonPositiveDepth when h <= h_floor or any entry is not finite.
  void validate(const StateT& q) const;

  FluxTensor<kVars, kDim> flux(const StateT& q, const Material& = {}) const;
  StateT ncp(const StateT& q, const Grad& grad, const Material& = {}) const;
  StateT source(const StateT& q, const Material& = {}) const;

  /// |u.n| + sqrt(g h + c^2 + 2|p|), an upper bound of the directional spectral radius.
  double max_signal_speed(const StateT& q, const Vec<kDim>& n, const Material& = {}) const;

  HsgnPrimitives primitives(const StateT& q) const;
  static StateT pack(const HsgnPrimitives& w);

 private:
  HsgnParams params_;
};

}  // namespace aderdg
