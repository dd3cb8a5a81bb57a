#pragma once

#include <array>
#include <cmath>
#include <string_view>
#include <vector>

#include "aderdg/error.hpp"
#include "aderdg/models/state.hpp"

namespace aderdg {

struct ElasticMaterial {
  double lambda = 2.0;
  double mu = 1.0;
  double rho = 1.0;

  double cp() const { return std::sqrt((lambda + 2.0 * mu) / rho); }
  double cs() const { return std::sqrt(mu / rho); }
  void check() const;

  /// Lamb and 3D benchmark rock: c_p = 3200, c_s = 1847.5, rho = 2200.
  static ElasticMaterial rock() { return {7509672500.0, 7509163750.0, 2200.0}; }
  static ElasticMaterial from_speeds(double cp, double cs, double rho);

  friend ElasticMaterial lerp(const ElasticMaterial& a, const ElasticMaterial& b, double s) {
    return {a.lambda + s * (b.lambda - a.lambda), a.mu + s * (b.mu - a.mu), a.rho + s * (b.rho - a.rho)};
  }
  friend bool operator==(const ElasticMaterial&, const ElasticMaterial&) = default;
};

/// Background material plus axis-aligned boxes that override it. Lookups use
/// the element barycenter, so an element takes one material.
template <int D>
struct ElasticParams {
  struct Region {
    Vec<D> lo{};
    Vec<D> hi{};
    ElasticMaterial material;
  };

  ElasticMaterial background;
  std::vector<Region> regions;

  ElasticMaterial at(const Vec<D>& x) const {
    for (auto it = regions.rbegin(); it != regions.rend(); ++it) {
      bool inside = true;
      for (int d = 0; d < D; ++d) inside = inside && x[d] >= it->lo[d] && x[d] <= it->hi[d];
      if (inside) return it->material;
    }
    return background;
  }

  void check() const {
    background.check();
    for (const auto& r : regions) r.material.check();
  }
};

/// Velocity-stress linear elasticity in D = 2 or 3 dimensions.
/// 3D order (sxx, syy, szz, sxy, syz, sxz, u1, u2, u3); 2D order (sxx, syy, sxy, u, v).
/// There is no conservative flux; every derivative sits in the non-conservative product.
template <int D>
class Elastic {
  static_assert(D == 2 || D == 3);

 public:
  static constexpr int kDim = D;
  static constexpr int kStress = D == 3 ? 6 : 3;
  static constexpr int kVars = kStress + D;
  static constexpr bool kLinear = true;
  static constexpr bool kHasFlux = false;
  using Material = ElasticMaterial;
  using StateT = State<kVars>;
  using Grad = GradientStack<kVars, kDim>;

  /// Position of sigma_ij in the state vector.
  static constexpr int stress_index(int i, int j) {
    if (i == j) return i;
    if constexpr (D == 2) {
      return 2;
    } else {
      const int a = i < j ? i : j, b = i < j ? j : i;
      if (a == 0 && b == 1) return 3;
      if (a == 1 && b == 2) return 4;
      return 5;
    }
  }
  static constexpr int velocity_index(int i) { return kStress + i; }

  static constexpr bool evolves(int) { return true; }
  static constexpr auto variable_names() {
    if constexpr (D == 3) {
      return std::array<std::string_view, kVars>{"sxx", "syy", "szz", "sxy", "syz", "sxz", "u", "v", "w"};
    } else {
      return std::array<std::string_view, kVars>{"sxx", "syy", "sxy", "u", "v"};
    }
  }

  void validate(const StateT& q) const {
    if (!all_finite(q)) throw Error(ErrorKind::InvalidArgument, "non-finite elastic state");
  }

  FluxTensor<kVars, kDim> flux(const StateT&, const Material& = {}) const { return {}; }

  StateT ncp(const StateT&, const Grad& g, const Material& m) const {
    StateT r{};
    double div = 0.0;
    for (int i = 0; i < D; ++i) div += g[i][velocity_index(i)];
    for (int i = 0; i < D; ++i) {
      for (int j = i; j < D; ++j) {
        const double sym = g[i][velocity_index(j)] + g[j][velocity_index(i)];
        r[stress_index(i, j)] = i == j ? -m.lambda * div - m.mu * sym : -m.mu * sym;
      }
    }
    for (int i = 0; i < D; ++i) {
      double s = 0.0;
      for (int j = 0; j < D; ++j) s += g[j][stress_index(i, j)];
      r[velocity_index(i)] = -s / m.rho;
    }
    return r;
  }

  StateT source(const StateT&, const Material& = {}) const { return {}; }

  double max_signal_speed(const StateT&, const Vec<kDim>&, const Material& m) const { return m.cp(); }

  /// Traction sigma.n of a state.
  static Vec<D> traction(const StateT& q, const Vec<D>& n) {
    Vec<D> t{};
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) t[i] += q[stress_index(i, j)] * n[j];
    return t;
  }
};

using Elastic2D = Elastic<2>;
using Elastic3D = Elastic<3>;

/// p and s wave vectors for the 2D system, evaluated with n exactly as given (not normalised).
struct PlaneWaveVectors {
  State<5> rp{};
  State<5> rs{};
};
PlaneWaveVectors elastic_plane_wave_eigenvectors(const Vec<2>& n, const ElasticMaterial& m);

}  // namespace aderdg
