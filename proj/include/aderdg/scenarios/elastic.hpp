#pragma once

#include <array>

#include "aderdg/models/elastic.hpp"

namespace aderdg {

/// Superposed p and s plane waves on the periodic square, amplitude alpha,
/// wave vector n used exactly as given (default (1,1)).
class PsWave {
 public:
  explicit PsWave(ElasticMaterial mat = {}, double alpha = 0.1, Vec<2> n = {1.0, 1.0});

  State<5> initial(const Vec<2>& x) const;
  /// Exact solution by characteristic decomposition along n/|n|.
  State<5> exact(const Vec<2>& x, double t) const;

  const ElasticMaterial& material() const { return mat_; }
  const PlaneWaveVectors& vectors() const { return r_; }

 private:
  ElasticMaterial mat_;
  double alpha_;
  Vec<2> n_;
  PlaneWaveVectors r_;
  std::array<double, 5> speeds_{};
  std::array<State<5>, 5> modes_{};  ///< amplitude of the initial vector carried by each characteristic
};

/// Ricker-type point force rho_s a1 (1/2 + a2 (t - tD)^2) exp(a2 (t - tD)^2), a2 = -(pi fc)^2.
struct LambSource {
  Vec<2> location{0.0, -1.0};
  double rho_s = 2200.0;
  double a1 = -2000.0;
  double fc = 14.5;
  double t_delay = 0.08;

  double a2() const;
  double time_factor(double t) const;
  /// Forcing in state units: the vertical velocity row receives time_factor / rho.
  State<5> forcing(double t, double rho) const;
};

/// Gaussian p pulse r_p(n) exp(-(n.(x - x0))^2 / (2 sigma^2)).
State<5> gaussian_pwave_init(const Vec<2>& x, const ElasticMaterial& m, double sigma = 0.01,
                             Vec<2> x0 = {-0.08, 0.0}, Vec<2> n = {1.0, 0.0});

/// 3D Gaussian vertical velocity pulse w = -0.1 exp(-r^2 / (2 R^2)).
State<9> gaussian_w_init(const Vec<3>& x, double radius = 500.0, Vec<3> x0 = {0.0, 0.0, 0.0});

/// Stiff inclusion layout: background (2, 1, 1) with a (200, 100, 1) box [-0.5,0.5] x [-0.1,0.1].
ElasticParams<2> stiff_inclusion_params();

}  // namespace aderdg
