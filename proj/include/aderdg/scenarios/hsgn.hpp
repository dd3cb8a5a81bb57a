#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "aderdg/models/hsgn.hpp"

namespace aderdg {

/// One dimensional flat-bottom reduction (h, hu, hv, hw, hp).
using Hsgn1D = std::array<double, 5>;

/// A(Q) = dF/dQ + B(Q) of the x-split reduced system.
Eigen::Matrix<double, 5, 5> hsgn_quasilinear_matrix(const Hsgn1D& q, const HsgnParams& p);
/// dS/dQ of the reduced system.
Eigen::Matrix<double, 5, 5> hsgn_source_jacobian(const Hsgn1D& q, const HsgnParams& p);
Hsgn1D hsgn_reduced_source(const Hsgn1D& q, const HsgnParams& p);

/// Traveling frame ODE Q' = (A(Q) - V I)^{-1} S(Q). Throws SingularTravelingFrame
/// when the frame matrix is numerically singular.
Hsgn1D soliton_ode_rhs(const Hsgn1D& q, double V, const HsgnParams& p);

struct SolitonOptions {
  double epsilon = 1e-8;    ///< seed perturbation of hp
  double tolerance = 1e-12; ///< local error tolerance of the integrator
  double amplitude_tol = 1e-8;
  double sample = 2.5e-3;   ///< tabulation spacing
  double max_length = 1e4;  ///< give up on an orbit beyond this distance
};

/// Homoclinic traveling wave of the reduced system, tabulated around its crest
/// (zeta = 0) and interpolated with cubic Hermite splines.
class SolitonProfile {
 public:
  static SolitonProfile build(double amplitude, const HsgnParams& params, const SolitonOptions& opt = {});

  /// Crest height above H0 of the orbit launched with speed V, or a negative
  /// value when the orbit never forms a crest.
  static double orbit_amplitude(double V, const HsgnParams& params, const SolitonOptions& opt = {});

  double speed() const { return speed_; }
  double amplitude() const { return amplitude_; }
  const HsgnParams& params() const { return params_; }
  double zeta_min() const { return zeta0_; }
  double zeta_max() const { return zeta0_ + step_ * static_cast<double>(values_.size() - 1); }
  const std::vector<Hsgn1D>& samples() const { return values_; }

  /// Profile at distance zeta from the crest; the rest state outside the table.
  Hsgn1D evaluate(double zeta) const;
  /// Derivative dQ/dzeta of the interpolant.
  Hsgn1D derivative(double zeta) const;

 private:
  HsgnParams params_;
  double speed_ = 0.0, amplitude_ = 0.0;
  double zeta0_ = 0.0, step_ = 0.0;
  std::vector<Hsgn1D> values_, slopes_;
};

/// Full model state (h, hu, 0, hw, hp, zb) of a soliton centred at x0 in a
/// domain periodic in x with period `period` (0 for no wrap), at time t.
Hsgn::StateT soliton_state(const SolitonProfile& s, double x, double t, double x0, double period,
                           double zb = 0.0);

/// Erf step z_b = 0.05 (erf(8x) + 1).
double step_bathymetry(double x);

/// Lake at rest: h = H0 - z_b, zero velocity and pressure.
Hsgn::StateT lake_at_rest(double H0, double zb);

/// Small amplitude sinusoidal wave from the linear dispersion relation.
class SinusoidalWave {
 public:
  explicit SinusoidalWave(HsgnParams params = default_params(), double wavelength = 200.0,
                          double amplitude = 1e-3);

  static HsgnParams default_params();

  /// The closed-form real eigenvalue. Throws ComplexEigenvalue if a radicand is negative.
  static double eigenvalue(const HsgnParams& p, double k);

  double k() const { return k_; }
  double lambda() const { return lambda_; }
  /// Mode vector at (x, t). The w row carries tan(lambda t - k x).
  Hsgn1D mode(double x, double t = 0.0) const;
  /// Q0 + f(x) r_l(x, 0); throws PoleGuard near cos(k x) = 0.
  Hsgn::StateT initial(double x) const;
  const HsgnParams& params() const { return params_; }

 private:
  HsgnParams params_;
  double wavelength_, amplitude_, k_, lambda_;
};

}  // namespace aderdg
