#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "aderdg/models/elastic.hpp"
#include "aderdg/scenarios/elastic.hpp"
#include "aderdg/scenarios/hsgn.hpp"

using namespace aderdg;

namespace {

HsgnParams benchmark_soliton_params() {
  HsgnParams p;
  p.H0 = 1.0;
  p.c = 20.0;
  p.gamma = 1.5;
  p.g = 9.81;
  return p;
}

const SolitonProfile& profile() {
  static const SolitonProfile s = SolitonProfile::build(0.2, benchmark_soliton_params());
  return s;
}

using CMat = Eigen::Matrix<std::complex<double>, 5, 5>;

CMat dispersion_matrix(const HsgnParams& p, double k) {
  const Hsgn1D rest{p.H0, 0, 0, 0, 0};
  return k * hsgn_quasilinear_matrix(rest, p).cast<std::complex<double>>() +
         std::complex<double>(0, 1) * hsgn_source_jacobian(rest, p).cast<std::complex<double>>();
}

}  // namespace

TEST(Soliton, AmplitudeAndCrest) {
  const auto& s = profile();
  EXPECT_NEAR(s.evaluate(0.0)[0], 1.2, 1e-8);
  EXPECT_NEAR(s.amplitude(), 0.2, 1e-8);
  for (double z = -5; z <= 5; z += 0.37) EXPECT_LE(s.evaluate(z)[0], 1.2 + 1e-10);
  EXPECT_GT(s.speed(), std::sqrt(9.81));
}

TEST(Soliton, EvenAboutTheCrest) {
  const auto& s = profile();
  for (double z = 0.05; z < 15.0; z += 0.05) EXPECT_NEAR(s.evaluate(z)[0], s.evaluate(-z)[0], 1e-7) << z;
}

TEST(Soliton, SatisfiesTravelingFrameEquations) {
  const auto& s = profile();
  const auto p = s.params();
  double worst = 0.0;
  for (double z = s.zeta_min() + 0.01; z < s.zeta_max() - 0.01; z += 0.0137) {
    const auto q = s.evaluate(z);
    const auto dq = s.derivative(z);
    const Eigen::Matrix<double, 5, 1> d(dq.data());
    const Eigen::Matrix<double, 5, 1> src(hsgn_reduced_source(q, p).data());
    const Eigen::Matrix<double, 5, 1> r = hsgn_quasilinear_matrix(q, p) * d - s.speed() * d - src;
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  EXPECT_LT(worst, 1e-7);
}

TEST(Soliton, RestOutsideTableAndRestIsEquilibrium) {
  const auto& s = profile();
  const auto far = s.evaluate(s.zeta_max() + 10);
  EXPECT_EQ(far[0], 1.0);
  for (int v = 1; v < 5; ++v) EXPECT_EQ(far[v], 0.0);
  for (double x : soliton_ode_rhs({1, 0, 0, 0, 0}, s.speed(), s.params())) EXPECT_EQ(x, 0.0);
}

TEST(Soliton, SeedDrivesOnlyVerticalRows) {
  const auto r = soliton_ode_rhs({1, 0, 0, 0, 1e-8}, profile().speed(), benchmark_soliton_params());
  EXPECT_NE(r[3], 0.0);
  EXPECT_LT(std::abs(r[0]) + std::abs(r[1]) + std::abs(r[2]), std::abs(r[3]));
}

TEST(Soliton, LongWaveLimitAndMonotoneSpeed) {
  const auto p = benchmark_soliton_params();
  const double v_small = SolitonProfile::build(1e-4, p).speed();
  EXPECT_NEAR(v_small, std::sqrt(9.81), 0.01 * std::sqrt(9.81));
  double prev = v_small;
  for (double a : {0.05, 0.1, 0.2}) {
    const double v = SolitonProfile::build(a, p).speed();
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Soliton, StepBenchmarkWave) {
  HsgnParams p = benchmark_soliton_params();
  p.H0 = 0.2;
  const auto s = SolitonProfile::build(0.0365, p);
  EXPECT_NEAR(s.evaluate(0.0)[0], 0.2365, 1e-8);
}

TEST(Soliton, StateWrapsAndRespectsBathymetry) {
  const auto& s = profile();
  const auto a = soliton_state(s, 10.0, 0.0, 0.0, 100.0);
  const auto b = soliton_state(s, 10.0 - 100.0, 0.0, 0.0, 100.0);
  for (int v = 0; v < 6; ++v) EXPECT_NEAR(a[v], b[v], 1e-14);
  const auto c = soliton_state(s, 0.0, 0.0, 0.0, 0.0, 0.1);
  EXPECT_NEAR(c[0] + c[5], 1.2, 1e-8);
  EXPECT_EQ(c[2], 0.0);
  const double T = 3.0;
  const auto moved = soliton_state(s, s.speed() * T, T, 0.0, 0.0);
  EXPECT_NEAR(moved[0], 1.2, 1e-8);
}

TEST(Bathymetry, ErfStep) {
  EXPECT_DOUBLE_EQ(step_bathymetry(0.0), 0.05);
  EXPECT_NEAR(step_bathymetry(0.25), 0.05 * (1.0 + 0.9953222650189527), 1e-15);
  EXPECT_NEAR(step_bathymetry(-10.0), 0.0, 1e-15);
  EXPECT_NEAR(step_bathymetry(10.0), 0.1, 1e-15);
  const auto q = lake_at_rest(0.2, step_bathymetry(0.1));
  EXPECT_NEAR(q[0] + q[5], 0.2, 1e-16);
  for (int v = 1; v <= 4; ++v) EXPECT_EQ(q[v], 0.0);
}

TEST(PsWaveTest, ZeroOnNodalLineAndPeriodic) {
  PsWave ps;
  for (double x : ps.initial({0.3, -0.3})) EXPECT_NEAR(x, 0.0, 1e-15);
  const auto a = ps.exact({0.2, 0.4}, 3.0 * std::sqrt(2.0));
  const auto b = ps.initial({0.2, 0.4});
  for (int v = 0; v < 5; ++v) EXPECT_NEAR(a[v], b[v], 1e-12);
  const auto c = ps.exact({0.2, 0.4}, 0.0);
  for (int v = 0; v < 5; ++v) EXPECT_NEAR(c[v], b[v], 1e-15);
}

TEST(PsWaveTest, ExactSolutionSolvesThePde) {
  PsWave ps;
  const Elastic2D e;
  const double h = 1e-5;
  for (const Vec<2> x : {Vec<2>{0.1, 0.3}, Vec<2>{-0.7, 1.1}})
    for (double t : {0.1, 0.9}) {
      Elastic2D::Grad g{};
      State<5> dt{};
      for (int v = 0; v < 5; ++v) {
        g[0][v] = (ps.exact({x[0] + h, x[1]}, t)[v] - ps.exact({x[0] - h, x[1]}, t)[v]) / (2 * h);
        g[1][v] = (ps.exact({x[0], x[1] + h}, t)[v] - ps.exact({x[0], x[1] - h}, t)[v]) / (2 * h);
        dt[v] = (ps.exact(x, t + h)[v] - ps.exact(x, t - h)[v]) / (2 * h);
      }
      const auto b = e.ncp({}, g, ps.material());
      double scale = 0.0;
      for (int v = 0; v < 5; ++v) scale = std::max(scale, std::abs(dt[v]));
      for (int v = 0; v < 5; ++v) EXPECT_NEAR(dt[v] + b[v], 0.0, 1e-8 * scale);
    }
}

TEST(LambSourceTest, TimeFactor) {
  LambSource s;
  EXPECT_NEAR(s.time_factor(s.t_delay), -2.2e6, 1e-6);
  EXPECT_NEAR(s.time_factor(10.0), 0.0, 1e-12);
  EXPECT_NEAR(s.a2(), -std::pow(M_PI * 14.5, 2), 1e-9);
  const auto f = s.forcing(s.t_delay, 2200.0);
  EXPECT_NEAR(f[4], -2.2e6 / 2200.0, 1e-9);
  for (int v = 0; v < 4; ++v) EXPECT_EQ(f[v], 0.0);
}

TEST(GaussianPulses, PWave) {
  const auto m = stiff_inclusion_params().background;
  const auto r = elastic_plane_wave_eigenvectors({1, 0}, m).rp;
  const auto a = gaussian_pwave_init({-0.08, 0.3}, m);
  for (int v = 0; v < 5; ++v) EXPECT_NEAR(a[v], r[v], 1e-15);
  const auto b = gaussian_pwave_init({-0.08 + 0.03, 0.0}, m);
  for (int v = 0; v < 5; ++v) EXPECT_NEAR(b[v], r[v] * std::exp(-4.5), 1e-15);
}

TEST(GaussianPulses, VerticalVelocity3D) {
  EXPECT_DOUBLE_EQ(gaussian_w_init({0, 0, 0})[8], -0.1);
  EXPECT_NEAR(gaussian_w_init({300, 0, 400})[8], -0.1 * std::exp(-0.5), 1e-15);
  for (int v = 0; v < 8; ++v) EXPECT_EQ(gaussian_w_init({1, 2, 3})[v], 0.0);
}

TEST(StiffInclusion, Layout) {
  const auto p = stiff_inclusion_params();
  EXPECT_DOUBLE_EQ(p.at({0, 0}).lambda, 200);
  EXPECT_DOUBLE_EQ(p.at({0, 0}).mu, 100);
  EXPECT_DOUBLE_EQ(p.at({0.6, 0}).lambda, 2);
  EXPECT_DOUBLE_EQ(p.at({0, 0.2}).mu, 1);
}

TEST(Sinusoidal, ClosedFormSolvesTheEigenproblem) {
  const SinusoidalWave w;
  const CMat M = dispersion_matrix(w.params(), w.k()) - w.lambda() * CMat::Identity();
  Eigen::JacobiSVD<CMat> svd(M);
  EXPECT_LT(svd.singularValues()(4) / svd.singularValues()(0), 1e-8);
}

TEST(Sinusoidal, DispersionCurveAcrossWavenumbers) {
  const auto p = SinusoidalWave::default_params();
  double prev_speed = 0.0;
  for (double k : {1e-3, 1e-2, 1e-1, 1.0}) {
    const double lam = SinusoidalWave::eigenvalue(p, k);
    Eigen::ComplexEigenSolver<CMat> es(dispersion_matrix(p, k));
    double nearest = 1e300;
    for (int i = 0; i < 5; ++i) nearest = std::min(nearest, std::abs(es.eigenvalues()(i) - lam));
    EXPECT_LT(nearest, 1e-8 * lam) << k;
    // the closed-form branch is the fastest one
    double fastest = 0.0;
    for (int i = 0; i < 5; ++i) fastest = std::max(fastest, std::abs(es.eigenvalues()(i).real()));
    EXPECT_NEAR(lam, fastest, 1e-8 * lam);
    if (k > 1e-3) {
      EXPECT_NE(lam / k, prev_speed);
    }
    prev_speed = lam / k;
  }
  EXPECT_TRUE(std::isfinite(SinusoidalWave::eigenvalue(p, 1e-3) / 1e-3));
}

TEST(Sinusoidal, AmplitudeZeroIsLakeAtRest) {
  const SinusoidalWave w(SinusoidalWave::default_params(), 200.0, 0.0);
  const auto q = w.initial(17.0);
  EXPECT_EQ(q[0], 100.0);
  for (int v = 1; v < 6; ++v) EXPECT_EQ(q[v], 0.0);
}

TEST(Sinusoidal, PoleGuard) {
  const SinusoidalWave w;
  try {
    w.initial(50.0);  // k x = pi / 2
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PoleGuard);
  }
  EXPECT_NO_THROW(w.initial(49.0));
}

TEST(Sinusoidal, ModeEntries) {
  const SinusoidalWave w;
  const auto r = w.mode(0.0);
  EXPECT_EQ(r[0], 1.0);
  EXPECT_NEAR(r[1], w.lambda() / w.k(), 1e-12);
  EXPECT_EQ(r[2], 0.0);
  EXPECT_NEAR(r[3], 0.0, 1e-15);  // tan(0)
}

TEST(Sinusoidal, SatisfiesTheLinearizedSystem) {
  // Q' = f(x, t) r(x, t) with f = a cos(k x - lambda t); residual of dQ'/dt + A0 dQ'/dx - E0 Q'
  const SinusoidalWave w;
  const auto& p = w.params();
  const Hsgn1D rest{p.H0, 0, 0, 0, 0};
  const auto A0 = hsgn_quasilinear_matrix(rest, p);
  const auto E0 = hsgn_source_jacobian(rest, p);
  const double a = 1e-3;
  auto q = [&](double x, double t) {
    const auto r = w.mode(x, t);
    const double f = a * std::cos(w.k() * x - w.lambda() * t);
    Eigen::Matrix<double, 5, 1> out;
    for (int v = 0; v < 5; ++v) out(v) = f * r[v];
    return out;
  };
  double worst = 0.0, scale = 0.0;
  for (double x : {3.0, 21.0, 130.0})
    for (double t : {0.0, 0.7}) {
      const double hx = 1e-3, ht = 1e-5;
      const Eigen::Matrix<double, 5, 1> dx = (q(x + hx, t) - q(x - hx, t)) / (2 * hx);
      const Eigen::Matrix<double, 5, 1> dt = (q(x, t + ht) - q(x, t - ht)) / (2 * ht);
      const Eigen::Matrix<double, 5, 1> r = dt + A0 * dx - E0 * q(x, t);
      worst = std::max(worst, r.cwiseAbs().maxCoeff());
      scale = std::max(scale, (A0 * dx).cwiseAbs().maxCoeff());
    }
  EXPECT_LT(worst, 1e-6 * scale);
}
