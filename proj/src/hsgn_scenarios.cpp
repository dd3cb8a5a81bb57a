#include "aderdg/scenarios/hsgn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/erf.hpp>
#include <boost/numeric/odeint.hpp>

#include "aderdg/error.hpp"

namespace aderdg {

namespace odeint = boost::numeric::odeint;

Eigen::Matrix<double, 5, 5> hsgn_quasilinear_matrix(const Hsgn1D& q, const HsgnParams& p) {
  const double h = q[0];
  if (!(h > p.h_floor())) throw Error(ErrorKind::NonPositiveDepth, "reduced state with h <= 0");
  const double u = q[1] / h, v = q[2] / h, w = q[3] / h, pr = q[4] / h;
  const double c2 = p.c * p.c;
  Eigen::Matrix<double, 5, 5> a = Eigen::Matrix<double, 5, 5>::Zero();
  a(0, 1) = 1.0;
  a(1, 0) = p.g * h - u * u;
  a(1, 1) = 2.0 * u;
  a(1, 4) = 1.0;
  a(2, 0) = -u * v;
  a(2, 1) = v;
  a(2, 2) = u;
  a(3, 0) = -u * w;
  a(3, 1) = w;
  a(3, 3) = u;
  // flux part -u p plus the non-conservative -c^2 u dh/dx
  a(4, 0) = -u * pr - c2 * u;
  a(4, 1) = pr + c2;
  a(4, 4) = u;
  return a;
}

Hsgn1D hsgn_reduced_source(const Hsgn1D& q, const HsgnParams& p) {
  const double h = q[0];
  return {0.0, 0.0, 0.0, p.gamma * q[4] / h, -2.0 * p.c * p.c * q[3] / h};
}

Eigen::Matrix<double, 5, 5> hsgn_source_jacobian(const Hsgn1D& q, const HsgnParams& p) {
  const double h = q[0];
  Eigen::Matrix<double, 5, 5> e = Eigen::Matrix<double, 5, 5>::Zero();
  e(3, 0) = -p.gamma * q[4] / (h * h);
  e(3, 4) = p.gamma / h;
  e(4, 0) = 2.0 * p.c * p.c * q[3] / (h * h);
  e(4, 3) = -2.0 * p.c * p.c / h;
  return e;
}

Hsgn1D soliton_ode_rhs(const Hsgn1D& q, double V, const HsgnParams& p) {
  Eigen::Matrix<double, 5, 5> m = hsgn_quasilinear_matrix(q, p);
  m.diagonal().array() -= V;
  Eigen::PartialPivLU<Eigen::Matrix<double, 5, 5>> lu(m);
  if (!(lu.rcond() > 1e-12))
    throw Error(ErrorKind::SingularTravelingFrame, "A(Q) - V I is singular at V=" + std::to_string(V));
  const Hsgn1D s = hsgn_reduced_source(q, p);
  const Eigen::Matrix<double, 5, 1> x = lu.solve(Eigen::Map<const Eigen::Matrix<double, 5, 1>>(s.data()));
  return {x(0), x(1), x(2), x(3), x(4)};
}

namespace {

using Stepper = odeint::dense_output_runge_kutta<odeint::controlled_runge_kutta<odeint::runge_kutta_dopri5<Hsgn1D>>>;

Hsgn1D seed_state(const HsgnParams& p, const SolitonOptions& opt) { return {p.H0, 0.0, 0.0, 0.0, opt.epsilon}; }

struct Orbit {
  bool crest = false;
  double zeta = 0.0;  ///< crest location
  double height = 0.0;
};

/// Locates the first crest (h' changes sign from + to -) along the orbit.
Orbit trace_orbit(double V, const HsgnParams& p, const SolitonOptions& opt) {
  auto rhs = [&](const Hsgn1D& q, Hsgn1D& dq, double) { dq = soliton_ode_rhs(q, V, p); };
  Stepper st = odeint::make_dense_output(opt.tolerance, opt.tolerance, odeint::runge_kutta_dopri5<Hsgn1D>());
  st.initialize(seed_state(p, opt), 0.0, 1e-3);
  double prev_slope = soliton_ode_rhs(seed_state(p, opt), V, p)[0];
  Orbit o;
  while (st.current_time() < opt.max_length) {
    st.do_step(rhs);
    const Hsgn1D& q = st.current_state();
    if (!(q[0] > 0.0) || q[0] > 4.0 * p.H0 || q[0] < p.H0 - 0.5 * p.H0) return o;
    const double slope = soliton_ode_rhs(q, V, p)[0];
    if (prev_slope > 0.0 && slope <= 0.0) {
      // refine the root of h' inside the last step with the dense output
      double a = st.previous_time(), b = st.current_time();
      Hsgn1D tmp;
      for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, b); ++it) {
        const double m = 0.5 * (a + b);
        st.calc_state(m, tmp);
        if (soliton_ode_rhs(tmp, V, p)[0] > 0.0) a = m; else b = m;
      }
      st.calc_state(0.5 * (a + b), tmp);
      o.crest = true;
      o.zeta = 0.5 * (a + b);
      o.height = tmp[0] - p.H0;
      return o;
    }
    if (prev_slope < 0.0 && q[0] < p.H0) return o;  // depression branch
    prev_slope = slope;
  }
  return o;
}

}  // namespace

double SolitonProfile::orbit_amplitude(double V, const HsgnParams& params, const SolitonOptions& opt) {
  const Orbit o = trace_orbit(V, params, opt);
  return o.crest ? o.height : -1.0;
}

SolitonProfile SolitonProfile::build(double amplitude, const HsgnParams& params, const SolitonOptions& opt) {
  params.check();
  if (!(amplitude > 0.0) || !(amplitude < params.H0))
    throw Error(ErrorKind::InvalidArgument, "soliton amplitude must lie in (0, H0)");
  double lo = std::sqrt(params.g * params.H0);
  double hi = std::sqrt(params.g * (params.H0 + 2.0 * amplitude));
  const double a_hi = orbit_amplitude(hi, params, opt);
  if (!(a_hi > amplitude))
    throw Error(ErrorKind::ShootingFailed, "upper speed bracket does not exceed the target amplitude");

  // bisection on V, amplitude increases with speed
  double V = 0.5 * (lo + hi);
  Orbit best;
  for (int it = 0; it < 200; ++it) {
    V = 0.5 * (lo + hi);
    best = trace_orbit(V, params, opt);
    const double a = best.crest ? best.height : -1.0;
    if (best.crest && std::abs(a - amplitude) <= opt.amplitude_tol) break;
    if (a < amplitude) lo = V; else hi = V;
    if (hi - lo < 1e-15 * hi) break;
  }
  if (!best.crest || std::abs(best.height - amplitude) > opt.amplitude_tol)
    throw Error(ErrorKind::ShootingFailed, "no speed in the bracket reaches amplitude " + std::to_string(amplitude));

  SolitonProfile s;
  s.params_ = params;
  s.speed_ = V;
  s.amplitude_ = best.height;
  s.step_ = opt.sample;

  // Second pass: sample on a grid aligned with the crest until the tail returns below 10 eps.
  auto rhs = [&](const Hsgn1D& q, Hsgn1D& dq, double) { dq = soliton_ode_rhs(q, V, params); };
  Stepper st = odeint::make_dense_output(opt.tolerance, opt.tolerance, odeint::runge_kutta_dopri5<Hsgn1D>());
  st.initialize(seed_state(params, opt), 0.0, 1e-3);
  const long first = -static_cast<long>(std::floor(best.zeta / opt.sample));
  s.zeta0_ = static_cast<double>(first) * opt.sample;
  long j = first;
  bool past_crest = false, done = false;
  while (!done) {
    st.do_step(rhs);
    while (true) {
      const double z = best.zeta + static_cast<double>(j) * opt.sample;
      if (z > st.current_time()) break;
      Hsgn1D q;
      st.calc_state(z, q);
      s.values_.push_back(q);
      s.slopes_.push_back(soliton_ode_rhs(q, V, params));
      if (j > 0) past_crest = true;
      ++j;
      if (past_crest && std::abs(q[0] - params.H0) < 10.0 * opt.epsilon) {
        done = true;
        break;
      }
    }
    if (!done && st.current_time() > best.zeta + opt.max_length)
      throw Error(ErrorKind::ShootingFailed, "soliton tail does not return to rest");
  }
  return s;
}

Hsgn1D SolitonProfile::evaluate(double zeta) const {
  const double r = (zeta - zeta0_) / step_;
  if (r < 0.0 || r > static_cast<double>(values_.size() - 1)) return {params_.H0, 0.0, 0.0, 0.0, 0.0};
  const std::size_t i = std::min(static_cast<std::size_t>(r), values_.size() - 2);
  const double t = r - static_cast<double>(i);
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  Hsgn1D q;
  for (int v = 0; v < 5; ++v)
    q[v] = h00 * values_[i][v] + h10 * step_ * slopes_[i][v] + h01 * values_[i + 1][v] +
           h11 * step_ * slopes_[i + 1][v];
  return q;
}

Hsgn1D SolitonProfile::derivative(double zeta) const {
  const double r = (zeta - zeta0_) / step_;
  if (r < 0.0 || r > static_cast<double>(values_.size() - 1)) return {};
  const std::size_t i = std::min(static_cast<std::size_t>(r), values_.size() - 2);
  const double t = r - static_cast<double>(i);
  const double d00 = 6 * t * t - 6 * t, d10 = 3 * t * t - 4 * t + 1;
  const double d01 = -d00, d11 = 3 * t * t - 2 * t;
  Hsgn1D q;
  for (int v = 0; v < 5; ++v)
    q[v] = (d00 * values_[i][v] + d01 * values_[i + 1][v]) / step_ + d10 * slopes_[i][v] + d11 * slopes_[i + 1][v];
  return q;
}

Hsgn::StateT soliton_state(const SolitonProfile& s, double x, double t, double x0, double period, double zb) {
  double z = x - x0 - s.speed() * t;
  if (period > 0.0) z -= period * std::floor(z / period + 0.5);
  const Hsgn1D q = s.evaluate(z);
  const double h = q[0] - zb;
  const double scale = h / q[0];  // keep the velocities, shift the depth onto the bathymetry
  return {h, q[1] * scale, q[2] * scale, q[3] * scale, q[4] * scale, zb};
}

double step_bathymetry(double x) { return 0.05 * (boost::math::erf(8.0 * x) + 1.0); }

Hsgn::StateT lake_at_rest(double H0, double zb) { return {H0 - zb, 0.0, 0.0, 0.0, 0.0, zb}; }

SinusoidalWave::SinusoidalWave(HsgnParams params, double wavelength, double amplitude)
    : params_(params), wavelength_(wavelength), amplitude_(amplitude) {
  params_.check();
  if (!(wavelength > 0.0)) throw Error(ErrorKind::InvalidArgument, "wavelength must be positive");
  k_ = 2.0 * M_PI / wavelength_;
  lambda_ = eigenvalue(params_, k_);
}

HsgnParams SinusoidalWave::default_params() {
  HsgnParams p;
  p.H0 = 100.0;
  p.g = 9.81;
  p.gamma = 2.0;
  p.c = std::sqrt(p.g * p.H0);
  return p;
}

double SinusoidalWave::eigenvalue(const HsgnParams& p, double k) {
  const double g = p.g, H = p.H0, c2 = p.c * p.c, ga = p.gamma, k2 = k * k, k4 = k2 * k2;
  const double inner = g * g * std::pow(H, 6) * k4 + 2 * g * c2 * std::pow(H, 5) * k4 - 4 * g * c2 * H * H * H * ga * k2 +
                       c2 * c2 * std::pow(H, 4) * k4 + 4 * c2 * c2 * H * H * ga * k2 + 4 * c2 * c2 * ga * ga;
  if (inner < 0.0) throw Error(ErrorKind::ComplexEigenvalue, "negative inner radicand in the dispersion relation");
  const double outer = 2 * c2 * ga + g * H * H * H * k2 + c2 * H * H * k2 + std::sqrt(inner);
  if (outer < 0.0) throw Error(ErrorKind::ComplexEigenvalue, "negative outer radicand in the dispersion relation");
  return std::sqrt(outer) / (std::sqrt(2.0) * H);
}

Hsgn1D SinusoidalWave::mode(double x, double t) const {
  const double H = params_.H0, c2 = params_.c * params_.c, k2 = k_ * k_, l = lambda_;
  const double common = c2 * k2 + params_.g * H * k2 - l * l;
  return {1.0, l / k_, 0.0, -H * l * common * std::tan(l * t - k_ * x) / (2.0 * c2 * k2),
          -H * H * l * l * common / (2.0 * params_.gamma * c2 * k2)};
}

Hsgn::StateT SinusoidalWave::initial(double x) const {
  const double cs = std::cos(k_ * x);
  if (std::abs(cs) < 1e-10) throw Error(ErrorKind::PoleGuard, "tan pole in the mode vector at x=" + std::to_string(x));
  const double f = amplitude_ * cs;
  const Hsgn1D r = mode(x, 0.0);
  return {params_.H0 + f * r[0], f * r[1], f * r[2], f * r[3], f * r[4], 0.0};
}

}  // namespace aderdg
