#include "aderdg/models/hsgn.hpp"

#include <cmath>
#include <string>

namespace aderdg {

HsgnParams HsgnParams::from_alpha(double alpha, double H0, double gamma, double g) {
  HsgnParams p;
  p.g = g;
  p.gamma = gamma;
  p.H0 = H0;
  p.c = alpha * std::sqrt(g * H0);
  p.check();
  return p;
}

double HsgnParams::alpha() const { return c / std::sqrt(g * H0); }

void HsgnParams::check() const {
  if (!(g > 0.0) || !(c > 0.0) || !(gamma > 0.0) || !(H0 > 0.0))
    throw Error(ErrorKind::InvalidArgument, "HSGN parameters must satisfy g, c, gamma, H0 > 0");
}

Hsgn::Hsgn(HsgnParams params) : params_(params) { params_.check(); }

void Hsgn::validate(const StateT& q) const {
  if (!(q[0] > params_.h_floor()) || !all_finite(q))
    throw Error(ErrorKind::NonPositiveDepth, "water depth h=" + std::to_string(q[0]) +
                                                 " at or below floor " + std::to_string(params_.h_floor()));
}

FluxTensor<Hsgn::kVars, Hsgn::kDim> Hsgn::flux(const StateT& q, const Material&) const {
  validate(q);
  const double h = q[0];
  const double u = q[1] / h, v = q[2] / h, w = q[3] / h, p = q[4] / h;
  const double c2 = params_.c * params_.c;
  const double iso = 0.5 * params_.g * h * h + q[4];
  FluxTensor<kVars, kDim> f{};
  f[0] = {q[1], q[1] * u + iso, q[1] * v, q[1] * w, q[1] * (p + c2), 0.0};
  f[1] = {q[2], q[2] * u, q[2] * v + iso, q[2] * w, q[2] * (p + c2), 0.0};
  return f;
}

Hsgn::StateT Hsgn::ncp(const StateT& q, const Grad& grad, const Material&) const {
  validate(q);
  const double h = q[0];
  const double u = q[1] / h, v = q[2] / h, p = q[4] / h;
  const double c2 = params_.c * params_.c;
  const double press = params_.g * h + params_.gamma * p;
  const double dxzb = grad[0][kZb], dyzb = grad[1][kZb];
  StateT r{};
  r[1] = press * dxzb;
  r[2] = press * dyzb;
  r[4] = c2 * (-u * grad[0][0] - v * grad[1][0] - 2.0 * (u * dxzb + v * dyzb));
  return r;
}

Hsgn::StateT Hsgn::source(const StateT& q, const Material&) const {
  validate(q);
  const double h = q[0];
  StateT s{};
  s[3] = params_.gamma * q[4] / h;
  s[4] = -2.0 * params_.c * params_.c * q[3] / h;
  return s;
}

double Hsgn::max_signal_speed(const StateT& q, const Vec<kDim>& n, const Material&) const {
  validate(q);
  const double h = q[0];
  const double un = (q[1] * n[0] + q[2] * n[1]) / h;
  const double p = q[4] / h;
  return std::abs(un) + std::sqrt(params_.g * h + params_.c * params_.c + 2.0 * std::abs(p));
}

HsgnPrimitives Hsgn::primitives(const StateT& q) const {
  validate(q);
  const double h = q[0];
  return {h, q[1] / h, q[2] / h, q[3] / h, q[4] / h, q[5]};
}

Hsgn::StateT Hsgn::pack(const HsgnPrimitives& w) {
  return {w.h, w.h * w.u, w.h * w.v, w.h * w.w, w.h * w.p, w.zb};
}

}  // namespace aderdg
