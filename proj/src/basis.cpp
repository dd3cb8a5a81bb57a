#include "aderdg/dg/basis.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>

#include "aderdg/error.hpp"

namespace aderdg {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int npts) {
  if (npts < 1 || npts > 16)
    throw Error(ErrorKind::UnsupportedOrder, "Gauss-Legendre rule needs 1..16 points, got " + std::to_string(npts));
  std::vector<double> x(npts), w(npts);
  const int n = npts;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n starting from the Chebyshev-like guess
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
    }
    const double wz = 2.0 / ((1.0 - z * z) * dp * dp);
    x[i] = 0.5 * (1.0 - z);
    x[n - 1 - i] = 0.5 * (1.0 + z);
    w[i] = w[n - 1 - i] = 0.5 * wz;
  }
  if (n % 2 == 1) x[n / 2] = 0.5;
  return {x, w};
}

Basis1D::Basis1D(int degree) : n_(degree) {
  if (degree < 0 || degree > 15)
    throw Error(ErrorKind::UnsupportedOrder, "basis degree must be in 0..15, got " + std::to_string(degree));
  std::tie(nodes_, weights_) = gauss_legendre(degree + 1);
  const int p = size();
  diff_.resize(p * p);
  weak_.resize(p * p);
  left_.resize(p);
  right_.resize(p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) diff_[i * p + j] = derivative(j, nodes_[i]);
  // exact row sums of zero keep constants in the kernel
  for (int i = 0; i < p; ++i) {
    double s = 0.0;
    for (int j = 0; j < p; ++j)
      if (j != i) s += diff_[i * p + j];
    diff_[i * p + i] = -s;
  }
  for (int k = 0; k < p; ++k)
    for (int a = 0; a < p; ++a) weak_[k * p + a] = weights_[a] * diff_[a * p + k] / weights_[k];
  for (int j = 0; j < p; ++j) {
    left_[j] = value(j, 0.0);
    right_[j] = value(j, 1.0);
  }
  // K1_kl = phi_k(1) phi_l(1) - w_l phi_k'(xi_l); picard = K1^{-1} diag(w)
  Eigen::MatrixXd k1(p, p);
  for (int k = 0; k < p; ++k)
    for (int l = 0; l < p; ++l) k1(k, l) = right_[k] * right_[l] - weights_[l] * diff_[l * p + k];
  Eigen::MatrixXd pic = k1.inverse() * Eigen::VectorXd::Map(weights_.data(), p).asDiagonal();
  picard_.resize(p * p);
  for (int m = 0; m < p; ++m)
    for (int l = 0; l < p; ++l) picard_[m * p + l] = pic(m, l);
}

double Basis1D::value(int j, double xi) const {
  double v = 1.0;
  for (int m = 0; m < size(); ++m)
    if (m != j) v *= (xi - nodes_[m]) / (nodes_[j] - nodes_[m]);
  return v;
}

double Basis1D::derivative(int j, double xi) const {
  double total = 0.0;
  for (int k = 0; k < size(); ++k) {
    if (k == j) continue;
    double term = 1.0 / (nodes_[j] - nodes_[k]);
    for (int m = 0; m < size(); ++m)
      if (m != j && m != k) term *= (xi - nodes_[m]) / (nodes_[j] - nodes_[m]);
    total += term;
  }
  return total;
}

std::vector<double> Basis1D::values(double xi) const {
  std::vector<double> v(size());
  for (int j = 0; j < size(); ++j) v[j] = value(j, xi);
  return v;
}

std::vector<double> Basis1D::interpolation_matrix(const std::vector<double>& pts) const {
  std::vector<double> out(pts.size() * size());
  for (std::size_t q = 0; q < pts.size(); ++q)
    for (int j = 0; j < size(); ++j) out[q * size() + j] = value(j, pts[q]);
  return out;
}

const Basis1D& basis(int degree) {
  static std::array<std::unique_ptr<Basis1D>, 16> cache;
  static std::once_flag flags[16];
  if (degree < 0 || degree > 15)
    throw Error(ErrorKind::UnsupportedOrder, "basis degree must be in 0..15, got " + std::to_string(degree));
  std::call_once(flags[degree], [degree] { cache[degree] = std::make_unique<Basis1D>(degree); });
  return *cache[degree];
}

}  // namespace aderdg

namespace aderdg {

const std::pair<std::vector<double>, std::vector<double>>& path_rule3() {
  static const auto rule = gauss_legendre(3);
  return rule;
}

const std::pair<std::vector<double>, std::vector<double>>& path_rule(int npts) {
  static std::array<std::pair<std::vector<double>, std::vector<double>>, 17> rules = [] {
    std::array<std::pair<std::vector<double>, std::vector<double>>, 17> r;
    for (int n = 1; n <= 16; ++n) r[n] = gauss_legendre(n);
    return r;
  }();
  if (npts < 1 || npts > 16) throw Error(ErrorKind::UnsupportedOrder, "path rule needs 1..16 points");
  return rules[npts];
}

}  // namespace aderdg
