#pragma once

#include <utility>
#include <vector>

namespace aderdg {

/// Gauss-Legendre rule with npts points mapped to [0,1]. Supports 1..16 points.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int npts);

/// Lagrange basis of degree N through the Gauss-Legendre nodes on [0,1].
class Basis1D {
 public:
  explicit Basis1D(int degree);

  int degree() const { return n_; }
  int size() const { return n_ + 1; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  /// diff(i, j) = phi_j'(xi_i)
  double diff(int i, int j) const { return diff_[i * size() + j]; }
  /// Weak derivative: weak_diff(k, a) = w_a phi_k'(xi_a) / w_k.
  double weak_diff(int k, int a) const { return weak_[k * size() + a]; }
  /// phi_j at the two ends of the reference interval.
  double left(int j) const { return left_[j]; }
  double right(int j) const { return right_[j]; }
  /// Picard matrix: the collocated space-time predictor reads q = u + dt * picard * R(q).
  double picard(int m, int l) const { return picard_[m * size() + l]; }

  double value(int j, double xi) const;
  double derivative(int j, double xi) const;
  /// All basis values at xi.
  std::vector<double> values(double xi) const;

  /// Interpolation matrix onto other points: out[p * size() + j] = phi_j(pts[p]).
  std::vector<double> interpolation_matrix(const std::vector<double>& pts) const;

 private:
  int n_;
  std::vector<double> nodes_, weights_, diff_, weak_, left_, right_, picard_;
};

/// Cached basis for degree N (0..15).
const Basis1D& basis(int degree);

}  // namespace aderdg

namespace aderdg {

/// Cached Gauss rules for the segment path integral.
const std::pair<std::vector<double>, std::vector<double>>& path_rule3();
const std::pair<std::vector<double>, std::vector<double>>& path_rule(int npts);

}  // namespace aderdg
