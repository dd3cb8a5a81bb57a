#include <Eigen/Dense>
#include <cmath>

#include "aderdg/scenarios/elastic.hpp"

namespace aderdg {

namespace {

Eigen::Matrix<double, 5, 5> normal_matrix(const ElasticMaterial& m, const Vec<2>& nhat) {
  Elastic<2> model;
  Eigen::Matrix<double, 5, 5> a;
  for (int j = 0; j < 5; ++j) {
    GradientStack<5, 2> g{};
    g[0][j] = nhat[0];
    g[1][j] = nhat[1];
    const auto col = model.ncp(State<5>{}, g, m);
    for (int i = 0; i < 5; ++i) a(i, j) = col[i];
  }
  return a;
}

}  // namespace

PsWave::PsWave(ElasticMaterial mat, double alpha, Vec<2> n) : mat_(mat), alpha_(alpha), n_(n) {
  mat_.check();
  r_ = elastic_plane_wave_eigenvectors(n_, mat_);
  const double len = std::hypot(n_[0], n_[1]);
  const Vec<2> nhat{n_[0] / len, n_[1] / len};
  Eigen::EigenSolver<Eigen::Matrix<double, 5, 5>> es(normal_matrix(mat_, nhat));
  Eigen::Matrix<double, 5, 5> R = es.eigenvectors().real();
  Eigen::Matrix<double, 5, 1> v;
  for (int i = 0; i < 5; ++i) v(i) = r_.rp[i] + r_.rs[i];
  const Eigen::Matrix<double, 5, 1> c = R.partialPivLu().solve(v);
  for (int i = 0; i < 5; ++i) {
    speeds_[i] = es.eigenvalues()(i).real();
    for (int j = 0; j < 5; ++j) modes_[i][j] = c(i) * R(j, i);
  }
}

State<5> PsWave::initial(const Vec<2>& x) const {
  const double s = alpha_ * std::sin(2.0 * M_PI * (n_[0] * x[0] + n_[1] * x[1]));
  State<5> q{};
  for (int i = 0; i < 5; ++i) q[i] = s * (r_.rp[i] + r_.rs[i]);
  return q;
}

State<5> PsWave::exact(const Vec<2>& x, double t) const {
  const double len = std::hypot(n_[0], n_[1]);
  State<5> q{};
  for (int i = 0; i < 5; ++i) {
    // a characteristic with speed s moves the profile by s t along n/|n|
    const double phase = 2.0 * M_PI * (n_[0] * x[0] + n_[1] * x[1] - len * speeds_[i] * t);
    const double s = alpha_ * std::sin(phase);
    for (int j = 0; j < 5; ++j) q[j] += s * modes_[i][j];
  }
  return q;
}

double LambSource::a2() const { return -(M_PI * fc) * (M_PI * fc); }

double LambSource::time_factor(double t) const {
  const double s = (t - t_delay) * (t - t_delay);
  return rho_s * a1 * (0.5 + a2() * s) * std::exp(a2() * s);
}

State<5> LambSource::forcing(double t, double rho) const {
  State<5> f{};
  f[Elastic<2>::velocity_index(1)] = time_factor(t) / rho;
  return f;
}

State<5> gaussian_pwave_init(const Vec<2>& x, const ElasticMaterial& m, double sigma, Vec<2> x0, Vec<2> n) {
  const double s = n[0] * (x[0] - x0[0]) + n[1] * (x[1] - x0[1]);
  const double a = std::exp(-s * s / (2.0 * sigma * sigma));
  auto q = elastic_plane_wave_eigenvectors(n, m).rp;
  for (auto& v : q) v *= a;
  return q;
}

State<9> gaussian_w_init(const Vec<3>& x, double radius, Vec<3> x0) {
  double r2 = 0.0;
  for (int d = 0; d < 3; ++d) r2 += (x[d] - x0[d]) * (x[d] - x0[d]);
  State<9> q{};
  q[Elastic<3>::velocity_index(2)] = -0.1 * std::exp(-r2 / (2.0 * radius * radius));
  return q;
}

ElasticParams<2> stiff_inclusion_params() {
  ElasticParams<2> p;
  p.background = {2.0, 1.0, 1.0};
  p.regions.push_back({{-0.5, -0.1}, {0.5, 0.1}, {200.0, 100.0, 1.0}});
  return p;
}

}  // namespace aderdg
