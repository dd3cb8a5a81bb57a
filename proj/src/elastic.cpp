#include "aderdg/models/elastic.hpp"

namespace aderdg {

void ElasticMaterial::check() const {
  if (!(rho > 0.0) || !(mu >= 0.0) || !(lambda + 2.0 * mu > 0.0) || !std::isfinite(lambda))
    throw Error(ErrorKind::InvalidArgument, "elastic material needs rho > 0, mu >= 0, lambda + 2 mu > 0");
}

ElasticMaterial ElasticMaterial::from_speeds(double cp, double cs, double rho) {
  ElasticMaterial m;
  m.rho = rho;
  m.mu = rho * cs * cs;
  m.lambda = rho * cp * cp - 2.0 * m.mu;
  m.check();
  return m;
}

PlaneWaveVectors elastic_plane_wave_eigenvectors(const Vec<2>& n, const ElasticMaterial& m) {
  const double nx = n[0], ny = n[1];
  const double cp = m.cp(), cs = m.cs();
  PlaneWaveVectors r;
  r.rp = {m.lambda + 2.0 * m.mu * nx * nx, m.lambda + 2.0 * m.mu * ny * ny, 2.0 * m.mu * nx * ny, -cp * nx, -cp * ny};
  r.rs = {-2.0 * m.mu * nx * ny, 2.0 * m.mu * nx * ny, m.mu * (nx * nx - ny * ny), cs * ny, -cs * nx};
  return r;
}

}  // namespace aderdg
