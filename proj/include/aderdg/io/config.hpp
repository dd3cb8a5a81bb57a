#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "aderdg/grid/cartesian_mesh.hpp"

namespace aderdg {

/// Mesh and discretization of one domain.
struct DomainSpec {
  std::vector<double> lo, hi;
  std::vector<int> cells;
  int degree = 3;
  double cfl = 0.0;  ///< 0 selects default_cfl(N, d)
  std::array<std::array<BoundaryKind, 2>, 3> boundaries{};

  int dim() const { return static_cast<int>(cells.size()); }
  template <int D>
  CartesianMesh<D> mesh() const;
};

struct Receiver {
  std::string name;
  std::vector<double> x;
};

/// Everything a run needs, read from an INI file with sections [run], [mesh]
/// (or [fluid] and [solid] for coupled runs), [scenario], [receivers],
/// [fluid_receivers] and [coupling].
struct RunConfig {
  std::string name = "run";
  std::string model;     ///< hsgn, elastic2d, elastic3d or coupled
  std::string scenario;
  double t_end = 0.0;
  std::vector<double> output_times;
  int seismogram_stride = 1;
  std::vector<std::string> formats{"csv"};
  std::vector<int> convergence_axes;  ///< axes scaled by the convergence driver; empty means all

  DomainSpec domain;  ///< the single domain, or the solid of a coupled run
  DomainSpec fluid;
  std::map<std::string, std::string> params;
  std::vector<Receiver> receivers, fluid_receivers;
  double rho_w = 1000.0;
  bool non_hydrostatic = false;

  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::filesystem::path& path);

  /// Throws ConfigError on an inconsistent configuration.
  void validate() const;

  double param(const std::string& key, double fallback) const;
  std::vector<double> param_list(const std::string& key, std::vector<double> fallback) const;
  std::string param_string(const std::string& key, const std::string& fallback) const;
  bool coupled() const { return model == "coupled"; }
};

std::vector<double> parse_doubles(const std::string& s);

}  // namespace aderdg
