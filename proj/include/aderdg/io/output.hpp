#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aderdg/dg/solver.hpp"
#include "aderdg/error.hpp"

namespace aderdg {

/// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

/// Writes text to path, throwing IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

/// Time series of the full state at one point.
struct Seismogram {
  std::string name;
  std::vector<double> x;
  std::vector<std::string> variables;
  std::vector<double> times;
  std::vector<std::vector<double>> samples;  ///< one state per time

  std::string csv() const;
  /// Trace of variable v.
  std::vector<double> trace(int v) const;
};

/// Solution at x evaluated in the lower-index element on shared faces; throws OutsideDomain.
template <HyperbolicModel M>
State<M::kVars> record_receiver(const Solver<M>& s, const Vec<M::kDim>& x) {
  return s.evaluate(x);
}

template <HyperbolicModel M>
void append_sample(Seismogram& sg, const Solver<M>& s) {
  Vec<M::kDim> x{};
  for (int d = 0; d < M::kDim; ++d) x[d] = sg.x[d];
  const auto q = record_receiver(s, x);
  sg.times.push_back(s.time());
  sg.samples.emplace_back(q.begin(), q.end());
}

template <HyperbolicModel M>
Seismogram make_seismogram(const std::string& name, const std::vector<double>& x) {
  Seismogram sg;
  sg.name = name;
  sg.x = x;
  for (auto v : M::variable_names()) sg.variables.emplace_back(v);
  return sg;
}

namespace detail {

/// Calls f(point, state) over a uniform sampling with (N+1) points per cell and
/// axis, ordered x-fastest over the global sample grid.
template <HyperbolicModel M, class F>
void for_each_sample(const Solver<M>& s, F&& f) {
  constexpr int D = M::kDim;
  const auto& mesh = s.mesh();
  const int p = s.degree() + 1;
  std::array<int, D> dims{};
  std::size_t total = 1;
  for (int d = 0; d < D; ++d) {
    dims[d] = mesh.counts()[d] * p;
    total *= static_cast<std::size_t>(dims[d]);
  }
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rem = i;
    typename CartesianMesh<D>::Index cell{};
    Vec<D> xi{};
    for (int d = 0; d < D; ++d) {
      const int g = static_cast<int>(rem % dims[d]);
      rem /= dims[d];
      cell[d] = g / p;
      xi[d] = (g % p + 0.5) / p;
    }
    f(mesh.physical(cell, xi), s.evaluate_in(mesh.linear(cell), xi));
  }
}

}  // namespace detail

/// CSV with columns (x, y[, z], variables...).
template <HyperbolicModel M>
std::string field_csv(const Solver<M>& s) {
  constexpr int D = M::kDim;
  static constexpr const char* kAxis[] = {"x", "y", "z"};
  std::string out;
  for (int d = 0; d < D; ++d) out += std::string(d ? "," : "") + kAxis[d];
  for (auto v : M::variable_names()) out += "," + std::string(v);
  out += '\n';
  detail::for_each_sample(s, [&](const Vec<D>& x, const State<M::kVars>& q) {
    for (int d = 0; d < D; ++d) out += (d ? "," : "") + format_double(x[d]);
    for (double v : q) out += "," + format_double(v);
    out += '\n';
  });
  return out;
}

/// Legacy VTK structured points, ASCII, one scalar array per variable.
template <HyperbolicModel M>
std::string field_vtk(const Solver<M>& s) {
  constexpr int D = M::kDim, V = M::kVars;
  const auto& mesh = s.mesh();
  const int p = s.degree() + 1;
  std::array<int, 3> dims{1, 1, 1};
  std::array<double, 3> origin{0, 0, 0}, spacing{1, 1, 1};
  std::size_t n = 1;
  for (int d = 0; d < D; ++d) {
    dims[d] = mesh.counts()[d] * p;
    spacing[d] = mesh.spacing()[d] / p;
    origin[d] = mesh.lo()[d] + 0.5 * spacing[d];
    n *= static_cast<std::size_t>(dims[d]);
  }
  std::vector<std::array<double, V>> values;
  values.reserve(n);
  detail::for_each_sample(s, [&](const Vec<D>&, const State<V>& q) { values.push_back(q); });
  std::string out = "# vtk DataFile Version 3.0\naderdg field t=" + format_double(s.time()) + "\nASCII\nDATASET STRUCTURED_POINTS\n";
  out += "DIMENSIONS " + std::to_string(dims[0]) + " " + std::to_string(dims[1]) + " " + std::to_string(dims[2]) + "\n";
  out += "ORIGIN " + format_double(origin[0]) + " " + format_double(origin[1]) + " " + format_double(origin[2]) + "\n";
  out += "SPACING " + format_double(spacing[0]) + " " + format_double(spacing[1]) + " " + format_double(spacing[2]) + "\n";
  out += "POINT_DATA " + std::to_string(n) + "\n";
  const auto names = M::variable_names();
  for (int v = 0; v < V; ++v) {
    out += "SCALARS " + std::string(names[v]) + " double 1\nLOOKUP_TABLE default\n";
    for (const auto& q : values) out += format_double(q[v]) + "\n";
  }
  return out;
}

template <HyperbolicModel M>
void write_field(const Solver<M>& s, const std::string& format, const std::filesystem::path& path) {
  if (format == "csv") write_text(path, field_csv(s));
  else if (format == "vtk") write_text(path, field_vtk(s));
  else throw Error(ErrorKind::IoError, "unknown field format '" + format + "'");
}

/// One refinement level of a convergence study.
struct ConvergenceRow {
  int degree = 0;
  int cells = 0;
  std::vector<double> errors;
  std::vector<std::optional<double>> orders;  ///< empty on the first row
};

/// O = log(e_coarse / e_fine) / log(n_fine / n_coarse)
double observed_order(double e_coarse, double e_fine, int n_coarse, int n_fine);

/// Orders between consecutive rows.
std::vector<ConvergenceRow> convergence_table(int degree, const std::vector<int>& cells,
                                              const std::vector<std::vector<double>>& errors);

std::string convergence_csv(const std::vector<ConvergenceRow>& rows, const std::vector<std::string>& names);
std::string convergence_text(const std::vector<ConvergenceRow>& rows, const std::vector<std::string>& names);

/// Result of comparing two numeric CSV files.
struct CsvComparison {
  bool equal_shape = false;
  double max_abs_diff = 0.0;
  std::string message;
  bool within(double tol) const { return equal_shape && max_abs_diff <= tol; }
};

CsvComparison compare_csv(const std::string& a, const std::string& b);

}  // namespace aderdg
