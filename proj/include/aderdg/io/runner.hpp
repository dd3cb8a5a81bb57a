#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "aderdg/io/config.hpp"
#include "aderdg/io/output.hpp"

namespace aderdg {

struct RunOptions {
  std::filesystem::path output_dir = ".";
  bool write_outputs = true;
  /// Called after every accepted step with (time, steps so far).
  std::function<void(double, long)> progress;
};

struct RunReport {
  double t_final = 0.0;
  long steps = 0;
  double wall_seconds = 0.0;
  std::vector<Seismogram> seismograms;
  std::vector<std::string> error_names;  ///< empty when the scenario has no reference solution
  std::vector<double> errors;
  std::vector<std::filesystem::path> files;
};

/// Runs a configuration to t_end, landing exactly on t_end and on every output time.
RunReport run(const RunConfig& cfg, const RunOptions& opt = {});

/// Copy of cfg with the convergence axes set to n cells.
RunConfig refine(const RunConfig& cfg, int n);

struct ConvergenceReport {
  std::vector<std::string> names;
  std::vector<ConvergenceRow> rows;
  std::vector<RunReport> runs;
};

/// Runs the template at each level and tabulates errors against the reference solution.
ConvergenceReport run_convergence(const RunConfig& tmpl, const std::vector<int>& levels, const RunOptions& opt = {});

}  // namespace aderdg
