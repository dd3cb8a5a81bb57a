// Benchmark driver: run a config, run a convergence study, or compare two CSV files.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aderdg/dg/parallel.hpp"
#include "aderdg/io/runner.hpp"

namespace {

constexpr int kOk = 0, kConfigError = 2, kSolverError = 3, kCompareFailed = 4;

int exit_code(const aderdg::Error& e) {
  switch (e.kind()) {
    case aderdg::ErrorKind::ConfigError:
    case aderdg::ErrorKind::UnknownSpec:
    case aderdg::ErrorKind::BadExtents:
    case aderdg::ErrorKind::NonNestedMeshes:
      return kConfigError;
    default:
      return kSolverError;
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw aderdg::Error(aderdg::ErrorKind::IoError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High order ADER-DG solver for dispersive water waves and elastic waves"};
  app.require_subcommand(1);
  int threads = 0;
  std::string out_dir = ".";
  bool quiet = false;
  app.add_option("--threads", threads, "worker threads (0 keeps the OpenMP default)")->check(CLI::NonNegativeNumber);
  app.add_option("--output-dir", out_dir, "directory for fields, seismograms and tables");
  app.add_flag("-q,--quiet", quiet, "suppress progress output");

  std::string config;
  auto* run_cmd = app.add_subcommand("run", "run one configuration to t_end");
  run_cmd->add_option("config", config, "run configuration (INI)")->required();

  std::string tmpl;
  std::vector<int> levels;
  auto* conv_cmd = app.add_subcommand("convergence", "refine a configuration and tabulate observed orders");
  conv_cmd->add_option("config", tmpl, "configuration template")->required();
  conv_cmd->add_option("--levels", levels, "cells along the refined axes, e.g. 10,15,20")->delimiter(',')->required();

  std::string csv_a, csv_b;
  double tol = 0.0;
  auto* cmp_cmd = app.add_subcommand("compare", "compare two CSV files field by field");
  cmp_cmd->add_option("a", csv_a)->required();
  cmp_cmd->add_option("b", csv_b)->required();
  cmp_cmd->add_option("--tol", tol, "largest accepted absolute difference");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }
  if (threads > 0) aderdg::set_threads(threads);

  aderdg::RunOptions opt;
  opt.output_dir = out_dir;
  long last_report = 0;
  if (!quiet)
    opt.progress = [&](double t, long steps) {
      if (steps - last_report >= 1000) {
        std::fprintf(stderr, "  step %ld  t=%.6g\n", steps, t);
        last_report = steps;
      }
    };

  try {
    if (*run_cmd) {
      const auto cfg = aderdg::RunConfig::load(config);
      const auto rep = aderdg::run(cfg, opt);
      std::printf("%s: t=%s steps=%ld wall=%.2fs\n", cfg.name.c_str(), aderdg::format_double(rep.t_final).c_str(),
                  rep.steps, rep.wall_seconds);
      for (std::size_t i = 0; i < rep.errors.size(); ++i)
        std::printf("  L2 error %-4s %.6e\n", rep.error_names[i].c_str(), rep.errors[i]);
      for (const auto& f : rep.files) std::printf("  wrote %s\n", f.string().c_str());
    } else if (*conv_cmd) {
      const auto cfg = aderdg::RunConfig::load(tmpl);
      const auto rep = aderdg::run_convergence(cfg, levels, opt);
      std::printf("%s", aderdg::convergence_text(rep.rows, rep.names).c_str());
    } else if (*cmp_cmd) {
      const auto c = aderdg::compare_csv(slurp(csv_a), slurp(csv_b));
      std::printf("%s\n", c.message.c_str());
      return c.within(tol) ? kOk : kCompareFailed;
    }
  } catch (const aderdg::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kSolverError;
  }
  return kOk;
}
