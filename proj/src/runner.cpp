#include "aderdg/io/runner.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <optional>

#include "aderdg/coupling/coupling.hpp"
#include "aderdg/scenarios/elastic.hpp"
#include "aderdg/scenarios/hsgn.hpp"

namespace aderdg {

namespace {

template <HyperbolicModel M>
using Field = std::function<State<M::kVars>(const Vec<M::kDim>&, double)>;

/// A solver with its initial state applied and, when known, its exact solution.
template <HyperbolicModel M>
struct Setup {
  std::unique_ptr<Solver<M>> solver;
  std::optional<Field<M>> exact;
};

template <int D>
Vec<D> to_vec(const std::vector<double>& v, const std::string& what) {
  if (static_cast<int>(v.size()) != D) throw Error(ErrorKind::ConfigError, what + " needs " + std::to_string(D) + " entries");
  Vec<D> out{};
  for (int d = 0; d < D; ++d) out[d] = v[d];
  return out;
}

ElasticMaterial material_from(const RunConfig& c, ElasticMaterial fallback) {
  ElasticMaterial m = fallback;
  if (c.params.count("cp") || c.params.count("cs")) {
    m = ElasticMaterial::from_speeds(c.param("cp", fallback.cp()), c.param("cs", fallback.cs()), c.param("rho", fallback.rho));
  } else {
    m.lambda = c.param("lambda", m.lambda);
    m.mu = c.param("mu", m.mu);
    m.rho = c.param("rho", m.rho);
  }
  m.check();
  return m;
}

HsgnParams hsgn_params(const RunConfig& c, HsgnParams p) {
  p.g = c.param("g", p.g);
  p.gamma = c.param("gamma", p.gamma);
  p.H0 = c.param("H0", p.H0);
  p.c = c.param("c", p.c);
  if (c.params.count("alpha")) p.c = c.param("alpha", 1.0) * std::sqrt(p.g * p.H0);
  p.check();
  return p;
}

/// Dirichlet faces take the exact solution when one exists, the initial state otherwise.
template <HyperbolicModel M>
void install_dirichlet(Solver<M>& s, const Field<M>& field) {
  for (int d = 0; d < M::kDim; ++d)
    for (int side = 0; side < 2; ++side)
      if (s.mesh().boundary(d, side) == BoundaryKind::Dirichlet) s.set_ghost(d, side, dirichlet_ghost<M>(field));
}

Setup<Elastic2D> setup_elastic2d(const RunConfig& c) {
  const auto mesh = c.domain.mesh<2>();
  Setup<Elastic2D> s;
  if (c.scenario == "pswave") {
    const PsWave ps(material_from(c, ElasticMaterial{}), c.param("alpha", 0.1), to_vec<2>(c.param_list("n", {1.0, 1.0}), "n"));
    s.solver = std::make_unique<Solver<Elastic2D>>(Elastic2D{}, mesh, c.domain.degree, [&](const Vec<2>&) { return ps.material(); });
    s.solver->set_state([&](const Vec<2>& x) { return ps.initial(x); });
    s.exact = [ps](const Vec<2>& x, double t) { return ps.exact(x, t); };
  } else if (c.scenario == "lamb") {
    const ElasticMaterial m = material_from(c, ElasticMaterial::rock());
    LambSource src;
    src.location = to_vec<2>(c.param_list("source", {0.0, -1.0}), "source");
    src.rho_s = c.param("rho_s", src.rho_s);
    src.a1 = c.param("a1", src.a1);
    src.fc = c.param("fc", src.fc);
    src.t_delay = c.param("t_delay", src.t_delay);
    s.solver = std::make_unique<Solver<Elastic2D>>(Elastic2D{}, mesh, c.domain.degree, [m](const Vec<2>&) { return m; });
    s.solver->add_point_source({src.location, [src, m](double t) { return src.forcing(t, m.rho); }});
  } else if (c.scenario == "stiff_inclusion") {
    const auto prm = stiff_inclusion_params();
    const double sigma = c.param("sigma", 0.01);
    const Vec<2> x0 = to_vec<2>(c.param_list("x0", {-0.08, 0.0}), "x0");
    const Vec<2> n = to_vec<2>(c.param_list("n", {1.0, 0.0}), "n");
    s.solver = std::make_unique<Solver<Elastic2D>>(Elastic2D{}, mesh, c.domain.degree, [prm](const Vec<2>& x) { return prm.at(x); });
    s.solver->set_state([&](const Vec<2>& x) { return gaussian_pwave_init(x, prm.at(x), sigma, x0, n); });
  } else if (c.scenario == "constant") {
    const ElasticMaterial m = material_from(c, ElasticMaterial{});
    const auto v = c.param_list("state", std::vector<double>(5, 0.0));
    if (v.size() != 5) throw Error(ErrorKind::ConfigError, "state needs 5 entries");
    State<5> q;
    std::copy(v.begin(), v.end(), q.begin());
    s.solver = std::make_unique<Solver<Elastic2D>>(Elastic2D{}, mesh, c.domain.degree, [m](const Vec<2>&) { return m; });
    s.solver->set_state([q](const Vec<2>&) { return q; });
    s.exact = [q](const Vec<2>&, double) { return q; };
  } else {
    throw Error(ErrorKind::ConfigError, "unknown elastic2d scenario '" + c.scenario + "'");
  }
  return s;
}

Setup<Elastic3D> setup_elastic3d(const RunConfig& c) {
  const auto mesh = c.domain.mesh<3>();
  Setup<Elastic3D> s;
  if (c.scenario == "gauss3d") {
    const ElasticMaterial m = material_from(c, ElasticMaterial::rock());
    const double radius = c.param("radius", 500.0);
    const Vec<3> x0 = to_vec<3>(c.param_list("x0", {0.0, 0.0, 0.0}), "x0");
    s.solver = std::make_unique<Solver<Elastic3D>>(Elastic3D{}, mesh, c.domain.degree, [m](const Vec<3>&) { return m; });
    s.solver->set_state([&](const Vec<3>& x) { return gaussian_w_init(x, radius, x0); });
  } else {
    throw Error(ErrorKind::ConfigError, "unknown elastic3d scenario '" + c.scenario + "'");
  }
  return s;
}

Setup<Hsgn> setup_hsgn(const RunConfig& c, const DomainSpec& dom) {
  const auto mesh = dom.mesh<2>();
  const double period = mesh.boundary(0, 0) == BoundaryKind::Periodic ? mesh.hi()[0] - mesh.lo()[0] : 0.0;
  Setup<Hsgn> s;
  if (c.scenario == "soliton" || c.scenario == "step") {
    const bool step = c.scenario == "step";
    HsgnParams base;
    if (step) base.H0 = 0.2;
    const HsgnParams p = hsgn_params(c, base);
    const auto prof = std::make_shared<SolitonProfile>(SolitonProfile::build(c.param("amplitude", step ? 0.0365 : 0.2), p));
    const double x0 = c.param("x0", step ? -3.0 : 0.0);
    s.solver = std::make_unique<Solver<Hsgn>>(Hsgn(p), mesh, dom.degree);
    if (step) {
      s.solver->set_state([&](const Vec<2>& x) { return soliton_state(*prof, x[0], 0.0, x0, period, step_bathymetry(x[0])); });
      install_dirichlet<Hsgn>(*s.solver, [prof, x0](const Vec<2>& x, double) {
        return soliton_state(*prof, x[0], 0.0, x0, 0.0, step_bathymetry(x[0]));
      });
    } else {
      s.exact = [prof, x0, period](const Vec<2>& x, double t) { return soliton_state(*prof, x[0], t, x0, period); };
      s.solver->set_state([&](const Vec<2>& x) { return (*s.exact)(x, 0.0); });
      install_dirichlet<Hsgn>(*s.solver, *s.exact);
    }
  } else if (c.scenario == "lake") {
    const HsgnParams p = hsgn_params(c, HsgnParams{});
    const std::string bathy = c.param_string("bathymetry", "flat");
    if (bathy != "flat" && bathy != "step") throw Error(ErrorKind::ConfigError, "bathymetry must be flat or step");
    const double H0 = p.H0;
    s.exact = [H0, bathy](const Vec<2>& x, double) { return lake_at_rest(H0, bathy == "step" ? step_bathymetry(x[0]) : 0.0); };
    s.solver = std::make_unique<Solver<Hsgn>>(Hsgn(p), mesh, dom.degree);
    s.solver->set_state([&](const Vec<2>& x) { return (*s.exact)(x, 0.0); });
    install_dirichlet<Hsgn>(*s.solver, *s.exact);
  } else if (c.scenario == "sinusoidal") {
    const HsgnParams p = hsgn_params(c, SinusoidalWave::default_params());
    const SinusoidalWave w(p, c.param("wavelength", 200.0), c.param("amplitude", 1e-3));
    s.solver = std::make_unique<Solver<Hsgn>>(Hsgn(p), mesh, dom.degree);
    s.solver->set_state([&](const Vec<2>& x) { return w.initial(x[0]); });
    install_dirichlet<Hsgn>(*s.solver, [w](const Vec<2>& x, double) { return w.initial(x[0]); });
  } else {
    throw Error(ErrorKind::ConfigError, "unknown hsgn scenario '" + c.scenario + "'");
  }
  return s;
}

/// Quantities whose L2 errors are reported: primitives for HSGN, the state otherwise.
template <HyperbolicModel M>
std::vector<std::string> error_names() {
  if constexpr (std::is_same_v<M, Hsgn>) {
    return {"h", "u", "v", "w", "p"};
  } else {
    std::vector<std::string> out;
    for (auto v : M::variable_names()) out.emplace_back(v);
    return out;
  }
}

template <HyperbolicModel M>
std::vector<double> errors_of(const Solver<M>& s, const Field<M>& exact) {
  const double t = s.time();
  const auto ref = [&](const Vec<M::kDim>& x) { return exact(x, t); };
  if constexpr (std::is_same_v<M, Hsgn>) {
    const auto e = s.template l2_error_mapped<5>(ref, [](const State<6>& q) {
      return std::array<double, 5>{q[0], q[1] / q[0], q[2] / q[0], q[3] / q[0], q[4] / q[0]};
    });
    return {e.begin(), e.end()};
  } else {
    const auto e = s.l2_error(ref);
    return {e.begin(), e.end()};
  }
}

double cfl_of(const DomainSpec& d) { return d.cfl > 0.0 ? d.cfl : default_cfl(d.degree, d.dim()); }

std::string time_tag(double t) { return "t" + format_double(t); }

/// Shared step loop: clips every step to land on output times and t_end.
template <class DtFn, class StepFn, class SetTimeFn, class SampleFn, class DumpFn>
void time_loop(const RunConfig& c, double t0, DtFn dt_fn, StepFn step_fn, SetTimeFn set_time, SampleFn sample,
               DumpFn dump, RunReport& rep, const RunOptions& opt) {
  std::vector<double> stops;
  for (double t : c.output_times)
    if (t > t0 && t < c.t_end) stops.push_back(t);
  std::sort(stops.begin(), stops.end());
  stops.push_back(c.t_end);
  double t = t0;
  sample();
  for (double stop : stops) {
    while (t < stop) {
      double dt = dt_fn();
      const bool last = dt >= stop - t;
      if (last) dt = stop - t;
      step_fn(dt);
      t = last ? stop : t + dt;
      set_time(t);
      ++rep.steps;
      if (rep.steps % c.seismogram_stride == 0 || (last && stop == c.t_end)) sample();
      if (opt.progress) opt.progress(t, rep.steps);
    }
    if (stop < c.t_end) dump(stop);
  }
  rep.t_final = t;
}

template <HyperbolicModel M>
void write_fields(const Solver<M>& s, const RunConfig& c, const std::string& stem, const RunOptions& opt, RunReport& rep) {
  if (!opt.write_outputs) return;
  for (const auto& f : c.formats) {
    const auto path = opt.output_dir / (stem + "." + f);
    write_field(s, f, path);
    rep.files.push_back(path);
  }
}

void write_seismograms(const std::vector<Seismogram>& sgs, const std::string& prefix, const RunOptions& opt,
                       RunReport& rep) {
  if (!opt.write_outputs) return;
  for (const auto& sg : sgs) {
    const auto path = opt.output_dir / (prefix + "_" + sg.name + ".csv");
    write_text(path, sg.csv());
    rep.files.push_back(path);
  }
}

template <HyperbolicModel M>
std::vector<Seismogram> make_seismograms(const std::vector<Receiver>& rs) {
  std::vector<Seismogram> out;
  for (const auto& r : rs) out.push_back(make_seismogram<M>(r.name, r.x));
  return out;
}

template <HyperbolicModel M>
RunReport run_single(const RunConfig& c, Setup<M> setup, const RunOptions& opt) {
  RunReport rep;
  auto& s = *setup.solver;
  auto sgs = make_seismograms<M>(c.receivers);
  const double cfl = cfl_of(c.domain);
  const auto t0 = std::chrono::steady_clock::now();
  time_loop(
      c, 0.0, [&] { return s.stable_dt(cfl); }, [&](double dt) { s.step(dt); }, [&](double t) { s.set_time(t); },
      [&] {
        for (auto& sg : sgs) append_sample(sg, s);
      },
      [&](double t) { write_fields(s, c, c.name + "_" + time_tag(t), opt, rep); }, rep, opt);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_fields(s, c, c.name + "_final", opt, rep);
  write_seismograms(sgs, c.name, opt, rep);
  rep.seismograms = std::move(sgs);
  if (setup.exact) {
    rep.error_names = error_names<M>();
    rep.errors = errors_of(s, *setup.exact);
    if (opt.write_outputs) {
      std::string csv = "variable,l2_error\n";
      for (std::size_t i = 0; i < rep.errors.size(); ++i) csv += rep.error_names[i] + "," + format_double(rep.errors[i]) + "\n";
      const auto path = opt.output_dir / (c.name + "_errors.csv");
      write_text(path, csv);
      rep.files.push_back(path);
    }
  }
  return rep;
}

RunReport run_coupled(const RunConfig& c, const RunOptions& opt) {
  RunConfig fc = c;
  fc.scenario = c.scenario == "soliton_coupled" ? "soliton" : c.scenario == "sinusoidal_coupled" ? "sinusoidal" : "";
  if (fc.scenario.empty()) throw Error(ErrorKind::ConfigError, "unknown coupled scenario '" + c.scenario + "'");
  auto fluid = setup_hsgn(fc, c.fluid);
  const auto smesh = c.domain.mesh<3>();
  const ElasticMaterial m = ElasticMaterial::from_speeds(c.param("cp", 3200.0), c.param("cs", 1847.5), c.param("rho", 2200.0));
  Solver<Elastic3D> solid(Elastic3D{}, smesh, c.domain.degree, [m](const Vec<3>&) { return m; });
  CouplingOptions co;
  co.rho_w = c.rho_w;
  co.non_hydrostatic = c.non_hydrostatic;
  co.cfl_fluid = cfl_of(c.fluid);
  co.cfl_solid = cfl_of(c.domain);
  CoupledSystem sys(*fluid.solver, solid, co);

  RunReport rep;
  auto sgs = make_seismograms<Elastic3D>(c.receivers);
  auto fsgs = make_seismograms<Hsgn>(c.fluid_receivers);
  const auto t0 = std::chrono::steady_clock::now();
  time_loop(
      c, 0.0, [&] { return sys.candidate_dt(); }, [&](double dt) { sys.step(dt); },
      [&](double t) {
        solid.set_time(t);
        fluid.solver->set_time(t);
      },
      [&] {
        for (auto& sg : sgs) append_sample(sg, solid);
        for (auto& sg : fsgs) append_sample(sg, *fluid.solver);
      },
      [&](double t) {
        write_fields(solid, c, c.name + "_solid_" + time_tag(t), opt, rep);
        write_fields(*fluid.solver, c, c.name + "_fluid_" + time_tag(t), opt, rep);
      },
      rep, opt);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_fields(solid, c, c.name + "_solid_final", opt, rep);
  write_fields(*fluid.solver, c, c.name + "_fluid_final", opt, rep);
  write_seismograms(sgs, c.name + "_solid", opt, rep);
  write_seismograms(fsgs, c.name + "_fluid", opt, rep);
  rep.seismograms = std::move(sgs);
  rep.seismograms.insert(rep.seismograms.end(), fsgs.begin(), fsgs.end());
  return rep;
}

}  // namespace

RunReport run(const RunConfig& cfg, const RunOptions& opt) {
  cfg.validate();
  if (opt.write_outputs) {
    std::error_code ec;
    std::filesystem::create_directories(opt.output_dir, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create " + opt.output_dir.string() + ": " + ec.message());
  }
  if (cfg.model == "elastic2d") return run_single(cfg, setup_elastic2d(cfg), opt);
  if (cfg.model == "elastic3d") return run_single(cfg, setup_elastic3d(cfg), opt);
  if (cfg.model == "hsgn") {
    auto s = setup_hsgn(cfg, cfg.domain);
    auto rep = run_single(cfg, std::move(s), opt);
    return rep;
  }
  return run_coupled(cfg, opt);
}

RunConfig refine(const RunConfig& cfg, int n) {
  if (n < 1) throw Error(ErrorKind::ConfigError, "refinement level must be positive");
  RunConfig c = cfg;
  std::vector<int> axes = cfg.convergence_axes;
  if (axes.empty())
    for (int a = 0; a < cfg.domain.dim(); ++a) axes.push_back(a);
  for (int a : axes) c.domain.cells[a] = n;
  c.name = cfg.name + "_n" + std::to_string(n);
  return c;
}

ConvergenceReport run_convergence(const RunConfig& tmpl, const std::vector<int>& levels, const RunOptions& opt) {
  if (tmpl.coupled()) throw Error(ErrorKind::ConfigError, "convergence studies need a single-model config");
  ConvergenceReport out;
  std::vector<std::vector<double>> errs;
  for (int n : levels) {
    auto rep = run(refine(tmpl, n), opt);
    if (rep.errors.empty()) throw Error(ErrorKind::ConfigError, "scenario '" + tmpl.scenario + "' has no reference solution");
    out.names = rep.error_names;
    errs.push_back(rep.errors);
    out.runs.push_back(std::move(rep));
  }
  out.rows = convergence_table(tmpl.domain.degree, levels, errs);
  if (opt.write_outputs) {
    write_text(opt.output_dir / (tmpl.name + "_convergence.csv"), convergence_csv(out.rows, out.names));
    write_text(opt.output_dir / (tmpl.name + "_convergence.txt"), convergence_text(out.rows, out.names));
  }
  return out;
}

}  // namespace aderdg
