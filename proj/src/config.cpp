#include "aderdg/io/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "aderdg/dg/solver.hpp"
#include "aderdg/error.hpp"

namespace aderdg {

namespace pt = boost::property_tree;

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<std::string> parts;
  boost::split(parts, s, boost::is_any_of(","));
  std::vector<double> out;
  for (auto p : parts) {
    boost::trim(p);
    if (p.empty()) continue;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), v);
    if (ec != std::errc() || ptr != p.data() + p.size())
      throw Error(ErrorKind::ConfigError, "not a number: '" + p + "'");
    out.push_back(v);
  }
  return out;
}

namespace {

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (double v : parse_doubles(s)) {
    if (v != static_cast<int>(v)) throw Error(ErrorKind::ConfigError, "expected an integer list: " + s);
    out.push_back(static_cast<int>(v));
  }
  return out;
}

double to_double(const std::string& key, const std::string& s) {
  const auto v = parse_doubles(s);
  if (v.size() != 1) throw Error(ErrorKind::ConfigError, "key '" + key + "' expects one number");
  return v[0];
}

bool to_bool(const std::string& s) {
  const auto v = boost::algorithm::to_lower_copy(boost::trim_copy(s));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw Error(ErrorKind::ConfigError, "not a boolean: '" + s + "'");
}

BoundaryKind boundary(const std::string& s) {
  try {
    return boundary_kind_from_string(boost::trim_copy(s));
  } catch (const Error& e) {
    throw Error(ErrorKind::ConfigError, e.what());
  }
}

DomainSpec parse_domain(const pt::ptree& sec, const std::string& name) {
  DomainSpec d;
  auto need = [&](const char* key) {
    auto v = sec.get_optional<std::string>(key);
    if (!v) throw Error(ErrorKind::ConfigError, "[" + name + "] needs key '" + key + "'");
    return *v;
  };
  d.lo = parse_doubles(need("lo"));
  d.hi = parse_doubles(need("hi"));
  d.cells = parse_ints(need("cells"));
  if (d.cells.size() < 2 || d.cells.size() > 3 || d.lo.size() != d.cells.size() || d.hi.size() != d.cells.size())
    throw Error(ErrorKind::ConfigError, "[" + name + "] lo, hi and cells must all have 2 or 3 entries");
  d.degree = static_cast<int>(to_double("degree", sec.get<std::string>("degree", "3")));
  d.cfl = to_double("cfl", sec.get<std::string>("cfl", "0"));
  const BoundaryKind all = boundary(sec.get<std::string>("boundary", "periodic"));
  static constexpr const char* kAxes[] = {"x", "y", "z"};
  for (int a = 0; a < 3; ++a) {
    BoundaryKind k = all;
    if (auto v = sec.get_optional<std::string>(std::string("boundary_") + kAxes[a])) k = boundary(*v);
    d.boundaries[a] = {k, k};
    if (auto v = sec.get_optional<std::string>(std::string("boundary_") + kAxes[a] + "_low")) d.boundaries[a][0] = boundary(*v);
    if (auto v = sec.get_optional<std::string>(std::string("boundary_") + kAxes[a] + "_high")) d.boundaries[a][1] = boundary(*v);
  }
  return d;
}

std::vector<Receiver> parse_receivers(const pt::ptree& root, const char* section) {
  std::vector<Receiver> out;
  if (auto sec = root.get_child_optional(section))
    for (const auto& [key, val] : *sec) out.push_back({key, parse_doubles(val.data())});
  return out;
}

}  // namespace

template <int D>
CartesianMesh<D> DomainSpec::mesh() const {
  if (dim() != D) throw Error(ErrorKind::ConfigError, "domain has " + std::to_string(dim()) + " axes, expected " + std::to_string(D));
  Vec<D> l{}, h{};
  std::array<int, D> c{};
  for (int d = 0; d < D; ++d) {
    l[d] = lo[d];
    h[d] = hi[d];
    c[d] = cells[d];
  }
  try {
    CartesianMesh<D> m(l, h, c);
    for (int d = 0; d < D; ++d)
      for (int s = 0; s < 2; ++s) m.set_boundary(d, s, boundaries[d][s]);
    m.check_boundaries();
    return m;
  } catch (const Error& e) {
    throw Error(ErrorKind::ConfigError, e.what());
  }
}

template CartesianMesh<2> DomainSpec::mesh<2>() const;
template CartesianMesh<3> DomainSpec::mesh<3>() const;

RunConfig RunConfig::parse(const std::string& text) {
  pt::ptree root;
  std::istringstream in(text);
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::ConfigError, e.what());
  }
  RunConfig c;
  const auto run = root.get_child_optional("run");
  if (!run) throw Error(ErrorKind::ConfigError, "missing [run] section");
  c.name = run->get<std::string>("name", "run");
  c.model = boost::trim_copy(run->get<std::string>("model", ""));
  c.scenario = boost::trim_copy(run->get<std::string>("scenario", ""));
  c.t_end = to_double("t_end", run->get<std::string>("t_end", "0"));
  c.output_times = parse_doubles(run->get<std::string>("output_times", ""));
  c.seismogram_stride = static_cast<int>(to_double("seismogram_stride", run->get<std::string>("seismogram_stride", "1")));
  c.convergence_axes = parse_ints(run->get<std::string>("convergence_axes", ""));
  {
    std::vector<std::string> f;
    const auto s = run->get<std::string>("formats", "csv");
    boost::split(f, s, boost::is_any_of(","));
    c.formats.clear();
    for (auto& x : f)
      if (!boost::trim_copy(x).empty()) c.formats.push_back(boost::trim_copy(x));
  }
  if (c.coupled()) {
    const auto fl = root.get_child_optional("fluid");
    const auto so = root.get_child_optional("solid");
    if (!fl || !so) throw Error(ErrorKind::ConfigError, "coupled runs need [fluid] and [solid] sections");
    c.fluid = parse_domain(*fl, "fluid");
    c.domain = parse_domain(*so, "solid");
  } else {
    const auto m = root.get_child_optional("mesh");
    if (!m) throw Error(ErrorKind::ConfigError, "missing [mesh] section");
    c.domain = parse_domain(*m, "mesh");
  }
  if (auto sc = root.get_child_optional("scenario"))
    for (const auto& [k, v] : *sc) c.params[k] = v.data();
  c.receivers = parse_receivers(root, "receivers");
  c.fluid_receivers = parse_receivers(root, "fluid_receivers");
  if (auto cp = root.get_child_optional("coupling")) {
    c.rho_w = to_double("rho_w", cp->get<std::string>("rho_w", "1000"));
    c.non_hydrostatic = to_bool(cp->get<std::string>("non_hydrostatic", "false"));
  }
  c.validate();
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void RunConfig::validate() const {
  static const char* kModels[] = {"hsgn", "elastic2d", "elastic3d", "coupled"};
  if (std::find(std::begin(kModels), std::end(kModels), model) == std::end(kModels))
    throw Error(ErrorKind::ConfigError, "unknown model '" + model + "'");
  if (!(t_end >= 0.0)) throw Error(ErrorKind::ConfigError, "t_end must be non-negative");
  if (seismogram_stride < 1) throw Error(ErrorKind::ConfigError, "seismogram_stride must be at least 1");
  for (const auto& f : formats)
    if (f != "csv" && f != "vtk") throw Error(ErrorKind::ConfigError, "unknown output format '" + f + "'");
  const int want = model == "hsgn" || model == "elastic2d" ? 2 : 3;
  if (domain.dim() != want) throw Error(ErrorKind::ConfigError, "model " + model + " needs a " + std::to_string(want) + "D mesh");
  if (coupled() && fluid.dim() != 2) throw Error(ErrorKind::ConfigError, "the fluid mesh must be 2D");
  auto check_domain = [](const DomainSpec& d, const std::string& what) {
    if (d.degree < 0 || d.degree > kMaxDegree)
      throw Error(ErrorKind::ConfigError, what + " degree must lie in [0, " + std::to_string(kMaxDegree) + "]");
    if (d.cfl < 0.0 || d.cfl >= 1.0 / d.dim())
      throw Error(ErrorKind::ConfigError, what + " cfl must satisfy 0 < cfl < 1/d (0 selects the default)");
    for (int a = 0; a < d.dim(); ++a)
      if (d.cells[a] < 1 || !(d.hi[a] > d.lo[a])) throw Error(ErrorKind::ConfigError, what + " has an empty axis");
  };
  check_domain(domain, coupled() ? "solid" : "mesh");
  if (coupled()) check_domain(fluid, "fluid");
  for (int a : convergence_axes)
    if (a < 0 || a >= domain.dim()) throw Error(ErrorKind::ConfigError, "convergence axis out of range");
  auto inside = [](const DomainSpec& d, const Receiver& r, const std::string& what) {
    if (static_cast<int>(r.x.size()) != d.dim())
      throw Error(ErrorKind::ConfigError, what + " receiver " + r.name + " has the wrong dimension");
    for (int a = 0; a < d.dim(); ++a)
      if (r.x[a] < d.lo[a] || r.x[a] > d.hi[a])
        throw Error(ErrorKind::ConfigError, what + " receiver " + r.name + " lies outside the domain");
  };
  for (const auto& r : receivers) inside(domain, r, coupled() ? "solid" : "mesh");
  for (const auto& r : fluid_receivers) inside(coupled() ? fluid : domain, r, "fluid");
  if (rho_w <= 0.0) throw Error(ErrorKind::ConfigError, "rho_w must be positive");
}

double RunConfig::param(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : to_double(key, it->second);
}

std::vector<double> RunConfig::param_list(const std::string& key, std::vector<double> fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : parse_doubles(it->second);
}

std::string RunConfig::param_string(const std::string& key, const std::string& fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : boost::trim_copy(it->second);
}

}  // namespace aderdg
