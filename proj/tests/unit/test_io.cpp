#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "aderdg/io/config.hpp"
#include "aderdg/io/output.hpp"
#include "aderdg/io/runner.hpp"

using namespace aderdg;
namespace fs = std::filesystem;

namespace {

const char* kPsWave = R"(
[run]
name = ps
model = elastic2d
scenario = pswave
t_end = 0.05
formats = csv

[mesh]
lo = -1.5, -1.5
hi = 1.5, 1.5
cells = 4, 4
degree = 2
boundary = periodic

[scenario]
lambda = 2
mu = 1
rho = 1

[receivers]
r1 = 0.1, 0.2
)";

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("aderdg_io_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST(ParseDoubles, ListsAndErrors) {
  EXPECT_EQ(parse_doubles("1, 2.5,-3"), (std::vector<double>{1, 2.5, -3}));
  EXPECT_TRUE(parse_doubles("").empty());
  EXPECT_EQ(kind_of([] { parse_doubles("1, x"); }), ErrorKind::ConfigError);
}

TEST(Config, ParsesTheSingleDomainLayout) {
  const auto c = RunConfig::parse(kPsWave);
  EXPECT_EQ(c.name, "ps");
  EXPECT_EQ(c.model, "elastic2d");
  EXPECT_DOUBLE_EQ(c.t_end, 0.05);
  EXPECT_EQ(c.domain.cells, (std::vector<int>{4, 4}));
  EXPECT_EQ(c.domain.degree, 2);
  EXPECT_EQ(c.domain.boundaries[0][1], BoundaryKind::Periodic);
  ASSERT_EQ(c.receivers.size(), 1u);
  EXPECT_EQ(c.receivers[0].x, (std::vector<double>{0.1, 0.2}));
  EXPECT_DOUBLE_EQ(c.param("mu", 0.0), 1.0);
  EXPECT_DOUBLE_EQ(c.param("missing", 7.0), 7.0);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, PerAxisBoundaryOverrides) {
  std::string text = kPsWave;
  text.replace(text.find("boundary = periodic"), 19, "boundary = periodic\nboundary_x = dirichlet\nboundary_y_high = free_surface");
  const auto c = RunConfig::parse(text);
  EXPECT_EQ(c.domain.boundaries[0][0], BoundaryKind::Dirichlet);
  EXPECT_EQ(c.domain.boundaries[0][1], BoundaryKind::Dirichlet);
  EXPECT_EQ(c.domain.boundaries[1][0], BoundaryKind::Periodic);
  EXPECT_EQ(c.domain.boundaries[1][1], BoundaryKind::FreeSurface);
}

TEST(Config, RejectsBrokenFiles) {
  EXPECT_EQ(kind_of([] { RunConfig::parse("[mesh]\ncells = 2, 2\n"); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { RunConfig::parse("[run]\nmodel = hsgn\n"); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { RunConfig::load("/nonexistent/x.ini"); }), ErrorKind::ConfigError);
  auto bad = [](const std::string& from, const std::string& to) {
    std::string t = kPsWave;
    t.replace(t.find(from), from.size(), to);
    return RunConfig::parse(t);
  };
  EXPECT_EQ(kind_of([&] { bad("model = elastic2d", "model = maxwell").validate(); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([&] { bad("degree = 2", "degree = 9").validate(); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([&] { bad("r1 = 0.1, 0.2", "r1 = 7, 0").validate(); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([&] { bad("t_end = 0.05", "t_end = -1").validate(); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([&] { bad("formats = csv", "formats = hdf5").validate(); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([&] { bad("cells = 4, 4", "cells = 4, 4, 4").validate(); }), ErrorKind::ConfigError);
}

TEST(Config, ShippedConfigsValidate) {
  for (const auto& e : fs::directory_iterator(ADERDG_CONFIG_DIR)) {
    if (e.path().extension() != ".ini") continue;
    EXPECT_NO_THROW(RunConfig::load(e.path()).validate()) << e.path();
  }
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-2.0), "-2");
  for (double v : {M_PI, 1e-300, 6.02214076e23, -0.3}) EXPECT_EQ(std::stod(format_double(v)), v);
}

TEST(FieldCsv, ConstantStateOnTwoByTwo) {
  Solver<Elastic2D> s(Elastic2D{}, CartesianMesh<2>({0, 0}, {2, 2}, {2, 2}), 0,
                      [](const Vec<2>&) { return ElasticMaterial{2, 1, 1}; });
  s.set_state([](const Vec<2>&) { return State<5>{1, 2, 3, 4, 5}; });
  std::istringstream in(field_csv(s));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,y,sxx,syy,sxy,u,v");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  EXPECT_EQ(rows, (std::vector<std::string>{"0.5,0.5,1,2,3,4,5", "1.5,0.5,1,2,3,4,5", "0.5,1.5,1,2,3,4,5",
                                            "1.5,1.5,1,2,3,4,5"}));
}

TEST(Convergence, OrdersFromErrorTables) {
  EXPECT_NEAR(observed_order(1e-2, 6.25e-4, 10, 20), 4.0, 1e-12);
  // u column of the reference N = 3 p/s-wave convergence table
  EXPECT_NEAR(observed_order(1.18e-2, 2.24e-3, 10, 15), 4.10, 5e-3);
  const auto one = convergence_table(3, {10}, {{1e-2, 2e-2}});
  ASSERT_EQ(one.size(), 1u);
  for (const auto& o : one[0].orders) EXPECT_FALSE(o.has_value());
  const auto two = convergence_table(3, {10, 20}, {{1e-2, 2e-2}, {6.25e-4, 1.25e-3}});
  ASSERT_EQ(two.size(), 2u);
  EXPECT_NEAR(*two[1].orders[0], 4.0, 1e-12);
  EXPECT_NEAR(*two[1].orders[1], 4.0, 1e-12);
  const auto csv = convergence_csv(two, {"a", "b"});
  EXPECT_NE(csv.find("a"), std::string::npos);
  EXPECT_NE(convergence_text(two, {"a", "b"}).find("4.0"), std::string::npos);
}

TEST(CompareCsv, ShapeAndDifference) {
  EXPECT_TRUE(compare_csv("t,u\n0,1\n1,2\n", "t,u\n0,1\n1,2\n").within(0.0));
  const auto d = compare_csv("t,u\n0,1\n1,2\n", "t,u\n0,1\n1,2.5\n");
  EXPECT_TRUE(d.equal_shape);
  EXPECT_DOUBLE_EQ(d.max_abs_diff, 0.5);
  EXPECT_FALSE(d.within(0.1));
  EXPECT_FALSE(compare_csv("t,u\n0,1\n", "t,u\n0,1\n1,2\n").equal_shape);
  EXPECT_FALSE(compare_csv("t,u\n0,1\n", "t,v\n0,1\n").equal_shape);
}

TEST(Runner, RefineRenamesAndScalesAxes) {
  auto c = RunConfig::parse(kPsWave);
  const auto r = refine(c, 8);
  EXPECT_EQ(r.name, "ps_n8");
  EXPECT_EQ(r.domain.cells, (std::vector<int>{8, 8}));
  c.convergence_axes = {0};
  EXPECT_EQ(refine(c, 8).domain.cells, (std::vector<int>{8, 4}));
  EXPECT_EQ(kind_of([&] { refine(c, 0); }), ErrorKind::ConfigError);
}

TEST(Runner, LandsExactlyOnFinalTime) {
  RunOptions opt;
  opt.write_outputs = false;
  const auto rep = run(RunConfig::parse(kPsWave), opt);
  EXPECT_EQ(rep.t_final, 0.05);
  EXPECT_GT(rep.steps, 1);
  ASSERT_EQ(rep.seismograms.size(), 1u);
  EXPECT_EQ(rep.seismograms[0].times.back(), 0.05);
  EXPECT_EQ(rep.errors.size(), 5u);
}

TEST(Runner, ZeroEndTimeTakesNoSteps) {
  auto c = RunConfig::parse(kPsWave);
  c.t_end = 0.0;
  RunOptions opt;
  opt.write_outputs = false;
  const auto rep = run(c, opt);
  EXPECT_EQ(rep.steps, 0);
  EXPECT_EQ(rep.t_final, 0.0);
  EXPECT_EQ(rep.errors.size(), 5u);
}

TEST(Runner, RepeatedRunsWriteIdenticalBytes) {
  const auto c = RunConfig::parse(kPsWave);
  RunOptions a, b;
  a.output_dir = scratch_dir("a");
  b.output_dir = scratch_dir("b");
  const auto ra = run(c, a);
  const auto rb = run(c, b);
  ASSERT_EQ(ra.files.size(), rb.files.size());
  ASSERT_FALSE(ra.files.empty());
  for (std::size_t i = 0; i < ra.files.size(); ++i) {
    EXPECT_EQ(ra.files[i].filename(), rb.files[i].filename());
    EXPECT_EQ(slurp(ra.files[i]), slurp(rb.files[i])) << ra.files[i];
  }
  fs::remove_all(a.output_dir);
  fs::remove_all(b.output_dir);
}
