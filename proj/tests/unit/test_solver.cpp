#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "aderdg/dg/parallel.hpp"
#include "aderdg/dg/solver.hpp"
#include "aderdg/scenarios/elastic.hpp"
#include "aderdg/scenarios/hsgn.hpp"

using namespace aderdg;

namespace {

const ElasticMaterial kUnit{2, 1, 1};

Solver<Elastic2D> elastic(int n, int N) {
  return Solver<Elastic2D>(Elastic2D{}, CartesianMesh<2>({-1.5, -1.5}, {1.5, 1.5}, {n, n}), N,
                           [](const Vec<2>&) { return kUnit; });
}

}  // namespace

TEST(TimeStep, CflFormula) {
  EXPECT_NEAR(cfl_time_step(0.45, 0.1, 3, 2.0), 0.45 * 0.1 / 14.0, 1e-18);
  EXPECT_DOUBLE_EQ(cfl_time_step(0.9, 1.0, 0, 1.0), 0.9);
  try {
    cfl_time_step(0.5, 1.0, 3, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroSignalSpeed);
  }
}

TEST(TimeStep, DefaultCflRespectsOneOverD) {
  for (int N = 0; N <= 7; ++N)
    for (int d = 1; d <= 3; ++d) {
      EXPECT_GT(default_cfl(N, d), 0.0);
      EXPECT_LT(default_cfl(N, d), 1.0 / d);
    }
  EXPECT_THROW(default_cfl(8, 2), Error);
}

TEST(TimeStep, SolitonIsBoundedBySoundSpeed) {
  HsgnParams p;
  const auto prof = SolitonProfile::build(0.2, p);
  Solver<Hsgn> s(Hsgn(p), CartesianMesh<2>({-50, -1}, {50, 1}, {40, 2}), 3);
  s.set_state([&](const Vec<2>& x) { return soliton_state(prof, x[0], 0, 0, 100); });
  EXPECT_GE(s.max_signal_speed(), 20.0);
  EXPECT_LE(s.stable_dt(0.2), 0.2 * 2.5 / (20.0 * 7));
}

TEST(Predictor, ConstantStateIsAFixedPoint) {
  auto s = elastic(2, 3);
  s.set_state([](const Vec<2>&) { return State<5>{1, 2, 3, 4, 5}; });
  std::vector<double> q;
  const auto rep = s.predict(0, 0.01, PicardOptions{}, q);
  EXPECT_EQ(rep.iterations, 1);
  EXPECT_TRUE(rep.converged);
  for (std::size_t i = 0; i < q.size(); ++i) EXPECT_DOUBLE_EQ(q[i], static_cast<double>(i % 5 + 1));
}

TEST(Predictor, FlatLakeIsConstantInTime) {
  Solver<Hsgn> s(Hsgn{}, CartesianMesh<2>({0, 0}, {1, 1}, {2, 2}), 4);
  s.set_state([](const Vec<2>&) { return lake_at_rest(1.0, 0.0); });
  std::vector<double> q;
  s.predict(3, 1e-3, PicardOptions{}, q);
  const double* u = s.element_dofs(3);
  const std::size_t n = static_cast<std::size_t>(s.nodes_per_element()) * Hsgn::kVars;
  for (std::size_t i = 0; i < q.size(); ++i) EXPECT_NEAR(q[i], u[i % n], 1e-15);
}

TEST(Predictor, TensorElementsNeedDNPlusOneSweeps) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int N = 1; N <= 5; ++N) {
    auto s = elastic(3, N);
    for (auto& v : s.dofs()) v = U(rng);
    const double dt = s.stable_dt(default_cfl(N, 2));
    PicardOptions opt;
    opt.fixed = true;
    opt.max_iterations = default_picard_cap(true, N, 2);
    ASSERT_EQ(opt.max_iterations, 2 * N + 1);
    std::vector<double> q;
    for (std::size_t e = 0; e < s.num_elements(); ++e) {
      s.predict(e, dt, opt, q);
      EXPECT_LT(s.fixed_point_residual(e, dt, q), 1e-13) << "N=" << N;
    }
  }
}

TEST(Predictor, TotalDegreeDataConvergesInNPlusOneSweeps) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int N = 1; N <= 5; ++N) {
    auto s = elastic(3, N);
    std::vector<std::array<double, 5>> c(static_cast<std::size_t>((N + 1) * (N + 2) / 2));
    for (auto& r : c)
      for (auto& x : r) x = U(rng);
    s.set_state([&](const Vec<2>& x) {
      State<5> q{};
      std::size_t i = 0;
      for (int a = 0; a <= N; ++a)
        for (int b = 0; a + b <= N; ++b, ++i)
          for (int v = 0; v < 5; ++v) q[v] += c[i][v] * std::pow(x[0], a) * std::pow(x[1], b);
      return q;
    });
    PicardOptions opt;
    opt.fixed = true;
    opt.max_iterations = N + 1;
    std::vector<double> q;
    const double dt = s.stable_dt(default_cfl(N, 2));
    for (std::size_t e = 0; e < s.num_elements(); ++e) {
      s.predict(e, dt, opt, q);
      EXPECT_LT(s.fixed_point_residual(e, dt, q), 1e-12) << "N=" << N;
    }
  }
}

TEST(Corrector, FreeStreamPreservation3D) {
  Solver<Elastic3D> s(Elastic3D{}, CartesianMesh<3>({0, 0, 0}, {1, 1, 1}, {3, 3, 3}), 2,
                      [](const Vec<3>&) { return ElasticMaterial::rock(); });
  const State<9> q0{1e5, -2e5, 3e5, 4e4, 5e4, -6e4, 0.1, -0.2, 0.3};
  s.set_state([&](const Vec<3>&) { return q0; });
  const auto start = s.dofs();
  const double dt = s.stable_dt(default_cfl(2, 3));
  for (int i = 0; i < 10; ++i) s.step(dt);
  for (std::size_t i = 0; i < start.size(); ++i) EXPECT_NEAR(s.dofs()[i], start[i], 1e-13 * 3e5);
}

TEST(Corrector, FlatLakeStaysAtRest) {
  Solver<Hsgn> s(Hsgn{}, CartesianMesh<2>({0, 0}, {4, 4}, {4, 4}), 3);
  s.set_state([](const Vec<2>&) { return lake_at_rest(1.0, 0.0); });
  const double dt = s.stable_dt(default_cfl(3, 2));
  for (int i = 0; i < 100; ++i) s.step(dt);
  for (std::size_t k = 0; k < s.dofs().size(); k += 6) {
    EXPECT_NEAR(s.dofs()[k], 1.0, 1e-12);
    for (int v = 1; v <= 4; ++v) EXPECT_LT(std::abs(s.dofs()[k + v]), 1e-12);
  }
}

TEST(Corrector, ConservesMassOnPeriodicDomain) {
  HsgnParams p;
  const auto prof = SolitonProfile::build(0.2, p);
  Solver<Hsgn> s(Hsgn(p), CartesianMesh<2>({-50, -1}, {50, 1}, {40, 2}), 3);
  s.set_state([&](const Vec<2>& x) { return soliton_state(prof, x[0], 0, 0, 100); });
  const auto m0 = s.integral();
  const double dt = s.stable_dt(default_cfl(3, 2));
  for (int i = 0; i < 20; ++i) s.step(dt);
  const auto m1 = s.integral();
  EXPECT_NEAR(m1[0], m0[0], 1e-12 * m0[0]);
  EXPECT_NEAR(m1[2], m0[2], 1e-10);
}

TEST(Corrector, ThreadCountDoesNotChangeResult) {
  auto run = [](int threads) {
    set_threads(threads);
    PsWave ps;
    auto s = elastic(6, 3);
    s.set_state([&](const Vec<2>& x) { return ps.initial(x); });
    const double dt = s.stable_dt(default_cfl(3, 2));
    for (int i = 0; i < 5; ++i) s.step(dt);
    return s.dofs();
  };
  const int before = max_threads();
  const auto a = run(1), b = run(3);
  set_threads(before);
  ASSERT_EQ(a.size(), b.size());
  EXPECT_EQ(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)), 0);
}

TEST(Corrector, PointSourceInjectsItsTimeIntegral) {
  auto s = elastic(4, 3);
  s.set_state([](const Vec<2>&) { return State<5>{}; });
  s.add_point_source({{0.1, -0.2}, [](double t) { return State<5>{0, 0, 0, 0, 3.0 * t * t}; }});
  const double dt = 0.01;
  s.step(dt);
  s.step(dt);
  // the source sits inside one element, so the integral of v gains int_0^2dt 3 t^2 = (2dt)^3
  EXPECT_NEAR(s.integral()[4], std::pow(2 * dt, 3), 1e-15);
}

TEST(Corrector, RejectsNonPositiveStep) {
  auto s = elastic(2, 1);
  EXPECT_THROW(s.step(0.0), Error);
}

TEST(Corrector, PlaneWaveConvergesAtDesignOrder) {
  PsWave ps;
  auto err = [&](int n) {
    auto s = elastic(n, 3);
    s.set_state([&](const Vec<2>& x) { return ps.initial(x); });
    const double T = 0.25;
    while (s.time() < T) s.step(std::min(s.stable_dt(default_cfl(3, 2)), T - s.time()));
    return s.l2_error([&](const Vec<2>& x) { return ps.exact(x, T); });
  };
  const auto a = err(6), b = err(12);
  for (int v = 0; v < 5; ++v) EXPECT_GT(std::log2(a[v] / b[v]), 3.5) << v;
}

TEST(Evaluation, LinearFieldIsReproduced) {
  auto s = elastic(3, 2);
  auto f = [](const Vec<2>& x) { return State<5>{1 + 2 * x[0] - x[1], 0, 0, 0.5 * x[0] * x[1], 0}; };
  s.set_state(f);
  for (const Vec<2> x : {Vec<2>{0.1, 0.2}, Vec<2>{-1.4, 1.3}, Vec<2>{0.5, 0.5}}) {
    const auto q = s.evaluate(x);
    EXPECT_NEAR(q[0], f(x)[0], 1e-13);
    EXPECT_NEAR(q[3], f(x)[3], 1e-13);
  }
}

TEST(Evaluation, FacePointUsesLowerElement) {
  auto s = elastic(2, 1);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1, 1);
  for (auto& v : s.dofs()) v = U(rng);
  const auto q = s.evaluate({0.0, -0.75});  // shared face between cells (0,0) and (1,0)
  const auto lower = s.evaluate_in(0, {1.0, 0.5});
  const auto upper = s.evaluate_in(1, {0.0, 0.5});
  for (int v = 0; v < 5; ++v) EXPECT_NEAR(q[v], lower[v], 1e-14);
  EXPECT_NE(q[0], upper[0]);
}

TEST(L2Error, SelfAndConstantOffset) {
  PsWave ps;
  auto s = elastic(4, 3);
  s.set_state([&](const Vec<2>& x) { return ps.initial(x); });
  auto projected = [&](const Vec<2>& x) { return s.evaluate(x); };
  for (double e : s.l2_error(projected)) EXPECT_LT(e, 1e-14);
  const double delta = 0.25;
  auto shifted = [&](const Vec<2>& x) {
    auto q = s.evaluate(x);
    for (auto& v : q) v -= delta;
    return q;
  };
  for (double e : s.l2_error(shifted)) EXPECT_NEAR(e, delta * 3.0, 1e-12);
}
