#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "strip/config.hpp"
#include "strip/harness.hpp"
#include "strip/report.hpp"
#include "test_support.hpp"

namespace strip {
namespace {

using testing::kPi;

const char* kSmallConfig = R"(
[grid]
nx = 16
ny = 33
[run]
dt = 1e-3
t_end = 0.05
eps_list = 0.2, 0.1, 0.05
norm_every = 5
[initial]
delta = 1e-2
k0 = 1
a = 0.5
[tracker]
lambda = 4
mu = 16
)";

TEST(Config, ParsesAllSections) {
  const RunConfig cfg = parse_config_string(kSmallConfig);
  EXPECT_EQ(cfg.grid.nx, 16);
  EXPECT_EQ(cfg.grid.ny, 33);
  EXPECT_EQ(cfg.eps_list, (std::vector<double>{0.2, 0.1, 0.05}));
  EXPECT_EQ(cfg.norm_every, 5);
  const RunConfig single = parse_config_string("[ans]\neps = 0.3\n");
  EXPECT_EQ(single.eps_list, std::vector<double>{0.3});
}

TEST(Config, RejectsBadInput) {
  for (const char* text : {"[grid]\nnz = 4\n", "[bogus]\nx = 1\n", "nx = 4\n", "[run]\neps_list = 0.1, 0.2\n",
                           "[run]\neps_list = 0.5, 1.5\n", "[run]\ndt = abc\n", "[run]\neps = 0.1\neps_list = 0.1\n",
                           "[tracker]\nlambda = 4\nmu = 1\n", "[grid]\nnx = 7\n", "[run]\ndt = -1\n"}) {
    EXPECT_THROW(parse_config_string(text), ValidationError) << text;
  }
  try {
    load_config("/nonexistent/missing.cfg");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("missing.cfg"), std::string::npos);
  }
}

TEST(Config, InitialDataIsCompatible) {
  const RunConfig cfg = parse_config_string(kSmallConfig);
  const SpectralField u0 = initial_data(cfg);
  EXPECT_EQ(u0.wall_magnitude(), 0.0);
  EXPECT_LT(compatibility_defect(u0), 1e-15);
  const PhysicalField f = inverse_transform(u0);
  EXPECT_NEAR(f(0, 4), 1e-2 * std::sin(2 * kPi * cfg.grid.y(4)), 1e-16);
}

TEST(Fit, PowerLaws) {
  std::vector<ConvergenceRow> rows;
  for (double e : {0.2, 0.1, 0.05, 0.025}) rows.push_back({e, 3 * e});
  FitResult f = fit_convergence(rows);
  EXPECT_NEAR(f.slope, 1.0, 1e-10);
  EXPECT_LE(f.residual, 1e-10);
  for (auto& r : rows) r.e_half = r.eps * r.eps;
  EXPECT_NEAR(fit_convergence(rows).slope, 2.0, 1e-10);
  rows[1].e_half = 0.0;
  f = fit_convergence(rows);
  EXPECT_EQ(f.used, 3u);
  EXPECT_EQ(f.excluded, 1u);
  rows[2].e_half = 0.0;
  EXPECT_THROW(fit_convergence(rows), ValidationError);
}

TEST(Fit, Decay) {
  std::vector<double> t, v;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(0.01 * i);
    v.push_back(5 * std::exp(-2 * t.back()));
  }
  EXPECT_NEAR(fit_decay(t, v, 0.3, 1.0), 2.0, 1e-6);
  EXPECT_THROW(fit_decay(t, v, 0.3, 2.0), ValidationError);
  v[50] = 0.0;
  EXPECT_THROW(fit_decay(t, v, 0.3, 1.0), ValidationError);
}

TEST(ErrorFields, LinearityAndTimeCheck) {
  const Grid g(16, 33);
  const RunConfig cfg = parse_config_string(kSmallConfig);
  const ANSState a = initial_data_scaled(initial_data(cfg), 0.1);
  const HydroState h = initial_hydro_state(initial_data(cfg));
  ErrorFields e = error_fields(a, h, 1e-3);
  EXPECT_EQ(e.w1.max_abs(), 0.0);
  EXPECT_EQ(e.w2.max_abs(), 0.0);

  ANSState shifted = a;
  const SpectralField bump = testing::spectral(g, [](double x, double y) { return std::sin(2 * x) * y * (1 - y); });
  shifted.u += bump;
  e = error_fields(shifted, h, 1e-3);
  EXPECT_LT((e.w1 - bump).max_abs(), 1e-15);
  shifted.t = 0.01;
  EXPECT_THROW(error_fields(shifted, h, 1e-3), ValidationError);
}

TEST(Remainder, ExplicitEpsSquaredScaling) {
  const RunConfig cfg = parse_config_string(kSmallConfig);
  HydroConfig hcfg;
  hcfg.grid = cfg.grid;
  hcfg.dt = cfg.dt;
  std::vector<HydroState> hist{initial_hydro_state(initial_data(cfg))};
  for (int n = 0; n < 10; ++n) hist.push_back(step_hydro(hist.back(), hcfg));
  const RemainderReport a = remainder_norms(hist, 0.1);
  const RemainderReport b = remainder_norms(hist, 0.05);
  EXPECT_NEAR(b.r1 / a.r1, 0.25, 0.0125);
  EXPECT_NEAR(b.r2 / a.r2, 0.25, 0.0125);
  EXPECT_LE(a.r2, 0.01 * a.bracket * (1 + 1e-12));

  std::vector<HydroState> flat{initial_hydro_state(
      testing::spectral(cfg.grid, [](double, double y) { return std::sin(kPi * y); }))};
  flat.push_back(step_hydro(flat.back(), hcfg));
  EXPECT_LT(remainder_norms(flat, 0.1).r1, 1e-15);
}

TEST(Reports, ConvergenceCsvRoundTripIsBitExact) {
  const std::vector<ConvergenceRow> rows = {{0.2, 1.0 / 3.0, 2e-7 / 7.0, std::sqrt(2.0)},
                                            {0.1, 6.25e-6, 1.57e-6 * kPi, 1e-300}};
  std::stringstream ss;
  write_convergence_csv(ss, rows);
  const auto back = read_convergence_csv(ss);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].eps, rows[i].eps);
    EXPECT_EQ(back[i].e_half, rows[i].e_half);
    EXPECT_EQ(back[i].e_dy, rows[i].e_dy);
    EXPECT_EQ(back[i].e_three_half, rows[i].e_three_half);
  }
  std::stringstream bad("eps,E\n1,2\n");
  EXPECT_THROW(read_convergence_csv(bad), ValidationError);
}

TEST(Reports, NormCsvHeader) {
  std::stringstream ss;
  write_norm_csv(ss, {NormRow{}});
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header.rfind("time,s,besov_norm,eta,theta,zeta,radius_estimate", 0), 0u);
}

TEST(Sweep, ThreadCapFromEnvironment) {
  ::setenv("STRIP_HYDRO_THREADS", "2", 1);
  EXPECT_EQ(sweep_threads(4), 2u);
  EXPECT_EQ(sweep_threads(1), 1u);
  ::setenv("STRIP_HYDRO_THREADS", "zero", 1);
  EXPECT_THROW(sweep_threads(4), ValidationError);
  ::unsetenv("STRIP_HYDRO_THREADS");
}

TEST(Sweep, SmallSweepIsMonotoneAndSorted) {
  RunConfig cfg = parse_config_string(kSmallConfig);
  const SweepReport r = run_sweep(cfg);
  ASSERT_EQ(r.rows.size(), 3u);
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    EXPECT_GT(r.rows[i - 1].eps, r.rows[i].eps);
    EXPECT_GT(r.rows[i - 1].e_half, r.rows[i].e_half);
    EXPECT_GT(r.pairs[i - 1].l2_w1, r.pairs[i].l2_w1);
  }
  EXPECT_GT(r.pairs.back().l2_w1, 0.0);
  for (const auto& p : r.pairs) EXPECT_TRUE(p.alive);
  EXPECT_TRUE(std::isfinite(r.fit.slope));
  EXPECT_NE(sweep_summary_json(r).find("\"slope\""), std::string::npos);
}

TEST(Tracked, RunsProduceRows) {
  RunConfig cfg = parse_config_string(kSmallConfig);
  int checkpoints = 0;
  const TrackedRun a =
      run_tracked_ans(cfg, 0.1, 25, [&](const SpectralField&, const SpectralField&, long) { ++checkpoints; });
  EXPECT_EQ(a.norms.size(), 11u);
  EXPECT_EQ(checkpoints, 3);
  EXPECT_TRUE(a.alive);
  const TrackedRun h = run_tracked_hydro(cfg);
  EXPECT_GT(h.decay_rate, 0.0);
  EXPECT_GT(h.radius.theta, 0.0);
  EXPECT_EQ(h.radius.eta, 0.0);
}

}  // namespace
}  // namespace strip
