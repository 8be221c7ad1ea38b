// Acceptance run: one PASS/FAIL line per criterion, exit status = number of
// failures. Usage: strip_acceptance [reference.cfg]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "strip/anisotropic.hpp"
#include "strip/config.hpp"
#include "strip/harness.hpp"
#include "strip/hydrostatic.hpp"
#include "strip/littlewood_paley.hpp"

namespace {

using namespace strip;
constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

SpectralField sample(const Grid& g, const std::function<double(double, double)>& f) {
  PhysicalField p(g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) p(i, j) = f(g.x(i), g.y(j));
  return forward_transform(p);
}

SpectralField random_field(const Grid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  PhysicalField f(g);
  for (auto& x : f.data()) x = n(rng);
  SpectralField s = forward_transform(f);
  s.dealias();
  return s;
}

// Max difference of u at the nodes shared with the coarsest grid (every
// `stride_x`-th x sample, every `stride_y`-th y sample).
double coarse_node_diff(const SpectralField& coarse, const SpectralField& fine, int stride_x, int stride_y) {
  const PhysicalField a = inverse_transform(coarse);
  const PhysicalField b = inverse_transform(fine);
  double m = 0.0;
  for (int i = 0; i < coarse.grid().nx; ++i)
    for (int j = 0; j < coarse.grid().ny; ++j) m = std::max(m, std::abs(a(i, j) - b(stride_x * i, stride_y * j)));
  return m;
}

SpectralField ans_final(const Grid& g, double eps, double dt, double t_end, double delta) {
  ANSConfig cfg;
  cfg.grid = g;
  cfg.eps = eps;
  cfg.dt = dt;
  cfg.t_end = t_end;
  const SpectralField u0 = sample(g, [&](double x, double y) {
    return delta * (std::cos(x) * std::sin(2 * kPi * y) + 0.5 * std::sin(2 * x) * std::sin(4 * kPi * y));
  });
  return run_ans(cfg, u0).final_state.u;
}

// ---------------------------------------------------------------------------

Verdict convergence(const SweepReport& r) {
  std::string d = "slope " + fmt("%.4f", r.fit.slope) + " residual " + fmt("%.2e", r.fit.residual) + " E =";
  for (const auto& row : r.rows) d += " " + fmt("%.3e", row.e_half);
  return {r.fit.slope >= 0.9 && r.fit.residual <= 0.15, d};
}

Verdict exponential_decay(const RunConfig& cfg) {
  const TrackedRun run = run_tracked_hydro(cfg);
  std::vector<double> t, b;
  for (const auto& row : run.decay) {
    t.push_back(row.t);
    b.push_back(row.b_half);
  }
  const double rate = fit_decay(t, b, 0.3, 1.0);

  // Linear hook: x-independent lowest Dirichlet mode, convection off.
  HydroConfig lin;
  lin.grid = cfg.grid;
  lin.dt = cfg.dt;
  lin.t_end = 1.0;
  lin.nonlinear = false;
  std::vector<double> lt, lv;
  const std::vector<Observer<HydroState>> obs{
      {cfg.norm_every, [&](const HydroState& s, long) {
         lt.push_back(s.t);
         lv.push_back(l2_norm(s.u));
       }}};
  run_hydro(lin, sample(cfg.grid, [&](double, double y) { return cfg.delta * std::sin(kPi * y); }), obs);
  const double lin_rate = fit_decay(lt, lv, 0.3, 1.0);
  const double rel = std::abs(lin_rate - kPi * kPi) / (kPi * kPi);
  return {rate >= kPi * kPi / 2 && rel <= 0.02 && run.alive,
          "B^1/2 rate " + fmt("%.4f", rate) + " (>= " + fmt("%.4f", kPi * kPi / 2) + "), linear rate " +
              fmt("%.5f", lin_rate) + " vs pi^2 rel " + fmt("%.2e", rel)};
}

Verdict uniformity(const SweepReport& r) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& p : r.pairs) {
    lo = std::min(lo, p.sup_b_half);
    hi = std::max(hi, p.sup_b_half);
  }
  return {hi <= 1.5 * lo, "max/min sup_t B^1/2 = " + fmt("%.6f", hi / lo)};
}

Verdict band_survival(const SweepReport& r, const RunConfig& cfg) {
  bool ok = true;
  double eta = 0, theta = 0, zeta = 0, gate = 0;
  for (const auto& p : r.pairs) {
    eta = std::max(eta, p.radius.eta);
    theta = std::max(theta, p.radius.theta);
    zeta = std::max(zeta, p.radius.zeta);
    gate = std::max(gate, p.data_norm / cfg.a);
    ok = ok && p.alive && p.data_norm <= kSmallnessFactor * cfg.a;
  }
  ok = ok && eta < cfg.a / (2 * cfg.lambda) && theta < cfg.a / (2 * cfg.lambda) && zeta < cfg.a / (2 * cfg.mu);
  return {ok, "eta " + fmt("%.3e", eta) + " theta " + fmt("%.3e", theta) + " (< " +
                  fmt("%.4f", cfg.a / (2 * cfg.lambda)) + "), zeta " + fmt("%.3e", zeta) + " (< " +
                  fmt("%.4f", cfg.a / (2 * cfg.mu)) + "), gate ratio " + fmt("%.3e", gate)};
}

Verdict energy_identity(const SweepReport& r, const RunConfig& cfg) {
  const double budget = 10 * std::pow(cfg.dt, 3);
  double worst = 0.0;
  long steps = 0;
  for (const auto& p : r.pairs) {
    worst = std::max(worst, p.max_energy_residual);
    steps = std::max(steps, p.steps);
  }
  HydroConfig h;
  h.grid = cfg.grid;
  h.dt = cfg.dt;
  h.t_end = cfg.t_end;
  const HydroSummary hs = run_hydro(h, initial_data(cfg));
  const bool ok = steps >= 2000 && hs.steps >= 2000 && worst <= budget && hs.max_energy_residual <= budget;
  return {ok, std::to_string(steps) + " steps: ANS max " + fmt("%.3e", worst) + ", hydro max " +
                  fmt("%.3e", hs.max_energy_residual) + " (<= " + fmt("%.3e", budget) + ")"};
}

Verdict bernstein(std::uint64_t seed) {
  const Grid g(64, 33);
  const DyadicPartition p(g);
  std::mt19937_64 rng(seed);
  int checked = 0, violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const SpectralField f = random_field(g, rng);
    const BlockNorms b = block_norms(p, f);
    for (int j = p.jmin(); j <= p.jmax(); ++j) {
      if (b.at(j) == 0.0) continue;
      ++checked;
      const double ratio = bernstein_check(p, f, j).ratio;
      if (ratio < 0.75 - 1e-10 || ratio > 8.0 / 3.0 + 1e-10) ++violations;
    }
  }
  return {violations == 0 && checked > 0,
          std::to_string(checked) + " blocks, " + std::to_string(violations) + " violations"};
}

Verdict partition(const RunConfig& cfg) {
  double unity = 0.0, recon = 0.0;
  std::mt19937_64 rng(cfg.seed);
  for (int nx : {cfg.grid.nx, 16, 128, 256}) {
    const Grid g(nx, cfg.grid.ny, cfg.grid.lx);
    const DyadicPartition p(g);
    for (int ki = 0; ki < nx; ++ki) {
      double sum = p.chi_values()[ki];
      for (int j = p.jmin(); j <= p.jmax(); ++j) sum += p.phi_values(j)[ki];
      unity = std::max(unity, std::abs(sum - 1.0));
    }
    const SpectralField f = random_field(g, rng);
    SpectralField sum = low_frequency_part(p, f);
    for (int j = p.jmin(); j <= p.jmax(); ++j) sum += dyadic_block(p, f, j);
    recon = std::max(recon, (sum - f).max_abs() / f.max_abs());
  }
  return {unity <= 1e-12 && recon <= 1e-12,
          "unity residual " + fmt("%.2e", unity) + ", reconstruction " + fmt("%.2e", recon)};
}

Verdict manufactured_orders() {
  // y: three nested grids at fixed dt; time errors cancel in the differences.
  const double eps = 0.1, delta = 0.2;
  const SpectralField y1 = ans_final(Grid(16, 33), eps, 1e-3, 0.1, delta);
  const SpectralField y2 = ans_final(Grid(16, 65), eps, 1e-3, 0.1, delta);
  const SpectralField y3 = ans_final(Grid(16, 129), eps, 1e-3, 0.1, delta);
  const double oy = std::log2(coarse_node_diff(y1, y2, 1, 2) / coarse_node_diff(y2, y3, 1, 2));

  // Time: dt halving on a fixed grid.
  const Grid gt(16, 65);
  const SpectralField t1 = ans_final(gt, eps, 4e-3, 0.2, delta);
  const SpectralField t2 = ans_final(gt, eps, 2e-3, 0.2, delta);
  const SpectralField t3 = ans_final(gt, eps, 1e-3, 0.2, delta);
  const double ot = std::log2(coarse_node_diff(t1, t2, 1, 1) / coarse_node_diff(t2, t3, 1, 1));

  // x: band-limited data, nx doubled.
  const SpectralField x1 = ans_final(Grid(32, 65), eps, 5e-4, 0.25, 1e-2);
  const SpectralField x2 = ans_final(Grid(64, 65), eps, 5e-4, 0.25, 1e-2);
  const double dx = coarse_node_diff(x1, x2, 2, 1);

  return {std::abs(oy - 2.0) <= 0.2 && std::abs(ot - 2.0) <= 0.3 && dx <= 1e-10,
          "y order " + fmt("%.3f", oy) + ", time order " + fmt("%.3f", ot) + ", nx doubling diff " +
              fmt("%.2e", dx)};
}

Verdict pressure_consistency(const SweepReport& r) {
  // u = sin x sin(pi y) gives p = 2 pi cos x + 1/4 cos 2x.
  std::vector<double> errs;
  for (int ny : {33, 65, 129, 257}) {
    const Grid g(16, ny);
    const SpectralField u = sample(g, [](double x, double y) { return std::sin(x) * std::sin(kPi * y); });
    const PhysicalField p = inverse_transform(pressure_solve_hydro(u));
    double e = 0.0;
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j)
        e = std::max(e, std::abs(p(i, j) - 2 * kPi * std::cos(g.x(i)) - 0.25 * std::cos(2 * g.x(i))));
    errs.push_back(e);
  }
  double worst = 0.0;
  bool ok = true;
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double o = std::log2(errs[i - 1] / errs[i]);
    worst = std::max(worst, std::abs(o - 2.0));
  }
  ok = worst <= 0.2;

  std::string seq;
  bool monotone = true;
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    seq += " " + fmt("%.3e", r.pairs[i].dy_p_norm);
    if (i > 0 && !(r.pairs[i].dy_p_norm < r.pairs[i - 1].dy_p_norm)) monotone = false;
  }
  return {ok && monotone, "hydro pressure order deviation " + fmt("%.3f", worst) + "; sup_t ||d_y p^eps|| =" + seq};
}

}  // namespace

int main(int argc, char** argv) {
  try {
    const RunConfig cfg = argc > 1 ? load_config(argv[1]) : RunConfig{};
    const auto start = std::chrono::steady_clock::now();
    SweepReport sweep = run_sweep(cfg);
    std::sort(sweep.pairs.begin(), sweep.pairs.end(),
              [](const PairResult& a, const PairResult& b) { return a.row.eps > b.row.eps; });

    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"1 O(eps) convergence", [&] { return convergence(sweep); }},
        {"2 exponential decay", [&] { return exponential_decay(cfg); }},
        {"3 eps-uniform bound", [&] { return uniformity(sweep); }},
        {"4 analytic band survival", [&] { return band_survival(sweep, cfg); }},
        {"5 discrete energy identity", [&] { return energy_identity(sweep, cfg); }},
        {"6 Bernstein ring bounds", [&] { return bernstein(cfg.seed); }},
        {"7 partition and reconstruction", [&] { return partition(cfg); }},
        {"8 manufactured orders", [] { return manufactured_orders(); }},
        {"9 pressure consistency", [&] { return pressure_consistency(sweep); }},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
      Verdict v;
      try {
        v = fn();
      } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
      }
      if (!v.pass) ++failures;
      std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << failures << " failed, wall time " << fmt("%.1f", secs) << " s" << std::endl;
    return failures;
  } catch (const std::exception& e) {
    std::cerr << "acceptance setup failed: " << e.what() << '\n';
    return 1;
  }
}
