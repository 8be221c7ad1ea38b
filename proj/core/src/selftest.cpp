#include "strip/selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <string>

#include "strip/anisotropic.hpp"
#include "strip/harness.hpp"
#include "strip/hydrostatic.hpp"
#include "strip/littlewood_paley.hpp"

namespace strip {
namespace {

SpectralField random_field(const Grid& g, std::mt19937_64& rng, bool dirichlet) {
  std::normal_distribution<double> n(0.0, 1.0);
  PhysicalField f(g);
  for (auto& x : f.data()) x = n(rng);
  SpectralField s = forward_transform(f);
  s.dealias();
  if (dirichlet) s.zero_walls();
  return s;
}

}  // namespace

int run_selftest(std::ostream& out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  auto check = [&](const std::string& name, const std::function<bool()>& fn) {
    bool ok = false;
    std::string detail;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      detail = std::string(" (") + e.what() + ")";
    }
    out << (ok ? "ok   " : "FAIL ") << name << detail << '\n';
    if (!ok) ++failures;
  };

  const Grid g(32, 33);
  const DyadicPartition p(g);

  check("transform round trip", [&] {
    PhysicalField f(g);
    std::normal_distribution<double> n(0.0, 1.0);
    for (auto& x : f.data()) x = n(rng);
    const PhysicalField back = inverse_transform(forward_transform(f));
    double err = 0.0;
    for (std::size_t i = 0; i < f.data().size(); ++i) err = std::max(err, std::abs(f.data()[i] - back.data()[i]));
    return err < 1e-12;
  });

  check("partition of unity", [&] {
    double worst = 0.0;
    for (int ki = 0; ki < g.nx; ++ki) {
      double sum = p.chi_values()[ki];
      for (int j = p.jmin(); j <= p.jmax(); ++j) sum += p.phi_values(j)[ki];
      worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst <= 1e-12;
  });

  check("block reconstruction", [&] {
    const SpectralField f = random_field(g, rng, false);
    SpectralField sum = low_frequency_part(p, f);
    for (int j = p.jmin(); j <= p.jmax(); ++j) sum += dyadic_block(p, f, j);
    return (sum - f).max_abs() <= 1e-12 * std::max(1.0, f.max_abs());
  });

  check("bernstein ring bounds", [&] {
    for (int trial = 0; trial < 10; ++trial) {
      const SpectralField f = random_field(g, rng, false);
      for (int j = p.jmin(); j <= p.jmax(); ++j) {
        if (block_norms(p, f).at(j) == 0.0) continue;
        if (!bernstein_check(p, f, j).within()) return false;
      }
    }
    return true;
  });

  check("compatibility violation detected", [&] {
    SpectralField u(g);
    for (int j = 0; j < g.ny; ++j) u(1, j) = u(g.nx - 1, j) = 0.5 * g.y(j) * (1.0 - g.y(j));
    try {
      vertical_velocity_from_u(u);
    } catch (const CompatibilityError&) {
      return true;
    }
    return false;
  });

  check("projection of a solenoidal field is trivial", [&] {
    SpectralField u(g);
    for (int j = 0; j < g.ny; ++j) u(1, j) = u(g.nx - 1, j) = 0.5 * std::sin(2.0 * std::numbers::pi * g.y(j));
    const SpectralField v = vertical_velocity_from_u(u);
    const CellField q = pressure_solve_ans(u, v, 0.1, 1e-3);
    return q.l2_norm() <= 1e-10;
  });

  check("energy identity over 20 steps", [&] {
    RunConfig cfg;
    cfg.grid = Grid(16, 33);
    cfg.dt = 1e-3;
    cfg.t_end = 20 * cfg.dt;
    ANSConfig acfg;
    acfg.grid = cfg.grid;
    acfg.dt = cfg.dt;
    acfg.t_end = cfg.t_end;
    acfg.eps = 0.1;
    const ANSSummary s = run_ans(acfg, initial_data(cfg));
    return s.max_energy_residual <= 10.0 * std::pow(cfg.dt, 3);
  });

  check("hydrostatic compatibility preserved", [&] {
    RunConfig cfg;
    cfg.grid = Grid(16, 33);
    HydroConfig hcfg;
    hcfg.grid = cfg.grid;
    hcfg.dt = 1e-3;
    hcfg.t_end = 20 * hcfg.dt;
    const HydroSummary s = run_hydro(hcfg, initial_data(cfg));
    return s.max_compatibility_defect <= 1e-8;
  });

  check("power-law fit exact", [&] {
    const std::vector<ConvergenceRow> rows = {{0.2, 0.6}, {0.1, 0.3}, {0.05, 0.15}, {0.025, 0.075}};
    const FitResult fit = fit_convergence(rows);
    return std::abs(fit.slope - 1.0) <= 1e-10 && fit.residual <= 1e-10;
  });

  return failures;
}

}  // namespace strip
