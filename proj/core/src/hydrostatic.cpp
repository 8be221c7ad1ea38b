#include "strip/hydrostatic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace strip {
namespace {

SpectralField y_constant(const Grid& g, std::span<const Complex> per_mode) {
  SpectralField out(g);
  for (int ki = 0; ki < g.nx; ++ki) {
    auto row = out.profile(ki);
    std::fill(row.begin(), row.end(), per_mode[ki]);
  }
  return out;
}

void initialise_pressure(HydroState& s, bool nonlinear, bool dealias) {
  const Grid& g = s.u.grid();
  SpectralField f = nonlinear ? nonlinear_tendency_hydro(s.u, dealias) : SpectralField(g);
  const DirichletDiffusion diff(g.ny, g.dy());
  std::vector<Complex> lu(g.ny);
  std::vector<Complex> p(g.nx);
  const int interior = g.ny - 2;
  for (int ki = 0; ki < g.nx; ++ki) {
    if (g.wavenumber(ki) == 0 || g.is_nyquist(ki)) continue;
    diff.apply(s.u.profile(ki), 0.0, lu);
    auto fk = f.profile(ki);
    Complex sum{};
    for (int j = 1; j < g.ny - 1; ++j) sum += lu[j] + fk[j];
    p[ki] = sum / (Complex{0.0, g.xi(ki)} * static_cast<double>(interior));
  }
  s.p = y_constant(g, p);
  s.pressure_ready = true;
}

}  // namespace

SpectralField reconstruct_v(const SpectralField& u) {
  SpectralField v = integrate_y(ddx(u), UpperLimit::Y);
  v *= -1.0;
  v.zero_walls();
  return v;
}

HydroState initial_hydro_state(const SpectralField& u0, double tolerance) {
  if (u0.wall_magnitude() > tolerance) {
    throw BoundaryError("initial u violates the Dirichlet rows (|u| = " +
                        std::to_string(u0.wall_magnitude()) + ")");
  }
  HydroState s;
  s.v = vertical_velocity_from_u(u0, tolerance);
  s.u = u0;
  s.u.zero_walls();
  s.p = SpectralField(u0.grid());
  return s;
}

SpectralField nonlinear_tendency_hydro(const SpectralField& u_hat, bool dealias) {
  const SpectralField v_hat = reconstruct_v(u_hat);
  const PhysicalField u = inverse_transform(u_hat);
  const PhysicalField v = inverse_transform(v_hat);
  const PhysicalField ux = inverse_transform(ddx(u_hat));
  const PhysicalField uy = inverse_transform(ddy(u_hat, 1));
  SpectralField out = dealiased_product(u, ux, dealias);
  out += dealiased_product(v, uy, dealias);
  out *= -1.0;
  out.zero_walls();
  return out;
}

SpectralField pressure_solve_hydro(const SpectralField& u_hat, bool dealias) {
  const Grid& g = u_hat.grid();
  const PhysicalField u = inverse_transform(u_hat);
  const SpectralField u2 = dealiased_product(u, u, dealias);
  const SpectralField uy = ddy(u_hat, 1);
  std::vector<Complex> p(g.nx);
  for (int ki = 0; ki < g.nx; ++ki) {
    if (g.wavenumber(ki) == 0 || g.is_nyquist(ki)) continue;
    const Complex ik{0.0, g.xi(ki)};
    auto sq = u2.profile(ki);
    Complex mean_sq = 0.5 * (sq.front() + sq.back());
    for (int j = 1; j < g.ny - 1; ++j) mean_sq += sq[j];
    mean_sq *= g.dy();
    const Complex bracket = uy(ki, g.ny - 1) - uy(ki, 0) - ik * mean_sq;
    p[ki] = bracket / ik;
  }
  return y_constant(g, p);
}

HydroState step_hydro(const HydroState& state, const HydroConfig& cfg) {
  const Grid& g = state.u.grid();
  const double dt = cfg.dt;
  HydroState next = state;
  if (!next.pressure_ready) initialise_pressure(next, cfg.nonlinear, cfg.dealias);

  SpectralField n = cfg.nonlinear ? nonlinear_tendency_hydro(next.u, cfg.dealias) : SpectralField(g);
  SpectralField explicit_part = n;
  if (next.prev_nonlinear) explicit_part = 1.5 * n - 0.5 * *next.prev_nonlinear;

  const DirichletDiffusion diff(g.ny, g.dy());
  const int interior = g.ny - 2;
  std::vector<Complex> lu(g.ny);
  double removed = 0.0;
  for (int ki = 0; ki < g.nx; ++ki) {
    auto prof = next.u.profile(ki);
    if (g.is_nyquist(ki)) {
      std::fill(prof.begin(), prof.end(), Complex{});
      continue;
    }
    const Complex ik{0.0, g.xi(ki)};
    const Complex pk = next.p(ki, 0);
    auto e = explicit_part.profile(ki);
    diff.apply(prof, 0.0, lu);
    for (int j = 0; j < g.ny; ++j) prof[j] += 0.5 * dt * lu[j] + dt * (e[j] - ik * pk);
    diff.implicit_solve(prof, 0.0, dt);
    if (g.wavenumber(ki) == 0) continue;

    // Restore int_0^1 u dy = 0 with a y-constant pressure increment.
    Complex sum{};
    for (int j = 1; j < g.ny - 1; ++j) sum += prof[j];
    const Complex mean = sum / static_cast<double>(interior);
    removed = std::max(removed, std::abs(g.xi(ki)) * std::abs(sum * g.dy()));
    for (int j = 1; j < g.ny - 1; ++j) prof[j] -= mean;
    const Complex q = mean / (ik * dt);
    auto prow = next.p.profile(ki);
    for (auto& c : prow) c += q;
  }
  next.u.zero_walls();
  next.v = reconstruct_v(next.u);
  next.compatibility_removed = removed;
  next.prev_nonlinear = std::move(n);
  next.t = state.t + dt;
  next.steps = state.steps + 1;

  if (!next.u.all_finite() || next.u.max_abs() > 1e12) {
    throw NumericalError("hydrostatic solver unstable at t = " + std::to_string(next.t) +
                         " (dt = " + std::to_string(dt) + ", CFL estimate " +
                         std::to_string(advective_cfl(state.u, state.v, dt)) + ")");
  }
  return next;
}

double energy_residual_hydro(const HydroState& before, const HydroState& after, double dt) {
  const SpectralField mid = 0.5 * (before.u + after.u);
  return 0.5 * (l2_norm_sq(after.u) - l2_norm_sq(before.u)) + dt * dirichlet_gradient_norm_sq(mid);
}

SpectralField dt_u_residual(const HydroState& state, bool dealias) {
  SpectralField r = ddy(state.u, 2);
  r += nonlinear_tendency_hydro(state.u, dealias);
  r -= ddx(pressure_solve_hydro(state.u, dealias));
  r.zero_walls();
  return r;
}

void DtUMonitor::observe(const HydroState& state, double radius) {
  std::vector<double> e = mode_energies(dt_u_residual(state));
  weight_mode_energies(e, state.u.grid(), radius);
  const double growth = std::exp(2.0 * kappa_ * state.t);
  for (auto& x : e) x *= growth;
  series_.append(state.t, block_norms_from_energies(partition_, e));
}

double DtUMonitor::value() const {
  if (series_.size() < 2) throw ValidationError("d_t u monitor needs at least one completed step");
  return chemin_lerner(series_, 2.0, 1.5);
}

double dt_u_norm_monitor(std::span<const HydroState> history, double kappa, double radius) {
  if (history.size() < 2) throw ValidationError("d_t u monitor needs at least one completed step");
  DtUMonitor monitor(history.front().u.grid(), kappa);
  for (const auto& s : history) monitor.observe(s, radius);
  return monitor.value();
}

HydroSummary run_hydro(const HydroConfig& cfg, const SpectralField& u0,
                       const std::vector<Observer<HydroState>>& observers) {
  if (!(u0.grid() == cfg.grid)) throw ValidationError("run_hydro: initial data grid differs from config");
  const long n_steps = step_count(cfg.t_end, cfg.dt);
  const DyadicPartition partition(cfg.grid);

  HydroSummary out;
  HydroState state = initial_hydro_state(u0, cfg.compatibility_tol);
  if (cfg.band > 0.0) {
    out.smallness = analytic_data_norm(partition, state.u, nullptr, 0.0, cfg.band);
    if (out.smallness > kSmallnessFactor * cfg.band) {
      throw ValidationError("smallness gate failed: ||e^{a|D|}u0||_{B^1/2} = " +
                            std::to_string(out.smallness) + " > " +
                            std::to_string(kSmallnessFactor * cfg.band));
    }
  }
  const double cfl = advective_cfl(state.u, state.v, cfg.dt);
  if (cfl > cfg.cfl_limit) {
    throw ValidationError("advective CFL " + std::to_string(cfl) + " exceeds " +
                          std::to_string(cfg.cfl_limit) + "; reduce dt");
  }

  const double e0 = l2_norm_sq(state.u);
  out.norms.append(0.0, block_norms(partition, state.u));
  out.max_compatibility_defect = compatibility_defect(state.u);
  for (const auto& obs : observers) obs.on_step(state, 0);

  for (long n = 1; n <= n_steps; ++n) {
    HydroState next = step_hydro(state, cfg);
    out.max_energy_residual =
        std::max(out.max_energy_residual, std::abs(energy_residual_hydro(state, next, cfg.dt)));
    out.max_compatibility_removed = std::max(out.max_compatibility_removed, next.compatibility_removed);
    const double defect = compatibility_defect(next.u);
    out.max_compatibility_defect = std::max(out.max_compatibility_defect, defect);
    if (defect > cfg.compatibility_tol) {
      throw NumericalError("compatibility defect " + std::to_string(defect) + " at t = " +
                           std::to_string(next.t));
    }
    if (l2_norm_sq(next.u) > 1e6 * e0 + 1e-30) {
      throw NumericalError("hydrostatic solver energy blow-up at t = " + std::to_string(next.t) +
                           " (initial CFL " + std::to_string(cfl) + ")");
    }
    state = std::move(next);
    state.t = static_cast<double>(n) * cfg.dt;
    out.norms.append(state.t, block_norms(partition, state.u));
    for (const auto& obs : observers) {
      if (obs.every > 0 && n % obs.every == 0) obs.on_step(state, n);
    }
  }
  out.steps = n_steps;
  out.final_state = std::move(state);
  return out;
}

}  // namespace strip
