#include "strip/anisotropic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace strip {
namespace {

void check_eps(double eps) {
  if (!(eps > 0.0) || eps > 1.0) {
    throw ValidationError("eps must lie in (0, 1], got " + std::to_string(eps));
  }
}

void zero_nyquist(SpectralField& f) {
  auto row = f.profile(f.grid().nx / 2);
  std::fill(row.begin(), row.end(), Complex{});
}

// Solves (k^2 M M^T + eps^-2 D D^T) lambda = c in place for one mode, where
// M averages and D differences interior node values onto cells.
void solve_cell_system(std::span<Complex> c, double xi, double eps, double dy) {
  const int m = static_cast<int>(c.size());
  if (xi == 0.0) {
    // D D^T is singular on constants; integrate twice and fix the mean.
    // First D w = eps^2 c on interior nodes, then D^T lambda = w.
    std::vector<Complex> w(m + 1);
    for (int i = 0; i < m; ++i) w[i + 1] = w[i] + dy * eps * eps * c[i];
    c[0] = 0.0;
    for (int i = 1; i < m; ++i) c[i] = c[i - 1] - dy * w[i];
    Complex mean{};
    for (int i = 0; i < m; ++i) mean += c[i];
    mean /= static_cast<double>(m);
    for (int i = 0; i < m; ++i) c[i] -= mean;
    return;
  }
  const double k2 = xi * xi;
  const double s = 1.0 / (eps * eps * dy * dy);
  std::vector<double> diag(m), off(m);
  for (int i = 0; i < m; ++i) {
    // Cell i touches interior nodes i (if i > 0) and i + 1 (if i < m - 1).
    const int touching = (i > 0 ? 1 : 0) + (i < m - 1 ? 1 : 0);
    diag[i] = 0.25 * k2 * touching + s * touching;
    off[i] = 0.25 * k2 - s;
  }
  solve_tridiagonal(off, diag, off, c);
}

ANSTendency zero_tendency(const Grid& g) { return {SpectralField(g), SpectralField(g)}; }

// Applies eps^2 d_xx + d_yy (Dirichlet) to every mode of f.
SpectralField apply_viscous(const SpectralField& f, double eps) {
  const Grid& g = f.grid();
  const DirichletDiffusion diff(g.ny, g.dy());
  SpectralField out(g);
  for (int ki = 0; ki < g.nx; ++ki) {
    if (g.is_nyquist(ki)) continue;
    diff.apply(f.profile(ki), eps * eps * g.xi(ki) * g.xi(ki), out.profile(ki));
  }
  return out;
}

void initialise_pressure(ANSState& s, bool nonlinear, bool dealias) {
  ANSTendency f = nonlinear ? nonlinear_tendency_ans(s, dealias) : zero_tendency(s.u.grid());
  f.u += apply_viscous(s.u, s.eps);
  f.v += apply_viscous(s.v, s.eps);
  // With dt = 1 the increment is the pressure whose gradient removes the
  // divergent part of the initial tendency.
  s.p = pressure_solve_ans(f.u, f.v, s.eps, 1.0);
  s.pressure_ready = true;
}

}  // namespace

ANSState initial_data_scaled(const SpectralField& u0, double eps, double tolerance) {
  check_eps(eps);
  ANSState s;
  s.u = u0;
  s.v = vertical_velocity_from_u(u0, tolerance);
  if (u0.wall_magnitude() > tolerance) {
    throw BoundaryError("initial u violates the Dirichlet rows (|u| = " +
                        std::to_string(u0.wall_magnitude()) + ")");
  }
  s.u.zero_walls();
  s.p = CellField(u0.grid());
  s.eps = eps;
  return s;
}

ANSTendency nonlinear_tendency_ans(const ANSState& state, bool dealias) {
  const PhysicalField u = inverse_transform(state.u);
  const PhysicalField v = inverse_transform(state.v);
  const PhysicalField ux = inverse_transform(ddx(state.u));
  const PhysicalField uy = inverse_transform(ddy(state.u, 1));
  const PhysicalField vx = inverse_transform(ddx(state.v));
  const PhysicalField vy = inverse_transform(ddy(state.v, 1));
  ANSTendency out{dealiased_product(u, ux, dealias), dealiased_product(u, vx, dealias)};
  out.u += dealiased_product(v, uy, dealias);
  out.v += dealiased_product(v, vy, dealias);
  out.u *= -1.0;
  out.v *= -1.0;
  out.u.zero_walls();
  out.v.zero_walls();
  return out;
}

CellField pressure_solve_ans(const SpectralField& rhs_u, const SpectralField& rhs_v, double eps,
                             double dt) {
  check_eps(eps);
  if (!(dt > 0.0)) throw ValidationError("pressure_solve_ans: dt must be positive");
  const Grid& g = rhs_u.grid();
  SpectralField u = rhs_u;
  SpectralField v = rhs_v;
  u.zero_walls();
  v.zero_walls();
  CellField q = cell_divergence(u, v);
  for (int ki = 0; ki < g.nx; ++ki) {
    auto c = q.profile(ki);
    if (g.is_nyquist(ki)) {
      std::fill(c.begin(), c.end(), Complex{});
      continue;
    }
    solve_cell_system(c, g.xi(ki), eps, g.dy());
    for (auto& x : c) x *= -1.0 / dt;
  }
  return q;
}

ANSTendency pressure_gradient_ans(const CellField& q, double eps) {
  const Grid& g = q.grid();
  ANSTendency out = zero_tendency(g);
  const double inv_dy = 1.0 / g.dy();
  const double inv_eps2 = 1.0 / (eps * eps);
  for (int ki = 0; ki < g.nx; ++ki) {
    if (g.is_nyquist(ki)) continue;
    const Complex ik{0.0, g.xi(ki)};
    auto c = q.profile(ki);
    auto gu = out.u.profile(ki);
    auto gv = out.v.profile(ki);
    for (int i = 1; i < g.ny - 1; ++i) {
      gu[i] = 0.5 * ik * (c[i - 1] + c[i]);
      gv[i] = inv_eps2 * (c[i] - c[i - 1]) * inv_dy;
    }
  }
  return out;
}

ANSState step_ans(const ANSState& state, const ANSConfig& cfg) {
  const Grid& g = state.u.grid();
  const double dt = cfg.dt;
  const double eps = state.eps;
  ANSState next = state;
  if (!next.pressure_ready) initialise_pressure(next, cfg.nonlinear, cfg.dealias);

  ANSTendency n = cfg.nonlinear ? nonlinear_tendency_ans(next, cfg.dealias) : zero_tendency(g);
  ANSTendency explicit_part = n;
  if (next.prev_nonlinear) {
    explicit_part.u = 1.5 * n.u - 0.5 * next.prev_nonlinear->u;
    explicit_part.v = 1.5 * n.v - 0.5 * next.prev_nonlinear->v;
  }
  const ANSTendency gp = pressure_gradient_ans(next.p, eps);

  const DirichletDiffusion diff(g.ny, g.dy());
  std::vector<Complex> lu(g.ny);
  for (int ki = 0; ki < g.nx; ++ki) {
    if (g.is_nyquist(ki)) continue;
    const double rate = eps * eps * g.xi(ki) * g.xi(ki);
    auto advance = [&](SpectralField& f, const SpectralField& ex, const SpectralField& grad) {
      auto prof = f.profile(ki);
      auto e = ex.profile(ki);
      auto gr = grad.profile(ki);
      diff.apply(prof, rate, lu);
      for (int j = 0; j < g.ny; ++j) prof[j] += 0.5 * dt * lu[j] + dt * (e[j] - gr[j]);
      diff.implicit_solve(prof, rate, dt);
    };
    advance(next.u, explicit_part.u, gp.u);
    advance(next.v, explicit_part.v, gp.v);
  }
  zero_nyquist(next.u);
  zero_nyquist(next.v);

  const CellField q = pressure_solve_ans(next.u, next.v, eps, dt);
  ANSTendency correction = pressure_gradient_ans(q, eps);
  next.u -= dt * correction.u;
  next.v -= dt * correction.v;
  next.u.zero_walls();
  next.v.zero_walls();
  next.p += q;

  next.prev_nonlinear = std::move(n);
  next.t = state.t + dt;
  next.steps = state.steps + 1;

  if (!next.u.all_finite() || !next.v.all_finite() || next.u.max_abs() > 1e12 ||
      next.v.max_abs() > 1e12) {
    throw NumericalError("anisotropic solver unstable at t = " + std::to_string(next.t) +
                         " (eps = " + std::to_string(eps) + ", dt = " + std::to_string(dt) +
                         ", initial CFL estimate " + std::to_string(advective_cfl(state.u, state.v, dt)) +
                         ")");
  }
  return next;
}

double energy_ans(const ANSState& s) { return l2_norm_sq(s.u) + s.eps * s.eps * l2_norm_sq(s.v); }

double energy_residual_ans(const ANSState& before, const ANSState& after, double dt) {
  const double e2 = before.eps * before.eps;
  const SpectralField mu = 0.5 * (before.u + after.u);
  const SpectralField mv = 0.5 * (before.v + after.v);
  const double dissipation = e2 * (ddx_norm_sq(mu) + e2 * ddx_norm_sq(mv)) +
                             dirichlet_gradient_norm_sq(mu) + e2 * dirichlet_gradient_norm_sq(mv);
  return 0.5 * (energy_ans(after) - energy_ans(before)) + dt * dissipation;
}

double pressure_dy_norm(const ANSState& s) {
  const Grid& g = s.u.grid();
  double sum = 0.0;
  for (int ki = 0; ki < g.nx; ++ki) {
    auto c = s.p.profile(ki);
    for (int i = 1; i < g.ny - 1; ++i) sum += std::norm((c[i] - c[i - 1]) / g.dy());
  }
  return std::sqrt(g.lx * sum * g.dy());
}

double divergence_norm(const ANSState& s) { return cell_divergence(s.u, s.v).l2_norm(); }

std::vector<double> state_energies_ans(const ANSState& s) {
  std::vector<double> e = mode_energies(s.u);
  accumulate_mode_energies(e, s.v, s.eps);
  return e;
}

ANSSummary run_ans(const ANSConfig& cfg, const SpectralField& u0,
                   const std::vector<Observer<ANSState>>& observers) {
  if (!(u0.grid() == cfg.grid)) throw ValidationError("run_ans: initial data grid differs from config");
  const long n_steps = step_count(cfg.t_end, cfg.dt);
  const DyadicPartition partition(cfg.grid);

  ANSSummary out;
  ANSState state = initial_data_scaled(u0, cfg.eps, cfg.divergence_tol);
  if (cfg.band > 0.0) {
    out.smallness = analytic_data_norm(partition, state.u, &state.v, cfg.eps, cfg.band);
    if (out.smallness > kSmallnessFactor * cfg.band) {
      throw ValidationError("smallness gate failed: ||e^{a|D|}(u0, eps v0)||_{B^1/2} = " +
                            std::to_string(out.smallness) + " > " +
                            std::to_string(kSmallnessFactor) + " a = " +
                            std::to_string(kSmallnessFactor * cfg.band));
    }
  }
  const double cfl = advective_cfl(state.u, state.v, cfg.dt);
  if (cfl > cfg.cfl_limit) {
    throw ValidationError("advective CFL " + std::to_string(cfl) + " exceeds " +
                          std::to_string(cfg.cfl_limit) + "; reduce dt");
  }

  const double e0 = energy_ans(state);
  out.norms.append(0.0, block_norms_from_energies(partition, state_energies_ans(state)));
  out.max_divergence = divergence_norm(state);
  for (const auto& obs : observers) obs.on_step(state, 0);

  for (long n = 1; n <= n_steps; ++n) {
    ANSState next = step_ans(state, cfg);
    out.max_energy_residual =
        std::max(out.max_energy_residual, std::abs(energy_residual_ans(state, next, cfg.dt)));
    const double div = divergence_norm(next);
    out.max_divergence = std::max(out.max_divergence, div);
    if (div > cfg.divergence_tol) {
      throw NumericalError("divergence " + std::to_string(div) + " exceeds tolerance at t = " +
                           std::to_string(next.t));
    }
    if (energy_ans(next) > 1e6 * e0 + 1e-30) {
      throw NumericalError("anisotropic solver energy blow-up at t = " + std::to_string(next.t) +
                           " (initial CFL " + std::to_string(cfl) + ")");
    }
    state = std::move(next);
    // n * dt rather than accumulated t keeps recorded times exact multiples.
    state.t = static_cast<double>(n) * cfg.dt;
    out.norms.append(state.t, block_norms_from_energies(partition, state_energies_ans(state)));
    for (const auto& obs : observers) {
      if (obs.every > 0 && n % obs.every == 0) obs.on_step(state, n);
    }
  }
  out.steps = n_steps;
  out.final_state = std::move(state);
  return out;
}

}  // namespace strip
