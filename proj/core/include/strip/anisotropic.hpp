#pragma once

// Scaled anisotropic Navier-Stokes in the strip:
//
//   u_t + u u_x + v u_y - eps^2 u_xx - u_yy + p_x = 0
//   eps^2 (v_t + u v_x + v v_y - eps^2 v_xx - v_yy) + p_y = 0
//   u_x + v_y = 0,  (u, v) = 0 on y = 0, 1.
//
// AB2/Crank-Nicolson predictor with incremental pressure, then an exact
// projection onto the box-divergence-free space (see cell_divergence).
// Pressure lives on cell centres; its x-mean is gauged to zero.

#include <optional>
#include <vector>

#include "strip/grid.hpp"
#include "strip/littlewood_paley.hpp"
#include "strip/solver_common.hpp"

namespace strip {

struct ANSConfig {
  Grid grid;
  double dt = 5e-4;
  double t_end = 1.0;
  double eps = 0.1;
  double divergence_tol = 1e-8;
  bool dealias = true;
  /// Largest accepted advective CFL number dt (max|u|/dx + max|v|/dy).
  double cfl_limit = 0.5;
  /// Analytic band a for the smallness gate; <= 0 disables the gate.
  double band = 0.0;
  /// Test hook: drop the convective terms.
  bool nonlinear = true;
};

struct ANSTendency {
  SpectralField u;
  SpectralField v;
};

struct ANSState {
  SpectralField u;
  SpectralField v;
  CellField p;
  double t = 0.0;
  double eps = 1.0;
  std::optional<ANSTendency> prev_nonlinear;
  bool pressure_ready = false;
  long steps = 0;
};

/// u = u0, v reconstructed from u0, p = 0, t = 0.
ANSState initial_data_scaled(const SpectralField& u0, double eps, double tolerance = 1e-8);

/// Dealiased -(u u_x + v u_y), -(u v_x + v v_y), products formed in physical space.
ANSTendency nonlinear_tendency_ans(const ANSState& state, bool dealias = true);

/// Pressure increment q on cells such that (rhs_u, rhs_v) - dt G q has zero
/// box divergence, where G q = (d_x q, eps^-2 d_y q) interpolated to nodes.
/// Wall rows of the right-hand side are treated as zero. The k = 0 mode is
/// gauged to zero mean in y.
CellField pressure_solve_ans(const SpectralField& rhs_u, const SpectralField& rhs_v, double eps,
                             double dt);

/// The discrete gradient used by the projection: node values of
/// (ik (q_{c-1} + q_c)/2, eps^-2 (q_c - q_{c-1})/dy), walls zero.
ANSTendency pressure_gradient_ans(const CellField& q, double eps);

/// One AB2/CN step followed by projection. Throws NumericalError on
/// non-finite or exploding fields.
ANSState step_ans(const ANSState& state, const ANSConfig& cfg);

/// E = ||u||^2 + eps^2 ||v||^2 of a state.
double energy_ans(const ANSState& state);
/// 1/2 (E_after - E_before) + dt (eps^2 ||d_x (u, eps v)||^2 + ||d_y (u, eps v)||^2)
/// with gradients of the midpoint state.
double energy_residual_ans(const ANSState& before, const ANSState& after, double dt);
/// L2 norm of the scheme's vertical pressure gradient (p_c - p_{c-1})/dy.
double pressure_dy_norm(const ANSState& state);
/// L2 norm of the box divergence.
double divergence_norm(const ANSState& state);
/// Mode energies of (u, eps v).
std::vector<double> state_energies_ans(const ANSState& state);

struct ANSSummary {
  ANSState final_state;
  NormSeries norms;  // block norms of (u, eps v) at every step
  long steps = 0;
  double max_divergence = 0.0;
  double max_energy_residual = 0.0;
  double smallness = 0.0;  // ||e^{a|D|}(u0, eps v0)||_{B^{1/2}}, 0 if the gate is off
};

/// Steps from 0 to t_end (round(t_end / dt) steps). Observers run after
/// each step whose index is a multiple of their cadence, and once at step 0.
ANSSummary run_ans(const ANSConfig& cfg, const SpectralField& u0,
                   const std::vector<Observer<ANSState>>& observers = {});

}  // namespace strip
