#pragma once

// Hydrostatic (Prandtl-type) limit system in the strip:
//
//   u_t + u u_x + v u_y - u_yy + p_x = 0,  p_y = 0,  u_x + v_y = 0,
//   (u, v) = 0 on y = 0, 1.
//
// v is never prognostic; it is reconstructed from u by trapezoid integration.
// Stepping mirrors the anisotropic solver with the y-constant pressure
// increment that restores int_0^1 u dy = 0 for every k != 0.

#include <optional>
#include <span>
#include <vector>

#include "strip/grid.hpp"
#include "strip/littlewood_paley.hpp"
#include "strip/solver_common.hpp"

namespace strip {

struct HydroConfig {
  Grid grid;
  double dt = 5e-4;
  double t_end = 1.0;
  double compatibility_tol = 1e-8;
  bool dealias = true;
  double cfl_limit = 0.5;
  /// Analytic band a for the smallness gate; <= 0 disables the gate.
  double band = 0.0;
  /// Test hook: drop the convective terms.
  bool nonlinear = true;
};

struct HydroState {
  SpectralField u;
  SpectralField v;  // reconstructed from u
  SpectralField p;  // y-constant rows
  double t = 0.0;
  std::optional<SpectralField> prev_nonlinear;
  bool pressure_ready = false;
  long steps = 0;
  /// max_k |xi_k| |int u* dy| removed by the last projection.
  double compatibility_removed = 0.0;
};

/// u = u0 with v reconstructed; validates Dirichlet rows and compatibility.
HydroState initial_hydro_state(const SpectralField& u0, double tolerance = 1e-8);

/// Trapezoid reconstruction -int_0^y u_x without compatibility checks.
SpectralField reconstruct_v(const SpectralField& u);

/// Dealiased -(u u_x + v u_y) with v reconstructed from u.
SpectralField nonlinear_tendency_hydro(const SpectralField& u, bool dealias = true);

/// Pressure from the wall-shear formula p_x = u_y(1) - u_y(0) - d_x int_0^1 u^2 dy,
/// per mode p^(k) = g^(k) / (i xi_k), k = 0 gauged to 0. Wall derivatives use
/// one-sided second-order stencils, int u^2 the trapezoid rule after a
/// dealiased square. Returned rows are y-constant.
SpectralField pressure_solve_hydro(const SpectralField& u, bool dealias = true);

HydroState step_hydro(const HydroState& state, const HydroConfig& cfg);

/// 1/2 (||u_after||^2 - ||u_before||^2) + dt ||d_y u_mid||^2.
double energy_residual_hydro(const HydroState& before, const HydroState& after, double dt);

/// Reconstructed d_t u = u_yy - u u_x - v u_y - p_x with p from
/// pressure_solve_hydro; walls zero.
SpectralField dt_u_residual(const HydroState& state, bool dealias = true);

/// Accumulates e^{kappa t} (d_t u)_Phi samples and reports their L~^2(B^{3/2}) norm.
class DtUMonitor {
 public:
  DtUMonitor(const Grid& grid, double kappa) : partition_(grid), kappa_(kappa) {}
  void observe(const HydroState& state, double radius);
  /// Throws ValidationError before two samples have been recorded.
  double value() const;
  const NormSeries& series() const { return series_; }

 private:
  DyadicPartition partition_;
  double kappa_;
  NormSeries series_;
};

/// Offline form of DtUMonitor with a fixed Phi radius; history must hold the
/// initial state and at least one completed step.
double dt_u_norm_monitor(std::span<const HydroState> history, double kappa, double radius = 0.0);

struct HydroSummary {
  HydroState final_state;
  NormSeries norms;  // block norms of u at every step
  long steps = 0;
  double max_compatibility_removed = 0.0;
  double max_compatibility_defect = 0.0;
  double max_energy_residual = 0.0;
  double smallness = 0.0;
};

HydroSummary run_hydro(const HydroConfig& cfg, const SpectralField& u0,
                       const std::vector<Observer<HydroState>>& observers = {});

}  // namespace strip
