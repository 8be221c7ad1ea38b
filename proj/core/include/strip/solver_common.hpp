#pragma once

// Pieces shared by the anisotropic and hydrostatic steppers.

#include <functional>
#include <span>
#include <vector>

#include "strip/grid.hpp"
#include "strip/littlewood_paley.hpp"

namespace strip {

/// Smallness gate: ||e^{a|D_x|} data||_{B^{1/2}} <= kSmallnessFactor * a.
inline constexpr double kSmallnessFactor = 0.05;

/// Thomas algorithm for a real tridiagonal system with complex right-hand side.
/// lower[i] multiplies x[i-1], upper[i] multiplies x[i+1]; rhs is overwritten.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<Complex> rhs);

/// Crank-Nicolson pieces for d_t f = -rate f + d_yy f with Dirichlet rows.
/// The 3-point Laplacian acts on interior nodes; wall values are treated as 0.
class DirichletDiffusion {
 public:
  DirichletDiffusion(int ny, double dy) : ny_(ny), dy_(dy) {}

  /// (L f)_j at every node (walls set to 0), L = -rate + D2.
  void apply(std::span<const Complex> f, double rate, std::span<Complex> out) const;
  /// Solves (I - dt/2 L) x = rhs on the interior nodes; walls of rhs are
  /// ignored and x's walls are set to 0. In place.
  void implicit_solve(std::span<Complex> rhs, double rate, double dt) const;

 private:
  int ny_;
  double dy_;
};

/// Per-step callback with a cadence (called when step % every == 0,
/// including step 0 before any stepping).
template <typename State>
struct Observer {
  int every = 1;
  std::function<void(const State&, long step)> on_step;
};

/// ||e^{a|D_x|}(u, scale v)||_{B^{1/2}}; pass an empty v for the scalar case.
double analytic_data_norm(const DyadicPartition& p, const SpectralField& u, const SpectralField* v,
                          double scale, double a);

/// Physical-space product a*b, transformed back and (optionally) 2/3-truncated.
SpectralField dealiased_product(const PhysicalField& a, const PhysicalField& b, bool dealias);

/// Number of steps from 0 to t_end; throws if t_end is not a multiple of dt.
long step_count(double t_end, double dt);

/// dt (max|u|/dx + max|v|/dy) from physical-space samples.
double advective_cfl(const SpectralField& u, const SpectralField& v, double dt);

}  // namespace strip
