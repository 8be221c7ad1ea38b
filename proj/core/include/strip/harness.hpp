#pragma once

// Paired anisotropic/hydrostatic runs and the quantities compared across eps:
// Theta-weighted error norms, remainder norms, rate fits.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "strip/anisotropic.hpp"
#include "strip/config.hpp"
#include "strip/hydrostatic.hpp"
#include "strip/tracker.hpp"

namespace strip {

struct ErrorFields {
  SpectralField w1;  // u^eps - u
  SpectralField w2;  // v^eps - v
};

/// Throws ValidationError when the grids differ or |t_ans - t_hydro| > dt/2.
ErrorFields error_fields(const ANSState& ans, const HydroState& hydro, double dt);

struct RemainderReport {
  double eps = 0.0;
  double r1 = 0.0;       // ||eps^2 d_xx u||_{L2_t L2}
  double r2 = 0.0;       // eps^2 ||bracket||_{L2_t L2}
  double bracket = 0.0;  // ||d_t v - eps^2 d_xx v - d_yy v + u^eps d_x v + v^eps d_y v||_{L2_t L2}
};

/// Time-L2 (trapezoid) accumulation of the hydrostatic parts of the error
/// system's remainders. With no anisotropic state the products use the
/// hydrostatic (u, v).
class RemainderAccumulator {
 public:
  explicit RemainderAccumulator(double eps) : eps_(eps) {}
  void add(const HydroState& hydro, const ANSState* ans = nullptr);
  RemainderReport result() const;

 private:
  double eps_;
  bool started_ = false;
  double last_t_ = 0.0;
  double last_r1_ = 0.0;
  double last_bracket_ = 0.0;
  double int_r1_ = 0.0;
  double int_bracket_ = 0.0;
};

RemainderReport remainder_norms(std::span<const HydroState> history, double eps);

struct ConvergenceRow {
  double eps = 0.0;
  double e_half = 0.0;        // L~^inf(B^1/2) of (w1, eps w2)_Theta
  double e_dy = 0.0;          // L~^2(B^1/2) of d_y (w1, eps w2)_Theta
  double e_three_half = 0.0;  // eps L~^2(B^3/2) of (w1, eps w2)_Theta
};

struct FitResult {
  double slope = 0.0;
  double residual = 0.0;
  std::size_t used = 0;
  std::size_t excluded = 0;
};

/// Least-squares slope of log E_half against log eps; rows with E_half <= 0
/// are excluded. Needs three usable rows.
FitResult fit_convergence(std::span<const ConvergenceRow> rows);
/// Same fit on raw (x, y) pairs.
FitResult fit_power_law(std::span<const double> x, std::span<const double> y);

/// Decay rate -d/dt log ||u||_{B^1/2} fitted on samples with t in [t0, t1].
double fit_decay(const NormSeries& series, double t0, double t1, double s = 0.5);
double fit_decay(std::span<const double> times, std::span<const double> values, double t0, double t1);

/// Everything measured on one (ANS(eps), hydro) pair run in lockstep.
struct PairResult {
  ConvergenceRow row;
  double sup_b_half = 0.0;   // sup_t ||(u, eps v)||_{B^1/2}
  double dy_p_norm = 0.0;    // sup_t ||d_y p^eps||
  double l2_w1 = 0.0;        // ||w1(T)||_{L2}
  double data_norm = 0.0;    // ||e^{a|D|}(u0, eps v0)||_{B^1/2}
  double max_energy_residual = 0.0;
  double max_divergence = 0.0;
  RadiusState radius;
  AprioriReport apriori;
  RemainderReport remainder;
  bool alive = true;
  std::string halt_reason;
  long steps = 0;
};

PairResult run_pair(const RunConfig& cfg, double eps);

struct SweepReport {
  std::vector<ConvergenceRow> rows;
  std::vector<PairResult> pairs;
  FitResult fit;
  double kappa = 0.0;
  double m_proxy = 0.0;  // max recorded hydrostatic norm proxy
};

/// Runs every eps concurrently, capped by STRIP_HYDRO_THREADS (default: the
/// hardware concurrency).
SweepReport run_sweep(const RunConfig& cfg);

/// Threads used by run_sweep for n jobs.
unsigned sweep_threads(std::size_t jobs);

/// One row of the norm report.
struct NormRow {
  double time = 0.0;
  double s = 0.5;
  double besov = 0.0;
  double eta = 0.0;
  double theta = 0.0;
  double zeta = 0.0;
  double radius_estimate = 0.0;  // NaN when the spectrum is too narrow to fit
  double radius_psi = 0.0;
  double radius_phi = 0.0;
  double radius_theta = 0.0;
};

NormRow make_norm_row(const DyadicPartition& p, const SpectralField& u, double t, const RadiusState& rs);

struct DecayRow {
  double t = 0.0;
  double l2 = 0.0;
  double b_half = 0.0;
};

/// Tracked single-solver runs for the CLI.
struct TrackedRun {
  std::vector<NormRow> norms;
  std::vector<DecayRow> decay;
  RadiusState radius;
  bool alive = true;
  std::string halt_reason;
  double decay_rate = 0.0;  // fit on [0.3 T, T] of the B^1/2 series
};

using CheckpointSink = std::function<void(const SpectralField& u, const SpectralField& v, long step)>;

TrackedRun run_tracked_ans(const RunConfig& cfg, double eps, int checkpoint_every = 0,
                           const CheckpointSink& sink = {}, ANSState* final_state = nullptr);
TrackedRun run_tracked_hydro(const RunConfig& cfg, int checkpoint_every = 0,
                             const CheckpointSink& sink = {}, HydroState* final_state = nullptr);

}  // namespace strip
