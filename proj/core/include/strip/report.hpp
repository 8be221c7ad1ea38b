#pragma once

// CSV and JSON report emission. Numbers use 17 significant digits so that
// parsing a report reproduces the in-memory doubles exactly.

#include <iosfwd>
#include <string>
#include <vector>

#include "strip/harness.hpp"

namespace strip {

std::string format_number(double x);

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);
std::vector<ConvergenceRow> read_convergence_csv(std::istream& in);

void write_norm_csv(std::ostream& out, const std::vector<NormRow>& rows);
void write_decay_csv(std::ostream& out, const std::vector<DecayRow>& rows);

/// {slope, residual, kappa, eta_final, theta_final, zeta_final, alive, ...}
/// with the worst (largest) radii across the sweep.
std::string sweep_summary_json(const SweepReport& report);
/// Single-solver summary: kappa, radii, alive, decay_rate.
std::string run_summary_json(const TrackedRun& run, double kappa);

}  // namespace strip
