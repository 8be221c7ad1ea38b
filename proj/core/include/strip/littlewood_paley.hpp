#pragma once

// Horizontal Littlewood-Paley analysis on the strip: dyadic blocks in x,
// Besov B^s norms (l1 over blocks of 2^{js} ||Delta_j f||_{L2(S)}),
// Chemin-Lerner and time-weighted norms over recorded trajectories, and
// analytic weights e^{r|D_x|}.

#include <limits>
#include <span>
#include <vector>

#include "strip/grid.hpp"

namespace strip {

/// C-infinity step: 0 for t <= 0, 1 for t >= 1, built from exp(-1/t).
double smooth_step(double t);

/// Low-frequency cutoff: 1 on |tau| <= 3/4, 0 on |tau| >= 4/3.
double chi(double tau);

/// Ring cutoff chi(tau/2) - chi(tau), supported in 3/4 <= |tau| <= 8/3.
double phi(double tau);

/// Cutoff tables for a grid. Block j multiplies mode k by phi(2^{-j} |xi_k|);
/// jmin is chosen so every nonzero mode is covered by blocks j >= jmin and the
/// low part S_{jmin} only carries the mean mode.
class DyadicPartition {
 public:
  DyadicPartition() = default;
  explicit DyadicPartition(const Grid& grid);

  const Grid& grid() const { return grid_; }
  int jmin() const { return jmin_; }
  int jmax() const { return jmax_; }
  int block_count() const { return jmax_ - jmin_ + 1; }
  bool active(int j) const { return j >= jmin_ && j <= jmax_; }

  /// phi(2^{-j} |xi_k|) indexed by storage row.
  std::span<const double> phi_values(int j) const;
  /// chi(2^{-jmin} |xi_k|) indexed by storage row.
  std::span<const double> chi_values() const { return chi_; }

  /// Block "centre" 2^j * (2 pi / lx).
  double centre(int j) const;

 private:
  Grid grid_;
  int jmin_ = 0;
  int jmax_ = -1;
  std::vector<double> phi_;  // block-major
  std::vector<double> chi_;
};

DyadicPartition build_partition(const Grid& grid);

/// b_j = ||Delta_j f||_{L2(S)} for j in [jmin, jmax].
struct BlockNorms {
  int jmin = 0;
  std::vector<double> values;

  int jmax() const { return jmin + static_cast<int>(values.size()) - 1; }
  double at(int j) const { return values.at(static_cast<std::size_t>(j - jmin)); }
};

/// Per-mode energies lx * int_0^1 |f^(k, y)|^2 dy, indexed by storage row.
std::vector<double> mode_energies(const SpectralField& f);
/// Adds scale^2 times the energies of g (vector norms like (u, eps v)).
void accumulate_mode_energies(std::vector<double>& energies, const SpectralField& g, double scale);
/// Multiplies mode energies by e^{2 r |xi_k|}, i.e. weighs the field by e^{r|D_x|}.
void weight_mode_energies(std::vector<double>& energies, const Grid& grid, double radius);

BlockNorms block_norms_from_energies(const DyadicPartition& p, std::span<const double> energies);
BlockNorms block_norms(const DyadicPartition& p, const SpectralField& f);

double besov_from_blocks(const BlockNorms& blocks, double s);

SpectralField dyadic_block(const DyadicPartition& p, const SpectralField& f, int j);
/// S_{jmin} f.
SpectralField low_frequency_part(const DyadicPartition& p, const SpectralField& f);

/// sum_j 2^{js} ||Delta_j f||_{L2(S)}.
double besov_norm(const DyadicPartition& p, const SpectralField& f, double s);
/// The derivative-reduction convention for large s: ||d_x^m f||_{B^{s-m}}
/// with m the positive integer such that 1/2 + m < s <= 3/2 + m; for
/// s <= 3/2 identical to besov_norm.
double besov_norm_derivative_convention(const DyadicPartition& p, const SpectralField& f, double s);

/// Time-indexed block norms. Optional weights hold samples f(t_i) >= 0 of a
/// rate function for the time-weighted norms.
struct NormSeries {
  std::vector<double> times;
  std::vector<BlockNorms> blocks;
  std::vector<double> weights;

  void append(double t, BlockNorms b);
  void append(double t, BlockNorms b, double weight);
  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  bool has_weights() const { return !weights.empty(); }
};

inline constexpr double kLInfinity = std::numeric_limits<double>::infinity();

/// sum_j 2^{js} (int_0^T b_j(t)^p dt)^{1/p}, trapezoid over recorded times;
/// p = kLInfinity takes the per-block maximum. p must be 1, 2 or infinity.
double chemin_lerner(const NormSeries& series, double p, double s);
/// As chemin_lerner with the integrand multiplied by the recorded weights.
double time_weighted_norm(const NormSeries& series, double p, double s);

/// Multiplies u^(k, .) by e^{r |xi_k|}. Throws NumericalError when
/// r * max|xi| exceeds 700.
SpectralField apply_analytic_weight(const SpectralField& f, double radius);

/// Empirical exponential decay rate of block norms against block centres.
/// Throws ValidationError with fewer than four usable blocks.
double estimate_radius(const DyadicPartition& p, const SpectralField& f);

struct BernsteinCheck {
  double ratio = 0.0;
  double lower = 0.75;
  double upper = 8.0 / 3.0;
  bool within(double slack = 1e-10) const { return ratio >= lower - slack && ratio <= upper + slack; }
};

/// ||d_x Delta_j f|| / (2^j (2 pi / lx) ||Delta_j f||). Throws ValidationError
/// for a zero block.
BernsteinCheck bernstein_check(const DyadicPartition& p, const SpectralField& f, int j);

}  // namespace strip
