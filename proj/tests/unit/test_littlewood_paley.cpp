#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "strip/littlewood_paley.hpp"
#include "test_support.hpp"

namespace strip {
namespace {

using testing::kPi;

// Independent cutoff: C-infinity step exp(-1/t) / (exp(-1/t) + exp(-1/(1-t)))
// taking chi from 1 at 3/4 to 0 at 4/3.
double oracle_chi(double tau) {
  const double t = (std::abs(tau) - 0.75) / (4.0 / 3.0 - 0.75);
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return 1.0 - a / (a + b);
}

double oracle_phi(double tau) { return oracle_chi(tau / 2) - oracle_chi(tau); }

SpectralField single_mode(const Grid& g, int k, double amp = 1.0) {
  SpectralField s(g);
  testing::set_mode(s, k, [&](double y) { return Complex(amp * std::sin(kPi * y)); });
  return s;
}

TEST(Cutoffs, SupportAndOrigin) {
  EXPECT_EQ(chi(0.0), 1.0);
  EXPECT_EQ(phi(0.0), 0.0);
  EXPECT_EQ(phi(8.0 / 3.0 + 0.01), 0.0);
  EXPECT_EQ(phi(0.74), 0.0);
  EXPECT_EQ(chi(4.0 / 3.0 + 1e-9), 0.0);
  for (double tau = 0.0; tau < 4.0; tau += 0.013) {
    EXPECT_NEAR(chi(tau), oracle_chi(tau), 1e-15);
    EXPECT_GE(phi(tau), 0.0);
  }
}

TEST(Cutoffs, PartitionOfUnityOnTheLine) {
  for (double tau : {0.1, 0.77, 1.0, 1.3, 2.0, 5.5, 100.0}) {
    double sum = 0.0;
    for (int j = -20; j <= 20; ++j) sum += phi(std::ldexp(tau, -j));
    EXPECT_NEAR(sum, 1.0, 1e-12) << tau;
  }
}

TEST(Partition, UnityAtGridWavenumbers) {
  for (int nx : {16, 64, 256}) {
    const Grid g(nx, 9);
    const DyadicPartition p(g);
    for (int ki = 0; ki < nx; ++ki) {
      double sum = p.chi_values()[ki];
      for (int j = p.jmin(); j <= p.jmax(); ++j) sum += p.phi_values(j)[ki];
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
    EXPECT_EQ(p.chi_values()[0], 1.0);
    for (int ki = 1; ki < nx; ++ki) EXPECT_EQ(p.chi_values()[ki], 0.0);
  }
  const DyadicPartition p64(Grid(64, 9));
  EXPECT_EQ(p64.jmin(), -1);
  EXPECT_EQ(p64.jmax(), 5);
}

TEST(Blocks, MeanModeOnlyInLowPart) {
  const Grid g(32, 9);
  const DyadicPartition p(g);
  const SpectralField f = single_mode(g, 0);
  for (int j = p.jmin(); j <= p.jmax(); ++j) EXPECT_EQ(dyadic_block(p, f, j).max_abs(), 0.0);
  EXPECT_EQ((low_frequency_part(p, f) - f).max_abs(), 0.0);
}

TEST(Blocks, ModeTwoSitsInBlocksZeroAndOne) {
  const Grid g(32, 9);
  const DyadicPartition p(g);
  const BlockNorms b = block_norms(p, single_mode(g, 2));
  for (int j = p.jmin(); j <= p.jmax(); ++j) {
    const bool expected = j == 0 || j == 1;
    EXPECT_EQ(b.at(j) > 0.0, expected) << j;
  }
}

TEST(Blocks, Reconstruction) {
  const Grid g(64, 17);
  const DyadicPartition p(g);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const SpectralField f = testing::random_field(g, rng);
    SpectralField sum = low_frequency_part(p, f);
    for (int j = p.jmin(); j <= p.jmax(); ++j) sum += dyadic_block(p, f, j);
    EXPECT_LE((sum - f).max_abs(), 1e-12 * f.max_abs());
  }
}

TEST(Besov, SingleModeBruteForce) {
  const Grid g(64, 129);
  const DyadicPartition p(g);
  const double delta = 1e-2;
  const SpectralField f = testing::spectral(g, [&](double x, double y) { return delta * std::cos(x) * std::sin(2 * kPi * y); });
  // ||f||^2 = lx * 2 |delta/2|^2 * trapz(sin^2) with trapz(sin^2(2 pi y)) = 1/2 exactly.
  const double l2 = std::sqrt(2 * kPi * 2 * (delta * delta / 4) * 0.5);
  double expected = 0.0;
  for (int j : {-1, 0}) expected += std::pow(2.0, 0.5 * j) * oracle_phi(std::ldexp(1.0, -j)) * l2;
  EXPECT_NEAR(besov_norm(p, f, 0.5), expected, 1e-12 * expected);
  EXPECT_EQ(besov_norm(p, SpectralField(g), 0.5), 0.0);
}

TEST(Besov, TriangleAndMonotonicity) {
  const Grid g(64, 17);
  const DyadicPartition p(g);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    SpectralField f = testing::random_field(g, rng);
    const SpectralField h = testing::random_field(g, rng);
    EXPECT_LE(besov_norm(p, f + h, 0.5), besov_norm(p, f, 0.5) + besov_norm(p, h, 0.5) + 1e-12);
    // High-pass: |k| >= 2 so every carrying block has j >= 0.
    for (int k : {0, 1, -1})
      for (int j = 0; j < g.ny; ++j) f(g.row_of(k), j) = 0.0;
    EXPECT_LE(besov_norm(p, f, 0.5), besov_norm(p, f, 1.5));
    EXPECT_LE(besov_norm(p, f, -0.5), besov_norm(p, f, 0.5));
  }
}

TEST(Besov, DerivativeConventionAgreesBelowThreeHalves) {
  const Grid g(64, 17);
  const DyadicPartition p(g);
  std::mt19937_64 rng(8);
  const SpectralField f = testing::random_field(g, rng);
  EXPECT_EQ(besov_norm_derivative_convention(p, f, 1.5), besov_norm(p, f, 1.5));
  EXPECT_NEAR(besov_norm_derivative_convention(p, f, 2.5), besov_norm(p, ddx(f), 1.5), 1e-12);
}

NormSeries one_block_series(double t_end, int steps, const std::function<double(double)>& b,
                            const std::function<double(double)>& w = {}) {
  NormSeries s;
  for (int n = 0; n <= steps; ++n) {
    const double t = t_end * n / steps;
    BlockNorms bn;
    bn.jmin = 0;
    bn.values = {b(t)};
    if (w) s.append(t, bn, w(t));
    else s.append(t, bn);
  }
  return s;
}

TEST(CheminLerner, ClosedForms) {
  const NormSeries decay = one_block_series(1.0, 1000, [](double t) { return std::exp(-t); });
  EXPECT_NEAR(chemin_lerner(decay, 2.0, 0.0), std::sqrt((1 - std::exp(-2.0)) / 2), 1e-3);
  EXPECT_NEAR(chemin_lerner(decay, kLInfinity, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(chemin_lerner(decay, 1.0, 0.0), 1 - std::exp(-1.0), 1e-6);

  const Grid g(64, 17);
  const DyadicPartition p(g);
  std::mt19937_64 rng(2);
  const BlockNorms fixed = block_norms(p, testing::random_field(g, rng));
  NormSeries constant;
  for (int n = 0; n <= 10; ++n) constant.append(0.4 * n, fixed);
  EXPECT_NEAR(chemin_lerner(constant, 2.0, 0.5), std::sqrt(4.0) * besov_from_blocks(fixed, 0.5), 1e-12);
  EXPECT_THROW(chemin_lerner(NormSeries{}, 2.0, 0.5), ValidationError);
  EXPECT_THROW(chemin_lerner(constant, 3.0, 0.5), ValidationError);
}

TEST(TimeWeighted, ClosedForms) {
  const NormSeries lin = one_block_series(1.0, 1000, [](double) { return 1.0; }, [](double t) { return t; });
  EXPECT_NEAR(time_weighted_norm(lin, 2.0, 0.0), std::sqrt(0.5), 1e-3);
  const NormSeries zero = one_block_series(1.0, 10, [](double) { return 1.0; }, [](double) { return 0.0; });
  EXPECT_EQ(time_weighted_norm(zero, 2.0, 0.0), 0.0);
  const NormSeries unit = one_block_series(1.0, 50, [](double t) { return std::exp(-t); }, [](double) { return 1.0; });
  EXPECT_NEAR(time_weighted_norm(unit, 2.0, 0.0), chemin_lerner(unit, 2.0, 0.0), 1e-15);
  const NormSeries negative = one_block_series(1.0, 10, [](double) { return 1.0; }, [](double t) { return t - 0.5; });
  EXPECT_THROW(time_weighted_norm(negative, 2.0, 0.0), ValidationError);
}

TEST(AnalyticWeight, MultiplierAndComposition) {
  const Grid g(32, 9);
  const SpectralField f = single_mode(g, 2);
  const SpectralField w = apply_analytic_weight(f, 0.5);
  EXPECT_NEAR(std::abs(w(2, 4)) / std::abs(f(2, 4)), std::exp(1.0), 1e-14);
  EXPECT_EQ((apply_analytic_weight(f, 0.0) - f).max_abs(), 0.0);
  std::mt19937_64 rng(6);
  const SpectralField r = testing::random_field(g, rng);
  const SpectralField twice = apply_analytic_weight(apply_analytic_weight(r, 0.2), 0.3);
  EXPECT_LE((twice - apply_analytic_weight(r, 0.5)).max_abs(), 1e-12 * twice.max_abs());
  EXPECT_THROW(apply_analytic_weight(r, 100.0), NumericalError);
}

TEST(AnalyticWeight, PhaseSubadditivity) {
  const double r = 0.37;
  for (int a = -40; a <= 40; ++a)
    for (int b = -40; b <= 40; ++b)
      EXPECT_LE(r * std::abs(a), r * std::abs(a - b) + r * std::abs(b) + 1e-13);
}

TEST(RadiusEstimate, SynthesizedSpectrum) {
  const Grid g(256, 5);
  const DyadicPartition p(g);
  SpectralField f(g);
  for (int k = 1; k < g.nx / 2; ++k)
    testing::set_mode(f, k, [&](double y) { return Complex(std::exp(-0.3 * k) * std::sin(kPi * y)); });
  const double r = estimate_radius(p, f);
  EXPECT_NEAR(r, 0.3, 0.05);
  EXPECT_NEAR(r - estimate_radius(p, apply_analytic_weight(f, 0.1)), 0.1, 0.05);
  EXPECT_THROW(estimate_radius(p, single_mode(g, 3)), ValidationError);
}

TEST(Bernstein, RingCentreAndRandomFields) {
  const Grid g(64, 9);
  const DyadicPartition p(g);
  EXPECT_NEAR(bernstein_check(p, single_mode(g, 4), 2).ratio, 1.0, 1e-14);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const SpectralField f = testing::random_field(g, rng);
    for (int j = p.jmin(); j <= p.jmax(); ++j) {
      if (block_norms(p, f).at(j) > 0.0) EXPECT_TRUE(bernstein_check(p, f, j).within()) << j;
    }
  }
  EXPECT_THROW(bernstein_check(p, SpectralField(g), 0), ValidationError);
}

TEST(Bernstein, LowPartBallBound) {
  const Grid g(64, 9);
  const DyadicPartition p(g);
  std::mt19937_64 rng(13);
  const SpectralField f = testing::random_field(g, rng);
  const SpectralField low = low_frequency_part(p, f);
  EXPECT_LE(std::sqrt(ddx_norm_sq(low)), 4.0 / 3.0 * g.base_wavenumber() * l2_norm(low) + 1e-15);
}

}  // namespace
}  // namespace strip
