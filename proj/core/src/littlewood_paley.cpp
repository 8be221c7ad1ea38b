#include "strip/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace strip {
namespace {

constexpr double kChiFlat = 0.75;
constexpr double kChiZero = 4.0 / 3.0;

double mollifier_tail(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

void check_exponent(double p) {
  if (p != 1.0 && p != 2.0 && p != kLInfinity) {
    throw ValidationError("time exponent must be 1, 2 or infinity");
  }
}

// Per-block time norm (int b^p w dt)^{1/p}, trapezoid on the recorded grid.
double block_time_norm(const NormSeries& series, std::size_t block, double p, bool weighted) {
  const auto& t = series.times;
  auto sample = [&](std::size_t n) {
    const double b = series.blocks[n].values[block];
    const double w = weighted ? series.weights[n] : 1.0;
    return w * std::pow(b, p);
  };
  if (p == kLInfinity) {
    double m = 0.0;
    for (std::size_t n = 0; n < t.size(); ++n) m = std::max(m, series.blocks[n].values[block]);
    return m;
  }
  double integral = 0.0;
  for (std::size_t n = 1; n < t.size(); ++n) {
    integral += 0.5 * (t[n] - t[n - 1]) * (sample(n - 1) + sample(n));
  }
  return std::pow(integral, 1.0 / p);
}

void check_series(const NormSeries& series) {
  if (series.empty()) throw ValidationError("norm series is empty");
  if (series.blocks.size() != series.times.size()) {
    throw ValidationError("norm series: times and blocks lengths differ");
  }
  for (std::size_t n = 1; n < series.blocks.size(); ++n) {
    if (series.blocks[n].jmin != series.blocks[0].jmin ||
        series.blocks[n].values.size() != series.blocks[0].values.size()) {
      throw ValidationError("norm series: block ranges differ between samples");
    }
  }
}

}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = mollifier_tail(t);
  const double b = mollifier_tail(1.0 - t);
  return a / (a + b);
}

double chi(double tau) {
  return 1.0 - smooth_step((std::abs(tau) - kChiFlat) / (kChiZero - kChiFlat));
}

double phi(double tau) { return chi(0.5 * tau) - chi(tau); }

// ---------------------------------------------------------------------------

DyadicPartition::DyadicPartition(const Grid& grid) : grid_(grid) {
  const double xi_min = grid.base_wavenumber();
  const double xi_max = (grid.nx / 2) * grid.base_wavenumber();

  // Largest j with 2^{-j} xi_min >= 4/3: phi(2^{-j} xi) vanishes below jmin
  // for every nonzero mode, so S_{jmin} keeps only k = 0.
  int lo = static_cast<int>(std::floor(std::log2(xi_min / kChiZero)));
  while (std::ldexp(xi_min, -lo) < kChiZero) --lo;
  while (std::ldexp(xi_min, -(lo + 1)) >= kChiZero) ++lo;
  // Largest j with 2^{-j} xi_max > 3/4.
  int hi = static_cast<int>(std::ceil(std::log2(xi_max / kChiFlat)));
  while (!(std::ldexp(xi_max, -hi) > kChiFlat)) --hi;
  while (std::ldexp(xi_max, -(hi + 1)) > kChiFlat) ++hi;
  jmin_ = lo;
  jmax_ = hi;

  phi_.assign(static_cast<std::size_t>(block_count()) * grid.nx, 0.0);
  chi_.assign(static_cast<std::size_t>(grid.nx), 0.0);
  for (int ki = 0; ki < grid.nx; ++ki) {
    const double xi = std::abs(grid.xi(ki));
    chi_[ki] = chi(std::ldexp(xi, -jmin_));
    for (int j = jmin_; j <= jmax_; ++j) {
      phi_[static_cast<std::size_t>(j - jmin_) * grid.nx + ki] = phi(std::ldexp(xi, -j));
    }
  }
}

std::span<const double> DyadicPartition::phi_values(int j) const {
  if (!active(j)) throw ValidationError("dyadic block " + std::to_string(j) + " outside active range");
  return {phi_.data() + static_cast<std::size_t>(j - jmin_) * grid_.nx, static_cast<std::size_t>(grid_.nx)};
}

double DyadicPartition::centre(int j) const { return std::ldexp(grid_.base_wavenumber(), j); }

DyadicPartition build_partition(const Grid& grid) { return DyadicPartition(grid); }

// ---------------------------------------------------------------------------

std::vector<double> mode_energies(const SpectralField& f) {
  const Grid& g = f.grid();
  std::vector<double> e(static_cast<std::size_t>(g.nx));
  for (int ki = 0; ki < g.nx; ++ki) e[ki] = g.lx * trapz_abs2(f.profile(ki), g.dy());
  return e;
}

void accumulate_mode_energies(std::vector<double>& energies, const SpectralField& g, double scale) {
  const Grid& gr = g.grid();
  for (int ki = 0; ki < gr.nx; ++ki) energies[ki] += scale * scale * gr.lx * trapz_abs2(g.profile(ki), gr.dy());
}

void weight_mode_energies(std::vector<double>& energies, const Grid& grid, double radius) {
  if (radius == 0.0) return;
  for (int ki = 0; ki < grid.nx; ++ki) energies[ki] *= std::exp(2.0 * radius * std::abs(grid.xi(ki)));
}

BlockNorms block_norms_from_energies(const DyadicPartition& p, std::span<const double> energies) {
  BlockNorms out{p.jmin(), std::vector<double>(static_cast<std::size_t>(p.block_count()), 0.0)};
  for (int j = p.jmin(); j <= p.jmax(); ++j) {
    auto w = p.phi_values(j);
    double sum = 0.0;
    for (std::size_t ki = 0; ki < w.size(); ++ki) sum += w[ki] * w[ki] * energies[ki];
    out.values[static_cast<std::size_t>(j - p.jmin())] = std::sqrt(sum);
  }
  return out;
}

BlockNorms block_norms(const DyadicPartition& p, const SpectralField& f) {
  return block_norms_from_energies(p, mode_energies(f));
}

double besov_from_blocks(const BlockNorms& blocks, double s) {
  double sum = 0.0;
  for (std::size_t n = 0; n < blocks.values.size(); ++n) {
    sum += std::exp2(s * (blocks.jmin + static_cast<int>(n))) * blocks.values[n];
  }
  return sum;
}

SpectralField dyadic_block(const DyadicPartition& p, const SpectralField& f, int j) {
  auto w = p.phi_values(j);
  SpectralField out = f;
  for (int ki = 0; ki < f.grid().nx; ++ki) {
    for (auto& c : out.profile(ki)) c *= w[ki];
  }
  return out;
}

SpectralField low_frequency_part(const DyadicPartition& p, const SpectralField& f) {
  auto w = p.chi_values();
  SpectralField out = f;
  for (int ki = 0; ki < f.grid().nx; ++ki) {
    for (auto& c : out.profile(ki)) c *= w[ki];
  }
  return out;
}

double besov_norm(const DyadicPartition& p, const SpectralField& f, double s) {
  return besov_from_blocks(block_norms(p, f), s);
}

double besov_norm_derivative_convention(const DyadicPartition& p, const SpectralField& f, double s) {
  const int m = s > 1.5 ? static_cast<int>(std::ceil(s - 1.5)) : 0;
  if (m == 0) return besov_norm(p, f, s);
  std::vector<double> e = mode_energies(f);
  const Grid& g = f.grid();
  for (int ki = 0; ki < g.nx; ++ki) e[ki] *= std::pow(g.xi(ki) * g.xi(ki), m);
  return besov_from_blocks(block_norms_from_energies(p, e), s - m);
}

// ---------------------------------------------------------------------------

void NormSeries::append(double t, BlockNorms b) {
  if (!times.empty() && !(t > times.back())) {
    throw ValidationError("norm series: times must be strictly increasing");
  }
  if (has_weights()) throw ValidationError("norm series: weighted series needs a weight sample");
  times.push_back(t);
  blocks.push_back(std::move(b));
}

void NormSeries::append(double t, BlockNorms b, double weight) {
  if (!times.empty() && !(t > times.back())) {
    throw ValidationError("norm series: times must be strictly increasing");
  }
  if (!times.empty() && !has_weights()) {
    throw ValidationError("norm series: cannot add weights to an unweighted series");
  }
  times.push_back(t);
  blocks.push_back(std::move(b));
  weights.push_back(weight);
}

double chemin_lerner(const NormSeries& series, double p, double s) {
  check_exponent(p);
  check_series(series);
  const auto& first = series.blocks.front();
  double sum = 0.0;
  for (std::size_t b = 0; b < first.values.size(); ++b) {
    sum += std::exp2(s * (first.jmin + static_cast<int>(b))) * block_time_norm(series, b, p, false);
  }
  return sum;
}

double time_weighted_norm(const NormSeries& series, double p, double s) {
  if (p != 1.0 && p != 2.0) throw ValidationError("time-weighted norm: p must be 1 or 2");
  check_series(series);
  if (series.weights.size() != series.times.size()) {
    throw ValidationError("time-weighted norm needs one weight sample per time");
  }
  for (double w : series.weights) {
    if (!(w >= 0.0)) throw ValidationError("time-weighted norm: negative weight sample");
  }
  const auto& first = series.blocks.front();
  double sum = 0.0;
  for (std::size_t b = 0; b < first.values.size(); ++b) {
    sum += std::exp2(s * (first.jmin + static_cast<int>(b))) * block_time_norm(series, b, p, true);
  }
  return sum;
}

// ---------------------------------------------------------------------------

SpectralField apply_analytic_weight(const SpectralField& f, double radius) {
  if (radius < 0.0) throw ValidationError("analytic weight radius must be nonnegative");
  const Grid& g = f.grid();
  const double xi_max = (g.nx / 2) * g.base_wavenumber();
  if (radius * xi_max > 700.0) {
    throw NumericalError("analytic weight overflow: radius " + std::to_string(radius) +
                         " times bandwidth " + std::to_string(xi_max) + " exceeds 700");
  }
  SpectralField out = f;
  if (radius == 0.0) return out;
  for (int ki = 0; ki < g.nx; ++ki) {
    const double w = std::exp(radius * std::abs(g.xi(ki)));
    for (auto& c : out.profile(ki)) c *= w;
  }
  return out;
}

double estimate_radius(const DyadicPartition& p, const SpectralField& f) {
  const BlockNorms b = block_norms(p, f);
  const double peak = *std::max_element(b.values.begin(), b.values.end());
  std::vector<double> xs;
  std::vector<double> ys;
  for (int j = p.jmin(); j <= p.jmax(); ++j) {
    const double v = b.at(j);
    if (peak > 0.0 && v > 1e-14 * peak) {
      xs.push_back(p.centre(j));
      ys.push_back(std::log(v));
    }
  }
  if (xs.size() < 4) {
    throw ValidationError("estimate_radius: insufficient spectral content (" + std::to_string(xs.size()) +
                          " usable blocks, need 4)");
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return std::max(0.0, -sxy / sxx);
}

BernsteinCheck bernstein_check(const DyadicPartition& p, const SpectralField& f, int j) {
  // Plancherel: ||d_x Delta_j f||^2 = sum_k xi_k^2 phi_j(k)^2 e_k.
  const std::vector<double> e = mode_energies(f);
  auto w = p.phi_values(j);
  const Grid& g = f.grid();
  double base = 0.0;
  double deriv = 0.0;
  for (int ki = 0; ki < g.nx; ++ki) {
    const double m = w[ki] * w[ki] * e[ki];
    base += m;
    deriv += g.xi(ki) * g.xi(ki) * m;
  }
  if (!(base > 0.0)) throw ValidationError("bernstein_check: block " + std::to_string(j) + " is zero");
  BernsteinCheck out;
  out.ratio = std::sqrt(deriv / base) / p.centre(j);
  return out;
}

}  // namespace strip
