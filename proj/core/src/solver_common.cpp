#include "strip/solver_common.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace strip {

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<Complex> rhs) {
  const std::size_t n = diag.size();
  if (n == 0) return;
  std::vector<double> c(n);
  double denom = diag[0];
  c[0] = n > 1 ? upper[0] / denom : 0.0;
  rhs[0] /= denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = diag[i] - lower[i] * c[i - 1];
    c[i] = i + 1 < n ? upper[i] / denom : 0.0;
    rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

void DirichletDiffusion::apply(std::span<const Complex> f, double rate,
                               std::span<Complex> out) const {
  const double inv_h2 = 1.0 / (dy_ * dy_);
  out[0] = 0.0;
  out[ny_ - 1] = 0.0;
  for (int j = 1; j < ny_ - 1; ++j) {
    const Complex below = j > 1 ? f[j - 1] : Complex{};
    const Complex above = j < ny_ - 2 ? f[j + 1] : Complex{};
    out[j] = (below - 2.0 * f[j] + above) * inv_h2 - rate * f[j];
  }
}

void DirichletDiffusion::implicit_solve(std::span<Complex> rhs, double rate, double dt) const {
  const int n = ny_ - 2;
  const double off = -0.5 * dt / (dy_ * dy_);
  std::vector<double> lower(n, off), upper(n, off), diag(n, 1.0 + 0.5 * dt * rate - 2.0 * off);
  solve_tridiagonal(lower, diag, upper, rhs.subspan(1, n));
  rhs[0] = 0.0;
  rhs[ny_ - 1] = 0.0;
}

double analytic_data_norm(const DyadicPartition& p, const SpectralField& u, const SpectralField* v,
                          double scale, double a) {
  auto energies = mode_energies(u);
  if (v != nullptr) accumulate_mode_energies(energies, *v, scale);
  weight_mode_energies(energies, u.grid(), a);
  return besov_from_blocks(block_norms_from_energies(p, energies), 0.5);
}

SpectralField dealiased_product(const PhysicalField& a, const PhysicalField& b, bool dealias) {
  PhysicalField prod(a.grid());
  auto dst = prod.data();
  auto x = a.data();
  auto y = b.data();
  for (std::size_t n = 0; n < dst.size(); ++n) dst[n] = x[n] * y[n];
  SpectralField out = forward_transform(prod);
  if (dealias) out.dealias();
  return out;
}

long step_count(double t_end, double dt) {
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  if (t_end < 0.0) throw ValidationError("t_end must be nonnegative");
  const double ratio = t_end / dt;
  const long n = std::lround(ratio);
  if (std::abs(ratio - static_cast<double>(n)) > 1e-6) {
    throw ValidationError("t_end = " + std::to_string(t_end) + " is not a multiple of dt = " +
                          std::to_string(dt));
  }
  return n;
}

double advective_cfl(const SpectralField& u, const SpectralField& v, double dt) {
  const Grid& g = u.grid();
  const PhysicalField pu = inverse_transform(u);
  const PhysicalField pv = inverse_transform(v);
  double mu = 0.0;
  double mv = 0.0;
  for (double x : pu.data()) mu = std::max(mu, std::abs(x));
  for (double x : pv.data()) mv = std::max(mv, std::abs(x));
  return dt * (mu / g.dx() + mv / g.dy());
}

}  // namespace strip
