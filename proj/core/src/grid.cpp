#include "strip/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace strip {

Grid::Grid(int nx_, int ny_, double lx_) : nx(nx_), ny(ny_), lx(lx_) {
  if (nx <= 0 || nx % 2 != 0) {
    throw ValidationError("grid: nx must be a positive even integer, got " + std::to_string(nx));
  }
  if (ny < 3) throw ValidationError("grid: ny must be >= 3, got " + std::to_string(ny));
  if (!(lx > 0.0)) throw ValidationError("grid: lx must be positive");
}

double Grid::base_wavenumber() const { return 2.0 * std::numbers::pi / lx; }

double Grid::xi(int ki) const { return wavenumber(ki) * base_wavenumber(); }

// ---------------------------------------------------------------------------

SpectralField::SpectralField(const Grid& grid, bool real_valued)
    : grid_(grid), coeffs_(grid.size(), Complex{}), real_valued_(real_valued) {}

double SpectralField::conjugate_symmetry_defect() const {
  double worst = 0.0;
  for (int ki = 0; ki < grid_.nx; ++ki) {
    const int mirror = (grid_.nx - ki) % grid_.nx;
    for (int j = 0; j < grid_.ny; ++j) {
      worst = std::max(worst, std::abs((*this)(mirror, j) - std::conj((*this)(ki, j))));
    }
  }
  return worst;
}

double SpectralField::wall_magnitude() const {
  double worst = 0.0;
  for (int ki = 0; ki < grid_.nx; ++ki) {
    worst = std::max({worst, std::abs((*this)(ki, 0)), std::abs((*this)(ki, grid_.ny - 1))});
  }
  return worst;
}

double SpectralField::max_abs() const {
  double worst = 0.0;
  for (const auto& c : coeffs_) worst = std::max(worst, std::abs(c));
  return worst;
}

bool SpectralField::all_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

void SpectralField::dealias() {
  const int cutoff = grid_.dealias_cutoff();
  for (int ki = 0; ki < grid_.nx; ++ki) {
    if (std::abs(grid_.wavenumber(ki)) > cutoff) {
      auto p = profile(ki);
      std::fill(p.begin(), p.end(), Complex{});
    }
  }
}

void SpectralField::zero_walls() {
  for (int ki = 0; ki < grid_.nx; ++ki) {
    (*this)(ki, 0) = 0.0;
    (*this)(ki, grid_.ny - 1) = 0.0;
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw ValidationError("field grids differ");
  for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] += other.coeffs_[n];
  real_valued_ = real_valued_ && other.real_valued_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw ValidationError("field grids differ");
  for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] -= other.coeffs_[n];
  real_valued_ = real_valued_ && other.real_valued_;
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

CellField& CellField::operator+=(const CellField& other) {
  if (!(grid_ == other.grid_)) throw ValidationError("cell field grids differ");
  for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += other.values_[n];
  return *this;
}

double CellField::l2_norm() const {
  double sum = 0.0;
  for (const auto& c : values_) sum += std::norm(c);
  return std::sqrt(grid_.lx * sum * grid_.dy());
}

// ---------------------------------------------------------------------------

SpectralField ddx(const SpectralField& s) {
  const Grid& g = s.grid();
  SpectralField out(g, s.real_valued());
  for (int ki = 0; ki < g.nx; ++ki) {
    // The Nyquist row has no real derivative; drop it.
    if (g.is_nyquist(ki)) continue;
    const Complex ik{0.0, g.xi(ki)};
    auto src = s.profile(ki);
    auto dst = out.profile(ki);
    for (int j = 0; j < g.ny; ++j) dst[j] = ik * src[j];
  }
  return out;
}

SpectralField ddy(const SpectralField& s, int order) {
  const Grid& g = s.grid();
  if (order != 1 && order != 2) throw ValidationError("ddy: order must be 1 or 2");
  const int n = g.ny;
  const double h = g.dy();
  SpectralField out(g, s.real_valued());
  for (int ki = 0; ki < g.nx; ++ki) {
    auto f = s.profile(ki);
    auto d = out.profile(ki);
    if (order == 1) {
      const double c = 1.0 / (2.0 * h);
      for (int j = 1; j < n - 1; ++j) d[j] = (f[j + 1] - f[j - 1]) * c;
      d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * c;
      d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * c;
    } else {
      const double c = 1.0 / (h * h);
      for (int j = 1; j < n - 1; ++j) d[j] = (f[j + 1] - 2.0 * f[j] + f[j - 1]) * c;
      if (n >= 4) {
        d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * c;
        d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * c;
      } else {
        d[0] = d[1];
        d[n - 1] = d[1];
      }
    }
  }
  return out;
}

SpectralField integrate_y(const SpectralField& s, UpperLimit upper) {
  const Grid& g = s.grid();
  const double h = g.dy();
  SpectralField out(g, s.real_valued());
  for (int ki = 0; ki < g.nx; ++ki) {
    auto f = s.profile(ki);
    auto d = out.profile(ki);
    Complex acc{};
    d[0] = acc;
    for (int j = 1; j < g.ny; ++j) {
      acc += 0.5 * h * (f[j - 1] + f[j]);
      d[j] = acc;
    }
    if (upper == UpperLimit::One) std::fill(d.begin(), d.end(), acc);
  }
  return out;
}

SpectralField vertical_velocity_from_u(const SpectralField& u, double tolerance) {
  const Grid& g = u.grid();
  for (int ki = 0; ki < g.nx; ++ki) {
    if (g.wavenumber(ki) == 0) continue;
    const double wall = std::max(std::abs(u(ki, 0)), std::abs(u(ki, g.ny - 1)));
    if (wall > tolerance) {
      throw BoundaryError("u violates the Dirichlet rows at k = " + std::to_string(g.wavenumber(ki)) +
                          " (|u| = " + std::to_string(wall) + ")");
    }
  }
  SpectralField v = integrate_y(ddx(u), UpperLimit::Y);
  v *= -1.0;
  for (int ki = 0; ki < g.nx; ++ki) {
    const double top = std::abs(v(ki, g.ny - 1));
    if (top > tolerance) {
      throw CompatibilityError("compatibility violation: |v(k=" + std::to_string(g.wavenumber(ki)) +
                               ", y=1)| = " + std::to_string(top) +
                               " (d_x of the vertical mean of u is not zero)");
    }
  }
  v.zero_walls();
  return v;
}

SpectralField divergence(const SpectralField& u, const SpectralField& v) {
  if (!(u.grid() == v.grid())) throw ValidationError("divergence: grids differ");
  return ddx(u) + ddy(v, 1);
}

CellField cell_divergence(const SpectralField& u, const SpectralField& v) {
  const Grid& g = u.grid();
  if (!(g == v.grid())) throw ValidationError("cell_divergence: grids differ");
  CellField out(g);
  const double h = g.dy();
  for (int ki = 0; ki < g.nx; ++ki) {
    const Complex ik = g.is_nyquist(ki) ? Complex{} : Complex{0.0, g.xi(ki)};
    auto pu = u.profile(ki);
    auto pv = v.profile(ki);
    auto d = out.profile(ki);
    for (int c = 0; c < g.ny - 1; ++c) {
      d[c] = 0.5 * ik * (pu[c] + pu[c + 1]) + (pv[c + 1] - pv[c]) / h;
    }
  }
  return out;
}

double poincare_constant(const Grid& grid) {
  const double h = grid.dy();
  // Smallest eigenvalue of -D2 with Dirichlet rows: (2/h^2)(1 - cos(pi h)).
  return (1.0 - std::cos(std::numbers::pi * h)) / (h * h);
}

// ---------------------------------------------------------------------------

double trapz_abs2(std::span<const Complex> p, double dy) {
  if (p.empty()) return 0.0;
  double sum = 0.5 * (std::norm(p.front()) + std::norm(p.back()));
  for (std::size_t j = 1; j + 1 < p.size(); ++j) sum += std::norm(p[j]);
  return sum * dy;
}

double l2_norm_sq(const SpectralField& f) {
  const Grid& g = f.grid();
  double sum = 0.0;
  for (int ki = 0; ki < g.nx; ++ki) sum += trapz_abs2(f.profile(ki), g.dy());
  return g.lx * sum;
}

double l2_norm(const SpectralField& f) { return std::sqrt(l2_norm_sq(f)); }

double inner_product(const SpectralField& f, const SpectralField& g) {
  const Grid& gr = f.grid();
  if (!(gr == g.grid())) throw ValidationError("inner_product: grids differ");
  const double h = gr.dy();
  double sum = 0.0;
  for (int ki = 0; ki < gr.nx; ++ki) {
    auto a = f.profile(ki);
    auto b = g.profile(ki);
    for (int j = 0; j < gr.ny; ++j) {
      const double w = (j == 0 || j == gr.ny - 1) ? 0.5 : 1.0;
      sum += w * (std::conj(a[j]) * b[j]).real();
    }
  }
  return gr.lx * sum * h;
}

double ddx_norm_sq(const SpectralField& f) {
  const Grid& g = f.grid();
  double sum = 0.0;
  for (int ki = 0; ki < g.nx; ++ki) {
    if (g.is_nyquist(ki)) continue;
    sum += g.xi(ki) * g.xi(ki) * trapz_abs2(f.profile(ki), g.dy());
  }
  return g.lx * sum;
}

double dirichlet_gradient_norm_sq(const SpectralField& f) {
  const Grid& g = f.grid();
  double sum = 0.0;
  for (int ki = 0; ki < g.nx; ++ki) {
    auto p = f.profile(ki);
    for (int j = 0; j + 1 < g.ny; ++j) sum += std::norm(p[j + 1] - p[j]);
  }
  return g.lx * sum / g.dy();
}

double compatibility_defect(const SpectralField& u) {
  const Grid& g = u.grid();
  double worst = 0.0;
  for (int ki = 0; ki < g.nx; ++ki) {
    if (g.wavenumber(ki) == 0) continue;
    auto p = u.profile(ki);
    Complex mean = 0.5 * (p.front() + p.back());
    for (int j = 1; j + 1 < g.ny; ++j) mean += p[j];
    mean *= g.dy();
    worst = std::max(worst, std::abs(mean) * std::abs(g.xi(ki)));
  }
  return worst;
}

}  // namespace strip
