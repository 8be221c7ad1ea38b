#pragma once

// Discrete fields on the periodic strip [0, lx) x [0, 1].
//
// x is represented by Fourier modes (FFT storage order), y by a uniform grid
// with both walls included. Everything in y is second order: centred
// differences, one-sided 3-point stencils at the walls, composite trapezoid
// quadrature.

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "strip/errors.hpp"

namespace strip {

using Complex = std::complex<double>;

struct Grid {
  int nx = 0;
  int ny = 0;
  double lx = 2.0 * std::numbers::pi;

  Grid() = default;
  Grid(int nx, int ny, double lx = 2.0 * std::numbers::pi);

  double dy() const { return 1.0 / (ny - 1); }
  double dx() const { return lx / nx; }
  double x(int i) const { return i * dx(); }
  double y(int j) const { return j * dy(); }

  /// Integer wavenumber held in storage row ki (FFT order).
  int wavenumber(int ki) const { return ki <= nx / 2 ? ki : ki - nx; }
  /// Storage row of integer wavenumber k, k in (-nx/2, nx/2].
  int row_of(int k) const { return k >= 0 ? k : k + nx; }
  /// Dimensional wavenumber k * 2 pi / lx.
  double xi(int ki) const;
  double base_wavenumber() const;
  /// Largest |k| kept by the 2/3 rule.
  int dealias_cutoff() const { return (nx - 1) / 3; }
  bool is_nyquist(int ki) const { return ki == nx / 2; }

  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.nx == b.nx && a.ny == b.ny && a.lx == b.lx;
  }
};

/// Per-wavenumber complex y-profiles, coefficient (ki, j) = u^(k, y_j).
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const Grid& grid, bool real_valued = true);

  const Grid& grid() const { return grid_; }
  bool real_valued() const { return real_valued_; }
  void set_real_valued(bool flag) { real_valued_ = flag; }

  Complex& operator()(int ki, int j) { return coeffs_[index(ki, j)]; }
  const Complex& operator()(int ki, int j) const { return coeffs_[index(ki, j)]; }

  std::span<Complex> profile(int ki) {
    return {coeffs_.data() + static_cast<std::size_t>(ki) * grid_.ny,
            static_cast<std::size_t>(grid_.ny)};
  }
  std::span<const Complex> profile(int ki) const {
    return {coeffs_.data() + static_cast<std::size_t>(ki) * grid_.ny,
            static_cast<std::size_t>(grid_.ny)};
  }

  std::span<Complex> data() { return coeffs_; }
  std::span<const Complex> data() const { return coeffs_; }

  /// max |u^(-k) - conj(u^(k))| over all modes and rows.
  double conjugate_symmetry_defect() const;
  /// Largest |coefficient| on the wall rows y = 0 and y = 1.
  double wall_magnitude() const;
  double max_abs() const;
  bool all_finite() const;

  /// Zero every mode with |k| above the 2/3 cutoff (and the Nyquist row).
  void dealias();
  void zero_walls();

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

 private:
  std::size_t index(int ki, int j) const {
    return static_cast<std::size_t>(ki) * grid_.ny + static_cast<std::size_t>(j);
  }

  Grid grid_;
  std::vector<Complex> coeffs_;
  bool real_valued_ = true;
};

/// Real samples, value (i, j) = f(x_i, y_j).
class PhysicalField {
 public:
  PhysicalField() = default;
  explicit PhysicalField(const Grid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

  const Grid& grid() const { return grid_; }
  double& operator()(int i, int j) { return values_[static_cast<std::size_t>(i) * grid_.ny + j]; }
  double operator()(int i, int j) const {
    return values_[static_cast<std::size_t>(i) * grid_.ny + j];
  }
  std::span<double> data() { return values_; }
  std::span<const double> data() const { return values_; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Complex per-mode values at the ny - 1 cell centres y_{j+1/2}.
/// Holds box divergences and the anisotropic solver's pressure.
class CellField {
 public:
  CellField() = default;
  explicit CellField(const Grid& grid)
      : grid_(grid), values_(static_cast<std::size_t>(grid.nx) * (grid.ny - 1)) {}

  const Grid& grid() const { return grid_; }
  int cells() const { return grid_.ny - 1; }
  Complex& operator()(int ki, int c) { return values_[static_cast<std::size_t>(ki) * cells() + c]; }
  const Complex& operator()(int ki, int c) const {
    return values_[static_cast<std::size_t>(ki) * cells() + c];
  }
  std::span<Complex> profile(int ki) {
    return {values_.data() + static_cast<std::size_t>(ki) * cells(), static_cast<std::size_t>(cells())};
  }
  std::span<const Complex> profile(int ki) const {
    return {values_.data() + static_cast<std::size_t>(ki) * cells(), static_cast<std::size_t>(cells())};
  }
  std::span<const Complex> data() const { return values_; }

  CellField& operator+=(const CellField& other);
  /// L2(S) norm with the midpoint rule in y.
  double l2_norm() const;

 private:
  Grid grid_;
  std::vector<Complex> values_;
};

// ---- transforms (transform.cpp) ----

SpectralField forward_transform(const PhysicalField& f);
/// Requires the real-valued flag. Throws NumericalError when the imaginary
/// residue of the reconstruction exceeds 1e-10 (relative to the field scale).
PhysicalField inverse_transform(const SpectralField& s);

// ---- derivatives and quadrature ----

SpectralField ddx(const SpectralField& s);
/// order 1: centred interior, one-sided second-order at the walls.
/// order 2: centred interior, second-order one-sided 4-point at the walls.
SpectralField ddy(const SpectralField& s, int order);

enum class UpperLimit { Y, One };
SpectralField integrate_y(const SpectralField& s, UpperLimit upper);

/// v = -int_0^y d_x u dy'. Throws CompatibilityError when |v^(k, 1)| exceeds
/// `tolerance` for some k, BoundaryError when u's k != 0 wall rows exceed it.
/// The returned v has exactly zero wall rows.
SpectralField vertical_velocity_from_u(const SpectralField& u, double tolerance = 1e-8);

/// Node-centred divergence ddx(u) + ddy(v, 1).
SpectralField divergence(const SpectralField& u, const SpectralField& v);
/// Box divergence ik (u_j + u_{j+1})/2 + (v_{j+1} - v_j)/dy on cells. Exactly
/// zero for (u, vertical_velocity_from_u(u)).
CellField cell_divergence(const SpectralField& u, const SpectralField& v);

/// Sharp constant K in K ||f||^2 <= 1/2 ||d_y f||^2 for Dirichlet profiles:
/// half the smallest eigenvalue of the 3-point Dirichlet Laplacian.
double poincare_constant(const Grid& grid);

// ---- norms ----

/// Composite trapezoid of |p|^2 over [0, 1].
double trapz_abs2(std::span<const Complex> profile, double dy);
/// ||f||^2_{L2(S)} = lx sum_k int_0^1 |f^(k, y)|^2 dy.
double l2_norm_sq(const SpectralField& f);
double l2_norm(const SpectralField& f);
/// Re (f, g)_{L2(S)}.
double inner_product(const SpectralField& f, const SpectralField& g);
/// ||d_x f||^2 computed spectrally.
double ddx_norm_sq(const SpectralField& f);
/// lx sum_k sum_j |f_{j+1} - f_j|^2 / dy: the discrete Dirichlet form that
/// matches the 3-point Laplacian by summation by parts.
double dirichlet_gradient_norm_sq(const SpectralField& f);
/// max over k != 0 of |int_0^1 u^(k, y) dy| * |xi_k|.
double compatibility_defect(const SpectralField& u);

}  // namespace strip
