#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "strip/grid.hpp"

namespace strip::testing {

inline constexpr double kPi = std::numbers::pi;

inline PhysicalField sample(const Grid& g, const std::function<double(double, double)>& f) {
  PhysicalField out(g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) out(i, j) = f(g.x(i), g.y(j));
  return out;
}

inline SpectralField spectral(const Grid& g, const std::function<double(double, double)>& f) {
  return forward_transform(sample(g, f));
}

/// Random band-limited real field; wall rows zeroed when asked.
inline SpectralField random_field(const Grid& g, std::mt19937_64& rng, bool dirichlet = false) {
  std::normal_distribution<double> n(0.0, 1.0);
  PhysicalField f(g);
  for (auto& x : f.data()) x = n(rng);
  SpectralField s = forward_transform(f);
  s.dealias();
  if (dirichlet) s.zero_walls();
  return s;
}

/// Mode-k profile set explicitly, conjugate partner filled in.
inline void set_mode(SpectralField& s, int k, const std::function<Complex(double)>& profile) {
  const Grid& g = s.grid();
  for (int j = 0; j < g.ny; ++j) {
    const Complex c = profile(g.y(j));
    s(g.row_of(k), j) = c;
    if (k != 0) s(g.row_of(-k), j) = std::conj(c);
  }
}

inline double max_diff(const PhysicalField& a, const PhysicalField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace strip::testing
