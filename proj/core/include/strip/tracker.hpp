#pragma once

// Analyticity-radius bookkeeping. The radii a - lambda eta, a - lambda theta
// and a - mu zeta shrink at the rates
//
//   eta'   = eps ||d_x u_Psi||_{B^1/2} + ||d_y u_Psi||_{B^1/2}   (anisotropic)
//   theta' = ||d_y u_Phi||_{B^1/2}                               (hydrostatic)
//   zeta'  = eta' + theta'
//
// and a band is alive while its radius stays positive.

#include <optional>
#include <stdexcept>
#include <string>

#include "strip/anisotropic.hpp"
#include "strip/hydrostatic.hpp"

namespace strip {

/// An analytic band was exhausted (T* or its hydrostatic analogue reached).
class BandExhausted : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct RadiusRates {
  double eta = 0.0;
  double theta = 0.0;
  double zeta = 0.0;
};

struct RadiusState {
  double a = 0.5;
  double lambda = 4.0;
  double mu = 16.0;
  double eta = 0.0;
  double theta = 0.0;
  double zeta = 0.0;
  double kappa = 0.0;
  std::optional<RadiusRates> previous;

  double radius_psi() const { return a - lambda * eta; }
  double radius_phi() const { return a - lambda * theta; }
  double radius_theta() const { return a - mu * zeta; }
  bool eta_alive() const { return eta < a / lambda; }
  bool theta_alive() const { return theta < a / lambda; }
  bool zeta_alive() const { return mu * zeta < a; }
  bool alive() const { return eta_alive() && theta_alive() && zeta_alive(); }
};

/// Validated initial state (a > 0, lambda > 0, mu >= lambda).
RadiusState make_radius_state(double a, double lambda, double mu, double kappa);

double eta_rate(const ANSState& ans, const RadiusState& rs);
double theta_rate(const HydroState& hydro, const RadiusState& rs);
double zeta_rate(const ANSState& ans, const HydroState& hydro, const RadiusState& rs);

/// Trapezoid in time using the previous rate sample; Euler on the first call.
RadiusState advance_radius(const RadiusState& rs, const RadiusRates& rates, double dt);

enum class Phase { Psi, Phi, Theta };

/// e^{r|D_x|} f with r the radius of the chosen phase.
SpectralField weighted_field(const SpectralField& f, const RadiusState& rs, Phase which);

/// Samples of e^{kappa t}(u, eps v)_Psi and e^{kappa t} d_y (u, eps v)_Psi.
struct AprioriSeries {
  double eps = 1.0;
  NormSeries state;
  NormSeries dy;

  void observe(const DyadicPartition& p, const ANSState& s, const RadiusState& rs);
};

struct AprioriReport {
  double linf_half = 0.0;       // L~^inf(B^1/2) of the weighted state
  double dy_l2_half = 0.0;      // L~^2(B^1/2) of its d_y
  double eps2_l2_three_half = 0.0;  // eps^2 L~^2(B^3/2)
  double ratio_linf = 0.0;
  double ratio_dy = 0.0;
  double ratio_three_half = 0.0;
  /// eta exceeded a / (2 lambda).
  bool margin_exceeded = false;

  bool within(double c) const {
    return ratio_linf <= c && ratio_dy <= c && ratio_three_half <= c;
  }
};

inline constexpr double kMonitorConstant = 10.0;

AprioriReport apriori_monitor(const AprioriSeries& series, const RadiusState& rs, double data_norm);

}  // namespace strip
