#include "strip/tracker.hpp"

#include <cmath>

namespace strip {
namespace {

double weighted_besov_half(const DyadicPartition& p, const SpectralField& f, double radius) {
  std::vector<double> e = mode_energies(f);
  weight_mode_energies(e, f.grid(), radius);
  return besov_from_blocks(block_norms_from_energies(p, e), 0.5);
}

void check_alive(bool alive, const char* band, double value, const RadiusState& rs) {
  if (!alive) {
    throw BandExhausted(std::string("analytic band exhausted: ") + band + " = " + std::to_string(value) +
                        " reached a/lambda = " + std::to_string(rs.a / rs.lambda));
  }
}

}  // namespace

RadiusState make_radius_state(double a, double lambda, double mu, double kappa) {
  if (!(a > 0.0)) throw ValidationError("analytic band a must be positive");
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
  if (!(mu >= lambda)) throw ValidationError("mu must be >= lambda");
  RadiusState rs;
  rs.a = a;
  rs.lambda = lambda;
  rs.mu = mu;
  rs.kappa = kappa;
  return rs;
}

double eta_rate(const ANSState& ans, const RadiusState& rs) {
  check_alive(rs.eta_alive(), "eta", rs.eta, rs);
  const DyadicPartition p(ans.u.grid());
  const double r = rs.radius_psi();
  return ans.eps * weighted_besov_half(p, ddx(ans.u), r) + weighted_besov_half(p, ddy(ans.u, 1), r);
}

double theta_rate(const HydroState& hydro, const RadiusState& rs) {
  check_alive(rs.theta_alive(), "theta", rs.theta, rs);
  const DyadicPartition p(hydro.u.grid());
  return weighted_besov_half(p, ddy(hydro.u, 1), rs.radius_phi());
}

double zeta_rate(const ANSState& ans, const HydroState& hydro, const RadiusState& rs) {
  check_alive(rs.zeta_alive(), "mu zeta", rs.mu * rs.zeta, rs);
  return eta_rate(ans, rs) + theta_rate(hydro, rs);
}

RadiusState advance_radius(const RadiusState& rs, const RadiusRates& rates, double dt) {
  if (rates.eta < 0.0 || rates.theta < 0.0 || rates.zeta < 0.0) {
    throw ValidationError("radius rates must be nonnegative");
  }
  if (!(dt >= 0.0)) throw ValidationError("advance_radius: dt must be nonnegative");
  RadiusState out = rs;
  if (rs.previous) {
    out.eta += 0.5 * dt * (rs.previous->eta + rates.eta);
    out.theta += 0.5 * dt * (rs.previous->theta + rates.theta);
    out.zeta += 0.5 * dt * (rs.previous->zeta + rates.zeta);
  } else {
    out.eta += dt * rates.eta;
    out.theta += dt * rates.theta;
    out.zeta += dt * rates.zeta;
  }
  out.previous = rates;
  return out;
}

SpectralField weighted_field(const SpectralField& f, const RadiusState& rs, Phase which) {
  double r = 0.0;
  switch (which) {
    case Phase::Psi: r = rs.radius_psi(); break;
    case Phase::Phi: r = rs.radius_phi(); break;
    case Phase::Theta: r = rs.radius_theta(); break;
  }
  if (r < 0.0) throw ValidationError("weighted_field: negative radius " + std::to_string(r));
  return apply_analytic_weight(f, r);
}

void AprioriSeries::observe(const DyadicPartition& p, const ANSState& s, const RadiusState& rs) {
  eps = s.eps;
  const double growth = std::exp(2.0 * rs.kappa * s.t);
  const double r = std::max(rs.radius_psi(), 0.0);
  std::vector<double> e = state_energies_ans(s);
  weight_mode_energies(e, s.u.grid(), r);
  std::vector<double> ey = mode_energies(ddy(s.u, 1));
  accumulate_mode_energies(ey, ddy(s.v, 1), s.eps);
  weight_mode_energies(ey, s.u.grid(), r);
  for (auto& x : e) x *= growth;
  for (auto& x : ey) x *= growth;
  state.append(s.t, block_norms_from_energies(p, e));
  dy.append(s.t, block_norms_from_energies(p, ey));
}

AprioriReport apriori_monitor(const AprioriSeries& series, const RadiusState& rs, double data_norm) {
  AprioriReport out;
  out.margin_exceeded = rs.eta > rs.a / (2.0 * rs.lambda);
  if (series.state.empty()) return out;
  out.linf_half = chemin_lerner(series.state, kLInfinity, 0.5);
  out.eps2_l2_three_half =
      series.state.size() > 1 ? series.eps * series.eps * chemin_lerner(series.state, 2.0, 1.5) : 0.0;
  out.dy_l2_half = series.dy.size() > 1 ? chemin_lerner(series.dy, 2.0, 0.5) : 0.0;
  if (data_norm > 0.0) {
    out.ratio_linf = out.linf_half / data_norm;
    out.ratio_dy = out.dy_l2_half / data_norm;
    out.ratio_three_half = out.eps2_l2_three_half / data_norm;
  }
  return out;
}

}  // namespace strip
