#include "strip/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace strip {
namespace {

using nlohmann::json;

// JSON has no NaN; emit null instead.
json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double parse_number(const std::string& field, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("convergence CSV line " + std::to_string(line) + ": bad number '" + field + "'");
  }
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  out << "eps,E_half,E_dy,E_three_half\n";
  for (const auto& r : rows) {
    out << format_number(r.eps) << ',' << format_number(r.e_half) << ',' << format_number(r.e_dy) << ','
        << format_number(r.e_three_half) << '\n';
  }
}

std::vector<ConvergenceRow> read_convergence_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "eps,E_half,E_dy,E_three_half") {
    throw ValidationError("convergence CSV: missing or unexpected header");
  }
  std::vector<ConvergenceRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 4) {
      throw ValidationError("convergence CSV line " + std::to_string(lineno) + ": expected 4 columns");
    }
    rows.push_back({parse_number(fields[0], lineno), parse_number(fields[1], lineno),
                    parse_number(fields[2], lineno), parse_number(fields[3], lineno)});
  }
  return rows;
}

void write_norm_csv(std::ostream& out, const std::vector<NormRow>& rows) {
  out << "time,s,besov_norm,eta,theta,zeta,radius_estimate,radius_psi,radius_phi,radius_theta\n";
  for (const auto& r : rows) {
    out << format_number(r.time) << ',' << format_number(r.s) << ',' << format_number(r.besov) << ','
        << format_number(r.eta) << ',' << format_number(r.theta) << ',' << format_number(r.zeta) << ','
        << format_number(r.radius_estimate) << ',' << format_number(r.radius_psi) << ','
        << format_number(r.radius_phi) << ',' << format_number(r.radius_theta) << '\n';
  }
}

void write_decay_csv(std::ostream& out, const std::vector<DecayRow>& rows) {
  out << "t,l2,b_half\n";
  for (const auto& r : rows) {
    out << format_number(r.t) << ',' << format_number(r.l2) << ',' << format_number(r.b_half) << '\n';
  }
}

std::string sweep_summary_json(const SweepReport& report) {
  double eta = 0.0, theta = 0.0, zeta = 0.0;
  bool alive = true;
  json pairs = json::array();
  for (const auto& p : report.pairs) {
    eta = std::max(eta, p.radius.eta);
    theta = std::max(theta, p.radius.theta);
    zeta = std::max(zeta, p.radius.zeta);
    alive = alive && p.alive;
    pairs.push_back({{"eps", p.row.eps},
                     {"sup_b_half", p.sup_b_half},
                     {"dy_p_norm", p.dy_p_norm},
                     {"l2_w1", p.l2_w1},
                     {"data_norm", p.data_norm},
                     {"max_energy_residual", p.max_energy_residual},
                     {"max_divergence", p.max_divergence},
                     {"apriori_ratios", {p.apriori.ratio_linf, p.apriori.ratio_dy, p.apriori.ratio_three_half}},
                     {"remainder_r1", p.remainder.r1},
                     {"remainder_r2", p.remainder.r2},
                     {"alive", p.alive}});
  }
  const double lambda = report.pairs.empty() ? 0.0 : report.pairs.front().radius.lambda;
  json j = {{"slope", number_or_null(report.fit.slope)},
            {"residual", number_or_null(report.fit.residual)},
            {"kappa", report.kappa},
            {"eta_final", eta},
            {"theta_final", theta},
            {"zeta_final", zeta},
            {"alive", alive},
            {"m_proxy", report.m_proxy},
            {"mu_reported", lambda * report.m_proxy * report.m_proxy},
            {"smallness_factor", kSmallnessFactor},
            {"pairs", pairs}};
  return j.dump(2);
}

std::string run_summary_json(const TrackedRun& run, double kappa) {
  json j = {{"kappa", kappa},
            {"eta_final", run.radius.eta},
            {"theta_final", run.radius.theta},
            {"zeta_final", run.radius.zeta},
            {"alive", run.alive},
            {"decay_rate", number_or_null(run.decay_rate)},
            {"smallness_factor", kSmallnessFactor}};
  if (!run.halt_reason.empty()) j["halt_reason"] = run.halt_reason;
  return j.dump(2);
}

}  // namespace strip
