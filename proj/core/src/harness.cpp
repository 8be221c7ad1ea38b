#include "strip/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <thread>

namespace strip {
namespace {

// Mode energies of (f, eps g) weighted by e^{2 r |xi|}.
std::vector<double> pair_energies(const SpectralField& f, const SpectralField& g, double eps, double r) {
  std::vector<double> e = mode_energies(f);
  accumulate_mode_energies(e, g, eps);
  weight_mode_energies(e, f.grid(), std::max(r, 0.0));
  return e;
}

double maybe_nan_radius(const DyadicPartition& p, const SpectralField& u) {
  try {
    return estimate_radius(p, u);
  } catch (const ValidationError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

double decay_from_rows(const std::vector<DecayRow>& rows, double t_end) {
  std::vector<double> t, b;
  for (const auto& r : rows) {
    t.push_back(r.t);
    b.push_back(r.b_half);
  }
  try {
    return fit_decay(t, b, 0.3 * t_end, t_end);
  } catch (const ValidationError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

ANSConfig ans_config(const RunConfig& cfg, double eps) {
  ANSConfig c;
  c.grid = cfg.grid;
  c.dt = cfg.dt;
  c.t_end = cfg.t_end;
  c.eps = eps;
  c.divergence_tol = cfg.divergence_tol;
  c.band = cfg.a;
  return c;
}

HydroConfig hydro_config(const RunConfig& cfg) {
  HydroConfig c;
  c.grid = cfg.grid;
  c.dt = cfg.dt;
  c.t_end = cfg.t_end;
  c.band = cfg.a;
  return c;
}

}  // namespace

ErrorFields error_fields(const ANSState& ans, const HydroState& hydro, double dt) {
  if (!(ans.u.grid() == hydro.u.grid())) throw ValidationError("error_fields: grids differ");
  if (std::abs(ans.t - hydro.t) > 0.5 * dt) {
    throw ValidationError("error_fields: time mismatch (" + std::to_string(ans.t) + " vs " +
                          std::to_string(hydro.t) + ")");
  }
  return {ans.u - hydro.u, ans.v - hydro.v};
}

// ---------------------------------------------------------------------------

void RemainderAccumulator::add(const HydroState& hydro, const ANSState* ans) {
  const double e2 = eps_ * eps_;
  const SpectralField uxx = ddx(ddx(hydro.u));
  const double r1_sq = e2 * e2 * l2_norm_sq(uxx);

  const SpectralField& ue = ans ? ans->u : hydro.u;
  const SpectralField& ve = ans ? ans->v : hydro.v;
  SpectralField bracket = reconstruct_v(dt_u_residual(hydro));
  bracket -= e2 * ddx(ddx(hydro.v));
  bracket -= ddy(hydro.v, 2);
  bracket += dealiased_product(inverse_transform(ue), inverse_transform(ddx(hydro.v)), true);
  bracket += dealiased_product(inverse_transform(ve), inverse_transform(ddy(hydro.v, 1)), true);
  bracket.zero_walls();
  const double b_sq = l2_norm_sq(bracket);

  if (started_) {
    const double h = hydro.t - last_t_;
    int_r1_ += 0.5 * h * (last_r1_ + r1_sq);
    int_bracket_ += 0.5 * h * (last_bracket_ + b_sq);
  }
  started_ = true;
  last_t_ = hydro.t;
  last_r1_ = r1_sq;
  last_bracket_ = b_sq;
}

RemainderReport RemainderAccumulator::result() const {
  RemainderReport out;
  out.eps = eps_;
  out.r1 = std::sqrt(int_r1_);
  out.bracket = std::sqrt(int_bracket_);
  out.r2 = eps_ * eps_ * out.bracket;
  return out;
}

RemainderReport remainder_norms(std::span<const HydroState> history, double eps) {
  RemainderAccumulator acc(eps);
  for (const auto& s : history) acc.add(s);
  return acc.result();
}

// ---------------------------------------------------------------------------

FitResult fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("fit: length mismatch");
  std::vector<double> lx, ly;
  FitResult out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    } else {
      ++out.excluded;
    }
  }
  if (lx.size() < 3) {
    throw ValidationError("convergence fit needs at least 3 rows with positive error, have " +
                          std::to_string(lx.size()));
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (!(sxx > 0.0)) throw ValidationError("convergence fit: eps values are all equal");
  out.slope = sxy / sxx;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    out.residual = std::max(out.residual, std::abs(ly[i] - (my + out.slope * (lx[i] - mx))));
  }
  out.used = lx.size();
  return out;
}

FitResult fit_convergence(std::span<const ConvergenceRow> rows) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    x.push_back(r.eps);
    y.push_back(r.e_half);
  }
  return fit_power_law(x, y);
}

double fit_decay(std::span<const double> times, std::span<const double> values, double t0, double t1) {
  if (times.size() != values.size()) throw ValidationError("fit_decay: length mismatch");
  if (!(t1 > t0)) throw ValidationError("fit_decay: empty window");
  if (times.empty() || t0 < times.front() - 1e-12 || t1 > times.back() + 1e-12) {
    throw ValidationError("fit_decay: window outside the recorded run");
  }
  std::vector<double> ts, ls;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t0 - 1e-12 || times[i] > t1 + 1e-12) continue;
    if (!(values[i] > 0.0)) throw ValidationError("fit_decay: nonpositive norm inside the window");
    ts.push_back(times[i]);
    ls.push_back(std::log(values[i]));
  }
  if (ts.size() < 2) throw ValidationError("fit_decay: fewer than two samples in the window");
  const double n = static_cast<double>(ts.size());
  double mt = 0.0, ml = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    mt += ts[i];
    ml += ls[i];
  }
  mt /= n;
  ml /= n;
  double stl = 0.0, stt = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    stl += (ts[i] - mt) * (ls[i] - ml);
    stt += (ts[i] - mt) * (ts[i] - mt);
  }
  return -stl / stt;
}

double fit_decay(const NormSeries& series, double t0, double t1, double s) {
  std::vector<double> values;
  values.reserve(series.size());
  for (const auto& b : series.blocks) values.push_back(besov_from_blocks(b, s));
  return fit_decay(series.times, values, t0, t1);
}

// ---------------------------------------------------------------------------

PairResult run_pair(const RunConfig& cfg, double eps) {
  validate(cfg);
  const Grid& g = cfg.grid;
  const DyadicPartition partition(g);
  const ANSConfig acfg = ans_config(cfg, eps);
  const HydroConfig hcfg = hydro_config(cfg);
  const long n_steps = step_count(cfg.t_end, cfg.dt);

  const SpectralField u0 = initial_data(cfg);
  ANSState ans = initial_data_scaled(u0, eps, cfg.divergence_tol);
  HydroState hydro = initial_hydro_state(u0);

  PairResult out;
  out.data_norm = analytic_data_norm(partition, ans.u, &ans.v, eps, cfg.a);
  if (out.data_norm > kSmallnessFactor * cfg.a) {
    throw ValidationError("smallness gate failed: " + std::to_string(out.data_norm) + " > " +
                          std::to_string(kSmallnessFactor * cfg.a));
  }
  const double cfl = advective_cfl(ans.u, ans.v, cfg.dt);
  if (cfl > acfg.cfl_limit) throw ValidationError("advective CFL " + std::to_string(cfl) + " too large");

  RadiusState rs = make_radius_state(cfg.a, cfg.lambda, cfg.mu, poincare_constant(g));
  NormSeries err_state, err_dy;
  AprioriSeries apriori;
  RemainderAccumulator remainder(eps);

  auto record = [&]() {
    const ErrorFields w = error_fields(ans, hydro, cfg.dt);
    const double r = rs.radius_theta();
    err_state.append(ans.t, block_norms_from_energies(partition, pair_energies(w.w1, w.w2, eps, r)));
    err_dy.append(ans.t, block_norms_from_energies(
                             partition, pair_energies(ddy(w.w1, 1), ddy(w.w2, 1), eps, r)));
    out.sup_b_half = std::max(
        out.sup_b_half,
        besov_from_blocks(block_norms_from_energies(partition, state_energies_ans(ans)), 0.5));
    out.dy_p_norm = std::max(out.dy_p_norm, pressure_dy_norm(ans));
    apriori.observe(partition, ans, rs);
    remainder.add(hydro, &ans);
  };
  record();

  for (long n = 1; n <= n_steps; ++n) {
    ANSState next_ans = step_ans(ans, acfg);
    HydroState next_hydro = step_hydro(hydro, hcfg);
    next_ans.t = next_hydro.t = static_cast<double>(n) * cfg.dt;
    out.max_energy_residual =
        std::max(out.max_energy_residual, std::abs(energy_residual_ans(ans, next_ans, cfg.dt)));
    const double div = divergence_norm(next_ans);
    out.max_divergence = std::max(out.max_divergence, div);
    if (div > cfg.divergence_tol) {
      throw NumericalError("divergence " + std::to_string(div) + " exceeds tolerance at t = " +
                           std::to_string(next_ans.t));
    }
    const double defect = compatibility_defect(next_hydro.u);
    if (defect > hcfg.compatibility_tol) {
      throw NumericalError("compatibility defect " + std::to_string(defect) + " at t = " +
                           std::to_string(next_hydro.t));
    }
    ans = std::move(next_ans);
    hydro = std::move(next_hydro);
    out.steps = n;

    try {
      RadiusRates rates{eta_rate(ans, rs), theta_rate(hydro, rs), 0.0};
      rates.zeta = rates.eta + rates.theta;
      rs = advance_radius(rs, rates, cfg.dt);
    } catch (const BandExhausted& e) {
      out.alive = false;
      out.halt_reason = e.what();
    }
    if (out.alive && !rs.alive()) {
      out.alive = false;
      out.halt_reason = "analytic band exhausted at t = " + std::to_string(ans.t);
    }
    record();
    if (!out.alive) break;
  }

  out.row.eps = eps;
  out.row.e_half = chemin_lerner(err_state, kLInfinity, 0.5);
  out.row.e_dy = err_dy.size() > 1 ? chemin_lerner(err_dy, 2.0, 0.5) : 0.0;
  out.row.e_three_half = err_state.size() > 1 ? eps * chemin_lerner(err_state, 2.0, 1.5) : 0.0;
  out.l2_w1 = l2_norm(ans.u - hydro.u);
  out.radius = rs;
  out.apriori = apriori_monitor(apriori, rs, out.data_norm);
  out.remainder = remainder.result();
  return out;
}

unsigned sweep_threads(std::size_t jobs) {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("STRIP_HYDRO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw ValidationError(std::string("STRIP_HYDRO_THREADS must be a positive integer, got '") + env + "'");
    }
    cap = static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::min<std::size_t>(cap, std::max<std::size_t>(jobs, 1)));
}

SweepReport run_sweep(const RunConfig& cfg) {
  validate(cfg);
  const std::size_t jobs = cfg.eps_list.size();
  std::vector<PairResult> results(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < jobs; i = next++) {
      try {
        results[i] = run_pair(cfg, cfg.eps_list[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned threads = sweep_threads(jobs);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SweepReport report;
  report.kappa = poincare_constant(cfg.grid);
  report.pairs = std::move(results);
  for (const auto& p : report.pairs) report.rows.push_back(p.row);
  std::sort(report.rows.begin(), report.rows.end(),
            [](const ConvergenceRow& a, const ConvergenceRow& b) { return a.eps > b.eps; });
  if (report.rows.size() >= 3) report.fit = fit_convergence(report.rows);

  // Proxy for the limit solution's bundled norms: M >= 1 and the largest
  // recorded state norm.
  report.m_proxy = 1.0;
  for (const auto& p : report.pairs) report.m_proxy = std::max(report.m_proxy, p.apriori.linf_half);
  return report;
}

// ---------------------------------------------------------------------------

NormRow make_norm_row(const DyadicPartition& p, const SpectralField& u, double t, const RadiusState& rs) {
  NormRow row;
  row.time = t;
  row.s = 0.5;
  row.besov = besov_norm(p, u, 0.5);
  row.eta = rs.eta;
  row.theta = rs.theta;
  row.zeta = rs.zeta;
  row.radius_estimate = maybe_nan_radius(p, u);
  row.radius_psi = rs.radius_psi();
  row.radius_phi = rs.radius_phi();
  row.radius_theta = rs.radius_theta();
  return row;
}

TrackedRun run_tracked_ans(const RunConfig& cfg, double eps, int checkpoint_every,
                           const CheckpointSink& sink, ANSState* final_state) {
  validate(cfg);
  const DyadicPartition partition(cfg.grid);
  TrackedRun out;
  out.radius = make_radius_state(cfg.a, cfg.lambda, cfg.mu, poincare_constant(cfg.grid));

  std::vector<Observer<ANSState>> observers;
  observers.push_back({1, [&](const ANSState& s, long step) {
                         if (step > 0) {
                           RadiusRates r{eta_rate(s, out.radius), 0.0, 0.0};
                           r.zeta = r.eta;
                           out.radius = advance_radius(out.radius, r, cfg.dt);
                         }
                         if (step % cfg.norm_every == 0) {
                           out.norms.push_back(make_norm_row(partition, s.u, s.t, out.radius));
                           out.decay.push_back({s.t, std::sqrt(energy_ans(s)),
                                                besov_from_blocks(block_norms_from_energies(
                                                                      partition, state_energies_ans(s)),
                                                                  0.5)});
                         }
                         if (final_state) *final_state = s;
                         if (!out.radius.alive()) throw BandExhausted("analytic band exhausted");
                       }});
  if (checkpoint_every > 0 && sink) {
    observers.push_back({checkpoint_every, [&](const ANSState& s, long step) { sink(s.u, s.v, step); }});
  }
  try {
    run_ans(ans_config(cfg, eps), initial_data(cfg), observers);
  } catch (const BandExhausted& e) {
    out.alive = false;
    out.halt_reason = e.what();
  }
  out.decay_rate = decay_from_rows(out.decay, cfg.t_end);
  return out;
}

TrackedRun run_tracked_hydro(const RunConfig& cfg, int checkpoint_every, const CheckpointSink& sink,
                             HydroState* final_state) {
  validate(cfg);
  const DyadicPartition partition(cfg.grid);
  TrackedRun out;
  out.radius = make_radius_state(cfg.a, cfg.lambda, cfg.mu, poincare_constant(cfg.grid));

  std::vector<Observer<HydroState>> observers;
  observers.push_back({1, [&](const HydroState& s, long step) {
                         if (step > 0) {
                           RadiusRates r{0.0, theta_rate(s, out.radius), 0.0};
                           r.zeta = r.theta;
                           out.radius = advance_radius(out.radius, r, cfg.dt);
                         }
                         if (step % cfg.norm_every == 0) {
                           out.norms.push_back(make_norm_row(partition, s.u, s.t, out.radius));
                           out.decay.push_back({s.t, l2_norm(s.u), besov_norm(partition, s.u, 0.5)});
                         }
                         if (final_state) *final_state = s;
                         if (!out.radius.alive()) throw BandExhausted("analytic band exhausted");
                       }});
  if (checkpoint_every > 0 && sink) {
    observers.push_back({checkpoint_every, [&](const HydroState& s, long step) { sink(s.u, s.v, step); }});
  }
  try {
    run_hydro(hydro_config(cfg), initial_data(cfg), observers);
  } catch (const BandExhausted& e) {
    out.alive = false;
    out.halt_reason = e.what();
  }
  out.decay_rate = decay_from_rows(out.decay, cfg.t_end);
  return out;
}

}  // namespace strip
