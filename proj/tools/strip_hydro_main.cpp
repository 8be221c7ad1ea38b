// strip-hydro: command-line driver.
//
// Exit codes: 0 success, 1 validation or usage error, 2 numerical failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "strip/checkpoint.hpp"
#include "strip/config.hpp"
#include "strip/harness.hpp"
#include "strip/littlewood_paley.hpp"
#include "strip/report.hpp"
#include "strip/selftest.hpp"

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw strip::ValidationError("cannot write '" + path.string() + "'");
  return out;
}

fs::path prepare_output_dir(const strip::RunConfig& cfg) {
  fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw strip::ValidationError("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

strip::CheckpointSink checkpoint_sink(const fs::path& dir, const std::string& prefix) {
  return [dir, prefix](const strip::SpectralField& u, const strip::SpectralField& v, long step) {
    const std::string tag = std::to_string(step);
    strip::write_checkpoint(dir / (prefix + "_u_" + tag + ".strp"), u);
    strip::write_checkpoint(dir / (prefix + "_v_" + tag + ".strp"), v);
  };
}

int solve_ans(const std::string& config_path, int checkpoint_every, double eps_override) {
  const strip::RunConfig cfg = strip::load_config(config_path);
  const double eps = eps_override > 0.0 ? eps_override : cfg.eps_list.front();
  const fs::path dir = prepare_output_dir(cfg);
  strip::ANSState final_state;
  const strip::TrackedRun run =
      strip::run_tracked_ans(cfg, eps, checkpoint_every, checkpoint_sink(dir, "ans"), &final_state);
  auto norms = open_output(dir / "ans_norms.csv");
  strip::write_norm_csv(norms, run.norms);
  auto decay = open_output(dir / "ans_decay.csv");
  strip::write_decay_csv(decay, run.decay);
  strip::write_checkpoint(dir / "ans_u_final.strp", final_state.u);
  strip::write_checkpoint(dir / "ans_v_final.strp", final_state.v);
  auto summary = open_output(dir / "ans_summary.json");
  summary << strip::run_summary_json(run, strip::poincare_constant(cfg.grid)) << '\n';
  std::cout << "eps " << eps << ": eta(T) = " << run.radius.eta << ", alive = " << std::boolalpha
            << run.alive << ", outputs in " << dir.string() << '\n';
  return run.alive ? 0 : 2;
}

int solve_hydro(const std::string& config_path, int checkpoint_every) {
  const strip::RunConfig cfg = strip::load_config(config_path);
  const fs::path dir = prepare_output_dir(cfg);
  strip::HydroState final_state;
  const strip::TrackedRun run =
      strip::run_tracked_hydro(cfg, checkpoint_every, checkpoint_sink(dir, "hydro"), &final_state);
  auto norms = open_output(dir / "hydro_norms.csv");
  strip::write_norm_csv(norms, run.norms);
  auto decay = open_output(dir / "hydro_decay.csv");
  strip::write_decay_csv(decay, run.decay);
  strip::write_checkpoint(dir / "hydro_u_final.strp", final_state.u);
  auto summary = open_output(dir / "hydro_summary.json");
  summary << strip::run_summary_json(run, strip::poincare_constant(cfg.grid)) << '\n';
  std::cout << "theta(T) = " << run.radius.theta << ", decay rate = " << run.decay_rate
            << ", alive = " << std::boolalpha << run.alive << ", outputs in " << dir.string() << '\n';
  return run.alive ? 0 : 2;
}

int converge(const std::string& config_path) {
  const strip::RunConfig cfg = strip::load_config(config_path);
  const fs::path dir = prepare_output_dir(cfg);
  const strip::SweepReport report = strip::run_sweep(cfg);
  auto csv = open_output(dir / "convergence.csv");
  strip::write_convergence_csv(csv, report.rows);
  auto summary = open_output(dir / "summary.json");
  summary << strip::sweep_summary_json(report) << '\n';
  for (const auto& row : report.rows) {
    std::cout << "eps " << strip::format_number(row.eps) << "  E = " << strip::format_number(row.e_half) << '\n';
  }
  if (report.rows.size() >= 3) {
    std::cout << "slope " << report.fit.slope << ", residual " << report.fit.residual << '\n';
  }
  bool alive = true;
  for (const auto& p : report.pairs) alive = alive && p.alive;
  return alive ? 0 : 2;
}

int norms(const std::string& checkpoint, double s) {
  const strip::SpectralField f = strip::read_checkpoint(checkpoint);
  const strip::DyadicPartition p(f.grid());
  const double direct = strip::besov_norm(p, f, s);
  const double reduced = strip::besov_norm_derivative_convention(p, f, s);
  double radius = std::numeric_limits<double>::quiet_NaN();
  try {
    radius = strip::estimate_radius(p, f);
  } catch (const strip::ValidationError& e) {
    std::cerr << "note: " << e.what() << '\n';
  }
  std::cout << "s,besov_norm,besov_norm_derivative_convention,radius_estimate\n"
            << strip::format_number(s) << ',' << strip::format_number(direct) << ','
            << strip::format_number(reduced) << ',' << strip::format_number(radius) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic Navier-Stokes / hydrostatic limit lab on the periodic strip"};
  app.require_subcommand(1);

  std::string config;
  int checkpoint_every = 0;
  double eps = 0.0;
  auto* ans = app.add_subcommand("solve-ans", "Run the anisotropic solver");
  ans->add_option("--config", config, "Config file")->required();
  ans->add_option("--checkpoint-every", checkpoint_every, "Checkpoint cadence in steps")->check(CLI::NonNegativeNumber);
  ans->add_option("--eps", eps, "Override eps (default: first of the config's list)");

  auto* hydro = app.add_subcommand("solve-hydro", "Run the hydrostatic solver");
  hydro->add_option("--config", config, "Config file")->required();
  hydro->add_option("--checkpoint-every", checkpoint_every, "Checkpoint cadence in steps")->check(CLI::NonNegativeNumber);

  auto* conv = app.add_subcommand("converge", "Paired eps sweep and convergence fit");
  conv->add_option("--config", config, "Config file")->required();

  std::string checkpoint;
  double s = 0.5;
  auto* nrm = app.add_subcommand("norms", "Besov norms and radius estimate of a checkpoint");
  nrm->add_option("--checkpoint", checkpoint, "Checkpoint file")->required();
  nrm->add_option("--s", s, "Besov index");

  std::uint64_t seed = 1;
  auto* self = app.add_subcommand("selftest", "Run the built-in property checks");
  self->add_option("--seed", seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*ans) return solve_ans(config, checkpoint_every, eps);
    if (*hydro) return solve_hydro(config, checkpoint_every);
    if (*conv) return converge(config);
    if (*nrm) return norms(checkpoint, s);
    if (*self) return strip::run_selftest(std::cout, seed) == 0 ? 0 : 2;
  } catch (const strip::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const strip::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
