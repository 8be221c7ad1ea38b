#pragma once

// INI run configuration:
//
//   [grid]    nx, ny, lx
//   [run]     dt, t_end, eps | eps_list, divergence_tol, output_dir, seed,
//             norm_every
//   [initial] delta, k0, a
//   [tracker] lambda, mu
//
// [ans] is accepted as an alias of [run]. Unknown sections or keys are errors.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "strip/grid.hpp"

namespace strip {

struct RunConfig {
  Grid grid{64, 129};
  double dt = 5e-4;
  double t_end = 1.0;
  std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
  double divergence_tol = 1e-8;
  std::string output_dir = "strip_out";
  std::uint64_t seed = 1;
  int norm_every = 20;

  double delta = 1e-2;
  int k0 = 1;
  double a = 0.5;

  double lambda = 4.0;
  double mu = 16.0;
};

/// Checks every invariant (eps_list strictly decreasing in (0, 1], dt > 0, ...).
void validate(const RunConfig& cfg);

RunConfig parse_config_string(const std::string& text);
/// Throws ValidationError naming the path when it cannot be read.
RunConfig load_config(const std::filesystem::path& path);

/// u0 = delta cos(k0 x) sin(2 pi y).
SpectralField initial_data(const RunConfig& cfg);

}  // namespace strip
