#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "strip/checkpoint.hpp"
#include "test_support.hpp"

#ifdef STRIP_HYDRO_EXE

namespace strip {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run_cli(const std::string& args) {
  const std::string cmd = std::string(STRIP_HYDRO_EXE) + " " + args + " 2>&1";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("strip_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Cli, MissingConfigIsValidationError) {
  const Outcome r = run_cli("converge --config missing.cfg");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("missing.cfg"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli("").code, 1);
  EXPECT_EQ(run_cli("frobnicate").code, 1);
  EXPECT_EQ(run_cli("--help").code, 0);
}

TEST(Cli, NormsPrintsOneRow) {
  const fs::path dir = scratch("norms");
  const Grid g(32, 9);
  SpectralField f(g);
  for (int k = 1; k < 16; ++k)
    testing::set_mode(f, k, [&](double y) { return Complex(std::exp(-0.3 * k) * y * (1 - y)); });
  write_checkpoint(dir / "f.strp", f);
  const Outcome r = run_cli("norms --checkpoint " + (dir / "f.strp").string() + " --s 0.5");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("s,besov_norm", 0), 0u);
  EXPECT_NE(r.out.find("\n0.5,"), std::string::npos);
  EXPECT_EQ(run_cli("norms --checkpoint " + (dir / "nope.strp").string()).code, 1);
}

TEST(Cli, SolveHydroWritesReports) {
  const fs::path dir = scratch("hydro");
  std::ofstream(dir / "run.cfg") << "[grid]\nnx = 16\nny = 33\n[run]\ndt = 1e-3\nt_end = 0.02\nnorm_every = 5\n"
                                 << "output_dir = " << (dir / "out").string() << "\n";
  const Outcome r = run_cli("solve-hydro --config " + (dir / "run.cfg").string());
  EXPECT_EQ(r.code, 0) << r.out;
  for (const char* f : {"hydro_norms.csv", "hydro_decay.csv", "hydro_summary.json", "hydro_u_final.strp"})
    EXPECT_TRUE(fs::exists(dir / "out" / f)) << f;
}

TEST(Cli, NumericalFailureExitsTwo) {
  const fs::path dir = scratch("dead");
  // A tiny a/lambda exhausts the band within a few steps.
  std::ofstream(dir / "run.cfg") << "[grid]\nnx = 16\nny = 33\n[run]\ndt = 1e-3\nt_end = 0.05\n"
                                 << "output_dir = " << (dir / "out").string() << "\n"
                                 << "[initial]\na = 0.5\n[tracker]\nlambda = 1e4\nmu = 1e4\n";
  EXPECT_EQ(run_cli("solve-ans --config " + (dir / "run.cfg").string()).code, 2);
}

}  // namespace
}  // namespace strip

#endif
