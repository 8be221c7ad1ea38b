#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <utility>

#include "strip/grid.hpp"

namespace strip {
namespace {

// Batched 1-D transforms along x, one per y row, on the (i * ny + j) layout.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int nx, int ny, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(nx, ny, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<Complex> scratch(static_cast<std::size_t>(nx) * ny);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    int n[] = {nx};
    fftw_plan plan = fftw_plan_many_dft(1, n, ny, buf, nullptr, ny, 1, buf, nullptr, ny, 1, sign,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

}  // namespace

SpectralField forward_transform(const PhysicalField& f) {
  const Grid& g = f.grid();
  SpectralField out(g, true);
  std::vector<Complex> buf(f.data().begin(), f.data().end());
  fftw_plan plan = PlanCache::instance().get(g.nx, g.ny, FFTW_FORWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(buf.data()),
                   reinterpret_cast<fftw_complex*>(buf.data()));
  const double scale = 1.0 / g.nx;
  // FFT output is (k * ny + j), which is exactly the spectral layout.
  auto dst = out.data();
  for (std::size_t n = 0; n < buf.size(); ++n) dst[n] = buf[n] * scale;
  return out;
}

PhysicalField inverse_transform(const SpectralField& s) {
  const Grid& g = s.grid();
  if (!s.real_valued()) {
    throw ValidationError("inverse_transform: field is not flagged real-valued");
  }
  std::vector<Complex> buf(s.data().begin(), s.data().end());
  fftw_plan plan = PlanCache::instance().get(g.nx, g.ny, FFTW_BACKWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(buf.data()),
                   reinterpret_cast<fftw_complex*>(buf.data()));
  PhysicalField out(g);
  auto dst = out.data();
  double max_re = 0.0;
  double max_im = 0.0;
  for (std::size_t n = 0; n < buf.size(); ++n) {
    dst[n] = buf[n].real();
    max_re = std::max(max_re, std::abs(buf[n].real()));
    max_im = std::max(max_im, std::abs(buf[n].imag()));
  }
  if (max_im > 1e-10 * std::max(1.0, max_re)) {
    throw NumericalError("inverse_transform: imaginary residue " + std::to_string(max_im) +
                         " exceeds 1e-10; spectrum is not conjugate-symmetric");
  }
  return out;
}

}  // namespace strip
