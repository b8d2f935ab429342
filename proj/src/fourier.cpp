#include "spreadlab/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "spreadlab/errors.hpp"

namespace spreadlab {

namespace {

// FFTW planning is not thread-safe, execution with the new-array interface is.
// Plans are created once per (size, direction) and live for the process.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

void execute(std::size_t n, int sign, const cplx* in, cplx* out) {
  fftw_plan plan = PlanCache::instance().get(n, sign);
  // fftw_execute_dft does not modify `in` for out-of-place plans.
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

CVector to_momentum(const Grid& grid, std::span<const cplx> samples) {
  const std::size_t n = grid.n_points();
  if (samples.size() != n) throw BadParams("sample array size does not match grid");
  CVector spectrum(n);
  execute(n, FFTW_FORWARD, samples.data(), spectrum.data());
  const double scale = grid.spacing() / std::sqrt(grid.length());
  CVector coeffs(n);
  for (std::size_t jc = 0; jc < n; ++jc) {
    const double sign = (jc % 2 == 0) ? 1.0 : -1.0;
    coeffs[jc] = sign * scale * spectrum[(jc + n / 2) % n];
  }
  return coeffs;
}

CVector from_momentum_samples(const Grid& grid, std::span<const cplx> coeffs) {
  const std::size_t n = grid.n_points();
  if (coeffs.size() != n) throw BadParams("coefficient array size does not match grid");
  CVector spectrum(n);
  for (std::size_t jc = 0; jc < n; ++jc) {
    const double sign = (jc % 2 == 0) ? 1.0 : -1.0;
    spectrum[(jc + n / 2) % n] = sign * coeffs[jc];
  }
  CVector samples(n);
  execute(n, FFTW_BACKWARD, spectrum.data(), samples.data());
  const double scale = 1.0 / std::sqrt(grid.length());
  for (auto& s : samples) s *= scale;
  return samples;
}

CVector to_momentum(const WaveFunction& psi) { return to_momentum(psi.grid(), psi.amplitudes()); }

WaveFunction from_momentum(const Grid& grid, CVector coeffs) {
  return WaveFunction(grid, from_momentum_samples(grid, coeffs));
}

}  // namespace spreadlab
