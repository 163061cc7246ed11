#include "laxlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace laxlab {

namespace {

// FFTW planning is not thread-safe; plans and their work buffers are cached
// per size and the whole transform is serialized. The transforms here are a
// negligible fraction of the scan cost (the SVDs dominate).
struct PlanCache {
  std::mutex mutex;
  std::map<int, std::pair<fftw_plan, fftw_complex*>> plans;

  ~PlanCache() {
    for (auto& [n, p] : plans) {
      fftw_destroy_plan(p.first);
      fftw_free(p.second);
    }
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

std::vector<Complex> dft_forward(const std::vector<Complex>& x) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return {};
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mutex);
  auto it = c.plans.find(n);
  if (it == c.plans.end()) {
    fftw_complex* buf = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    it = c.plans.emplace(n, std::make_pair(plan, buf)).first;
  }
  fftw_complex* buf = it->second.second;
  for (int i = 0; i < n; ++i) {
    buf[i][0] = x[i].real();
    buf[i][1] = x[i].imag();
  }
  fftw_execute(it->second.first);
  std::vector<Complex> out(n);
  for (int i = 0; i < n; ++i) out[i] = Complex(buf[i][0], buf[i][1]);
  return out;
}

}  // namespace laxlab
