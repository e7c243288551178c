#include "core/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace hlab {

namespace {
std::mutex planner_mu;
}

void dft_inplace(std::vector<std::complex<double>>& buf, int sign) {
  if (buf.empty()) return;
  if (sign != 1 && sign != -1) throw std::invalid_argument("dft_inplace: sign must be +-1");
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan plan;
  {
    std::lock_guard lk(planner_mu);
    plan = fftw_plan_dft_1d(int(buf.size()), data, data,
                            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("fftw plan creation failed");
  fftw_execute(plan);
  {
    std::lock_guard lk(planner_mu);
    fftw_destroy_plan(plan);
  }
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace hlab
