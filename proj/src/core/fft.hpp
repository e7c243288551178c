// Thin FFTW wrapper: unnormalized in-place DFT with serialized plan handling
// (FFTW plan creation/destruction is not thread-safe; execution is).
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hlab {

// sign -1: forward, x_j = sum_k c_k e^{-2 pi i jk/M}
// sign +1: backward, x_j = sum_k c_k e^{+2 pi i jk/M}
void dft_inplace(std::vector<std::complex<double>>& buf, int sign);

std::size_t next_pow2(std::size_t n);

}  // namespace hlab
