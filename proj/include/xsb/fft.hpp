#pragma once

#include <complex>
#include <vector>

namespace xsb {

using cplx = std::complex<double>;

// In-place radix-2 complex FFT. n must be a power of two.
// sign = -1 computes sum_k a[k] e^{-2pi i jk/n} (forward), sign = +1 the
// conjugate sum. No 1/n scaling is applied here; callers own normalization.
void fft_pow2(cplx* a, int n, int sign);

inline void fft_pow2(std::vector<cplx>& a, int sign) {
  fft_pow2(a.data(), static_cast<int>(a.size()), sign);
}

bool is_pow2(int n);

}  // namespace xsb
