#include "xsb/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace xsb {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_pow2(cplx* a, int n, int sign) {
  if (!is_pow2(n)) throw std::invalid_argument("fft_pow2: n must be a power of two");
  // bit-reversal permutation
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const double dir = (sign < 0) ? -1.0 : 1.0;
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = dir * 2.0 * M_PI / len;
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (int k = 0; k < len / 2; ++k) {
        // refresh the twiddle recurrence periodically to keep rounding flat
        if ((k & 31) == 0) w = cplx(std::cos(ang * k), std::sin(ang * k));
        cplx u = a[i + k];
        cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

}  // namespace xsb
