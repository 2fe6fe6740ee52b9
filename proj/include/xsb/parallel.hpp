#pragma once

// Thread-count control for the OpenMP kernels. XSB_THREADS caps the number of
// threads used by any parallel loop in the library; unset means the OpenMP
// default. Every kernel also has a serial reference twin used by the tests
// and the benchmark tool.

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace xsb {

inline int max_threads() {
#ifdef _OPENMP
  if (const char* env = std::getenv("XSB_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace xsb
