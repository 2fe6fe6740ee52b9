#pragma once

// Periodic space-time lattice, its dual frequency lattice, and the discrete
// transforms between them.
//
// Convention (fixed once, used by every norm): the transform is unitary in
// L^2 with explicit quadrature weights,
//     g(tau_m, xi_n) = (dx dt / 2pi) * sum_{j,k} f(t_j, x_k) e^{-i(tau_m t_j + xi_n x_k)}
//     f(t_j, x_k)   = (dtau dxi / 2pi) * sum_{m,n} g(tau_m, xi_n) e^{+i(...)}
// so Parseval reads  sum |f|^2 dx dt = sum |g|^2 dtau dxi  exactly on the
// lattice. Dual frequencies are xi_n = 2pi n/x_length, tau_m = 2pi m/t_length
// with centered integer indices n in [-x_points/2, x_points/2), likewise m.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "xsb/fft.hpp"

namespace xsb {

struct Grid {
  int x_points = 0;
  int t_points = 0;
  double x_length = 0.0;
  double t_length = 0.0;

  Grid() = default;
  Grid(int xp, int tp, double xl, double tl);

  double dx() const { return x_length / x_points; }
  double dt() const { return t_length / t_points; }
  double dxi() const { return 2.0 * M_PI / x_length; }
  double dtau() const { return 2.0 * M_PI / t_length; }

  int x_min() const { return -x_points / 2; }  // centered index ranges
  int t_min() const { return -t_points / 2; }

  double x(int k) const { return k * dx(); }          // k in [0, x_points)
  double t(int j) const { return j * dt(); }          // j in [0, t_points)
  double xi(int n) const { return n * dxi(); }        // n centered
  double tau(int m) const { return m * dtau(); }      // m centered

  std::size_t size() const { return std::size_t(x_points) * t_points; }
  double cell_area_phys() const { return dx() * dt(); }
  double cell_area_freq() const { return dxi() * dtau(); }

  bool operator==(const Grid& o) const {
    return x_points == o.x_points && t_points == o.t_points && x_length == o.x_length &&
           t_length == o.t_length;
  }
  bool operator!=(const Grid& o) const { return !(*this == o); }
};

// Wraps an integer frequency index into the centered range [-n/2, n/2).
inline int wrap_centered(int idx, int n) {
  int r = ((idx % n) + n) % n;            // [0, n)
  return r >= n / 2 ? r - n : r;
}

// Complex samples psi(t_j, x_k) stored row-major [time][space].
struct SpaceTimeField {
  Grid grid;
  std::vector<cplx> values;

  explicit SpaceTimeField(const Grid& g) : grid(g), values(g.size(), cplx(0.0)) {}
  SpaceTimeField(const Grid& g, std::vector<cplx> v);

  cplx& at(int tj, int xk) { return values[std::size_t(tj) * grid.x_points + xk]; }
  const cplx& at(int tj, int xk) const { return values[std::size_t(tj) * grid.x_points + xk]; }
};

// Coefficients on the dual (tau, xi) lattice, row-major with row 0 holding
// tau index t_min() and column 0 holding xi index x_min().
struct FrequencyField {
  Grid grid;
  std::vector<cplx> coef;

  explicit FrequencyField(const Grid& g) : grid(g), coef(g.size(), cplx(0.0)) {}
  FrequencyField(const Grid& g, std::vector<cplx> c);

  cplx& at(int m, int n) {  // centered indices
    return coef[std::size_t(m - grid.t_min()) * grid.x_points + (n - grid.x_min())];
  }
  const cplx& at(int m, int n) const {
    return coef[std::size_t(m - grid.t_min()) * grid.x_points + (n - grid.x_min())];
  }
};

FrequencyField dft_spacetime(const SpaceTimeField& f);
SpaceTimeField idft(const FrequencyField& g);

// Spatial-only transforms with the same unitary convention,
//   fhat(xi_n) = (dx/sqrt(2pi)) sum_k f_k e^{-i xi_n x_k},
// returned in centered order.
std::vector<cplx> dft_spatial(const std::vector<cplx>& f, const Grid& grid);
std::vector<cplx> idft_spatial(const std::vector<cplx>& fhat, const Grid& grid);

enum class WindowKind { smooth_bump, sharp_indicator };

// The C-infinity bump nu(u) = exp(1 - 1/(1-(2u-1)^2)) on (0,1), 0 outside,
// peak value 1 at u = 1/2.
double bump_profile(double u);

// Pointwise multiply by nu(t/dT) (smooth) or by the indicator of [0, dT).
// Requires 0 < dT <= t_length.
SpaceTimeField time_window(const SpaceTimeField& f, double dT, WindowKind kind);

// Seeded Gaussian space-time data with prescribed spatial regularity: the
// (tau, xi) coefficients are independent complex Gaussians shaped by
// <xi>^(-s-1/2-0.01) <tau>^(-0.51), rescaled so the L^2_t H^s_x norm equals
// amplitude. Deterministic in (seed, grid).
SpaceTimeField random_field(std::uint64_t seed, double s, const Grid& grid, double amplitude);

// Spatial slice analogue: one Gaussian per xi mode, shaped by
// <xi>^(-s-1/2-0.01), rescaled so the H^s norm equals amplitude. band_limit
// >= 0 keeps only centered indices |n| <= band_limit before normalizing.
std::vector<cplx> random_spatial(std::uint64_t seed, double s, const Grid& grid, double amplitude,
                                 int band_limit = -1);

}  // namespace xsb
