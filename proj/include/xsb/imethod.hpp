#pragma once

// The spatial frequency mollifier rho(xi) = rho0(|xi|/N), the operator it
// induces, the product commutator Q(f,g) = I(fg) - I^2 f I g, and the
// almost-conservation experiment that measures the growth of the mollified
// charge against the predicted decay in N.

#include <cstdint>
#include <utility>
#include <vector>

#include "xsb/dkg.hpp"
#include "xsb/grid.hpp"

namespace xsb {

// rho0 = 1 on [0,1], |.|^s beyond 2, and a monotone C^2 log-log quintic on
// (1,2) matching value and slope at both ends (0 at 1, s at 2). Requires
// s < 0, N > 0.
struct Mollifier {
  double N = 1.0;
  double s = -0.1;

  Mollifier(double threshold, double regularity);
  double rho0(double a) const;
  double rho(double xi) const { return rho0(std::abs(xi) / N); }
};

// Fourier multiplier rho(xi)^power on the spatial variable.
std::vector<cplx> apply_I(const std::vector<cplx>& slice, const Grid& grid, const Mollifier& mol,
                          int power = 1);
std::vector<double> apply_I(const std::vector<double>& slice, const Grid& grid,
                            const Mollifier& mol, int power = 1);
SpaceTimeField apply_I(const SpaceTimeField& f, const Mollifier& mol, int power = 1);

// (||f||_{H^sigma} / ||If||_{H^{sigma-s}},
//  ||If||_{H^{sigma-s}} / (N^{-s} ||f||_{H^sigma})); both are O(1) in N.
std::pair<double, double> sandwich_probe(const std::vector<cplx>& f, const Grid& grid,
                                         const Mollifier& mol, double sigma);

// ||g||_{H^{s1}} / (N^{s1-s2+s} ||Ig||_{H^{s2-s}}) for high-frequency g
// (spectrum must live in |xi| >= N/2; domain error otherwise). s1 < s2.
double trade_probe(const std::vector<cplx>& g, const Grid& grid, const Mollifier& mol, double s1,
                   double s2);

// Q(f,g) = I(fg) - (I^2 f)(I g), pointwise products on the lattice.
std::vector<cplx> commutator_slice(const std::vector<cplx>& f, const std::vector<cplx>& g,
                                   const Grid& grid, const Mollifier& mol);
SpaceTimeField commutator(const SpaceTimeField& f, const SpaceTimeField& g, const Mollifier& mol);

// Independent O(n^2) kernel sum for Q over the wrapped lattice convolution
// with kernel rho(xi) - rho(xi-eta)^2 rho(eta).
std::vector<cplx> commutator_slice_direct(const std::vector<cplx>& f, const std::vector<cplx>& g,
                                          const Grid& grid, const Mollifier& mol);

// Running sup over stored times t <= z of ||I psi_+||_L2^2 + ||I psi_-||_L2^2.
double gamma_running_sup(const Trajectory& traj, const Grid& grid, const Mollifier& mol,
                         double z);

// 2 sum_{±} sup_{t <= t_prime} | int_0^t int Q(phi, psi_±) conj(I psi_∓) dx dt' |
// along the stored trajectory (trapezoid in time).
double growth_term(const Trajectory& traj, const Grid& grid, const Mollifier& mol,
                   double t_prime);

// Time-step schedule dT = N^{(4s - 2 eps)/(1 + 2r - 4s - 6 eps)}; s < 0.
double delta_t_schedule(double N, double s, double r, double eps);

struct AcRow {
  double N = 0;
  double deltaT = 0;
  double gamma0 = 0;
  double gammaT = 0;
  double dgamma = 0;
  bool at_noise_floor = false;
};

struct AcReport {
  std::vector<AcRow> rows;
  double fitted_slope = 0.0;     // log(dgamma/gamma0) vs log N, floor rows excluded
  double reference_slope = 0.0;  // (1/2 - 2 eps) * schedule_exponent + (-r + 2 eps)
  bool slope_defined = false;
};

struct AcParams {
  std::uint64_t base_seed = 7;
  double s = -0.1;
  double r = 0.5;
  double eps = 0.01;
  std::vector<double> N_list = {16, 32, 64, 128};
  Grid grid;
  double dt = 0.0;
  double amp_spinor = 1.0;
  double amp_scalar = 1.0;
  double dirac_mass = 1.0;
  double scalar_mass = 1.0;
};

// For each N: same seeded initial data, mollifier at N, dT from the
// schedule, evolve on [0, dT], record the growth of the running sup of the
// mollified charge. Hypotheses: -1/4 < s < 0 and -s < r <= 1 + 2s.
AcReport almost_conservation_experiment(const AcParams& p);

}  // namespace xsb
