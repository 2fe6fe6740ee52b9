#pragma once

// Periodic split-step spectral solver for the one-dimensional split system
//   d_t psi_+ + d_x psi_+ = -iM psi_- + i phi psi_-
//   d_t psi_- - d_x psi_- = -iM psi_+ + i phi psi_+
//   d_t^2 phi = d_x^2 phi - m^2 phi + 2 Re(psi_+ conj(psi_-)).
// Linear flows (transport phases, scalar rotation at omega = sqrt(xi^2+m^2))
// are exact in Fourier; the pointwise coupling substep uses explicit
// midpoint; products are dealiased by 2/3-rule truncation.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "xsb/grid.hpp"

namespace xsb {

enum class Scheme { strang, rk4_if };

struct SolverConfig {
  double dirac_mass = 1.0;   // M
  double scalar_mass = 1.0;  // m
  Grid grid;
  double dt = 0.0;  // |dt| <= dx; negative dt runs the flow backwards
  Scheme scheme = Scheme::strang;

  void validate() const;
};

struct SolverState {
  std::vector<cplx> psi_plus, psi_minus;
  std::vector<double> phi, phi_t;
  double time = 0.0;

  SolverState() = default;
  explicit SolverState(const Grid& g)
      : psi_plus(g.x_points, cplx(0.0)),
        psi_minus(g.x_points, cplx(0.0)),
        phi(g.x_points, 0.0),
        phi_t(g.x_points, 0.0) {}
};

class divergence_error : public std::runtime_error {
 public:
  divergence_error(const std::string& what, long step, double time)
      : std::runtime_error(what), step_index(step), time(time) {}
  long step_index;
  double time;
};

// Largest |centered index| kept by the 2/3-rule truncation.
int dealias_cutoff(int n_points);

// Zero all spatial modes above the dealias cutoff.
void project_band(SolverState& st, const Grid& g);

// Seeded random data: spinor components with ||f||_{H^s} = amp_spinor, real
// scalar pair with ||phi||_{H^r} = ||phi_t||_{H^{r-1}} = amp_scalar. Spectra
// are generated inside the dealias band so the amplitudes are exact along
// the evolution.
SolverState initial_data(std::uint64_t seed, double s, double r, double amp_spinor,
                         double amp_scalar, const Grid& grid);

// One step of the configured scheme. Pure: returns the advanced state.
SolverState step(const SolverState& st, const SolverConfig& cfg);

// ||psi_+||_{L^2}^2 + ||psi_-||_{L^2}^2 by lattice quadrature.
double charge(const SolverState& st, const Grid& g);

struct Trajectory {
  std::vector<double> times;
  std::vector<SolverState> states;
};

using Observer = std::function<void(const SolverState&, const Grid&)>;

// Advance to time T (exact landing; the last step may be shorter). The
// initial state is band-projected once up front. States are recorded every
// store_stride steps (and at both endpoints); observers fire at the same
// cadence. Throws divergence_error on NaN/Inf with the offending step index.
Trajectory evolve(SolverState st, const SolverConfig& cfg, double T,
                  const std::vector<Observer>& observers = {}, int store_stride = 1);

}  // namespace xsb
