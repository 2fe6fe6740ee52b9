#pragma once

// The trilinear form |int psi1 psi2 psi3 dx dt| on grid fields, its
// Fourier-side twin, the estimate ratios against the X^{s,b} norm products,
// and the catalog of box counterexample families whose lambda sweeps measure
// the sharpness exponents.

#include <functional>
#include <string>
#include <vector>

#include "xsb/boxes.hpp"
#include "xsb/exponents.hpp"
#include "xsb/grid.hpp"

namespace xsb {

// Rectangle-rule integral of f1*f2*f3 over the lattice (no conjugates).
cplx trilinear_integral_fields(const SpaceTimeField& f1, const SpaceTimeField& f2,
                               const SpaceTimeField& f3);

// Fourier-side convolution sum over the periodic lattice,
//   (2pi)^3/P^2 * sum_{j,k} g1[-j-k] g2[j] g3[k],  P = x_length*t_length,
// with indices wrapped into the centered range. Equals the physical-side
// integral identically on the lattice.
cplx trilinear_fourier_sum(const FrequencyField& g1, const FrequencyField& g2,
                           const FrequencyField& g3);
cplx trilinear_fourier_sum_serial(const FrequencyField& g1, const FrequencyField& g2,
                                  const FrequencyField& g3);

// The pointwise multiplier of the dual formulation at a surface point
// (sum tau = sum xi = 0 required within 1e-9):
//   prod <xi_j>^{-s_j} / (<tau_1 +- xi_1>^{b_1} <tau_2 +- xi_2>^{b_2} <tau_3 -+ xi_3>^{b_3}).
double multiplier_weight(const std::array<double, 3>& tau, const std::array<double, 3>& xi,
                         const ExponentTuple& e);

// |integral| / (||f1||_{X^{s1,b1}} ||f2||_{X^{s2,b2}} ||f3||_{X^{s3,b3}}),
// signs per the tuple. Zero fields give 0; a zero norm against a nonzero
// integral is an error.
double estimate_ratio(const SpaceTimeField& f1, const SpaceTimeField& f2,
                      const SpaceTimeField& f3, const ExponentTuple& e);

// Same with the third norm replaced by the wave-Sobolev norm H^{r,b3}.
double mixed_ratio(const SpaceTimeField& f1, const SpaceTimeField& f2, const SpaceTimeField& f3,
                   double s1, double s2, double r, double b1, double b2, double b3,
                   Sign pair_sign = Sign::plus);

// --- counterexample families ---------------------------------------------

struct BoxTriple {
  ShearedBox A, B, C;
};

enum class FamilyId {
  b12, b13, bsum,          // modulation pair / triple conditions
  s12,                     // spatial pair condition
  s13_b1, s13_b2, s13_b3,  // s_k + s_3 vs each b
  s13_bsum,                // s_k + s_3 vs 1/2 - (b1+b2+b3)
  ssum_b3,                 // s1+s2+s3 vs 1/2 - b3
  ssum_ball,               // s1+s2+s3 vs 1 - (b1+b2+b3)
  ssum_b12, ssum_b13       // s1+s2+s3 vs 1/2 - b_j - b_k
};

struct CounterexampleFamily {
  FamilyId id;
  std::string name;       // CLI identifier
  std::string condition;  // the necessary condition this family witnesses
  std::array<int, 3> d;   // measure exponents (d1, d2, d3)
  std::function<BoxTriple(double)> boxes;
  std::function<double(const ExponentTuple&)> delta;  // lambda exponent of the multiplier level

  // delta + (d1 - d2 - d3)/2; the necessary condition is margin >= 0 and the
  // sweep slope converges to -margin.
  double margin(const ExponentTuple& e) const {
    return delta(e) + 0.5 * (d[0] - d[1] - d[2]);
  }
};

const std::vector<CounterexampleFamily>& family_catalog();
const CounterexampleFamily& family_by_name(const std::string& name);

// Selector for the s_k+s3 >= -b_min condition: picks the family for the
// minimal b, lowest index on ties (tie flag reported).
const CounterexampleFamily& family_for_bmin(const ExponentTuple& e, bool& tie);

// --- lambda sweep ---------------------------------------------------------

struct SweepRow {
  double lambda = 0.0;
  double ratio = 0.0;
  double log_ratio = 0.0;
};

struct SlopeReport {
  std::vector<SweepRow> rows;
  double fitted_slope = 0.0;
  double predicted_slope = 0.0;
};

// For each lambda: R = m(centers) * overlap(A,B,C) / sqrt(|A||B||C|); OLS fit
// of log R against log lambda with the first (preasymptotic) point dropped.
// lambda_list must be geometric, >= 6 points, all >= 8.
SlopeReport counterexample_sweep(const CounterexampleFamily& fam, const ExponentTuple& e,
                                 const std::vector<double>& lambda_list);

std::vector<double> geometric_lambdas(double lo, double hi, double factor = 2.0);

// Sampled box indicator on the frequency lattice, smoothed by one cell
// (per-cell coverage by supersampling); for grid-path cross checks.
FrequencyField field_from_box(const ShearedBox& box, const Grid& grid);

}  // namespace xsb
