#pragma once

// Function-space norms over the dual lattice: X^{s,b}_± with weight
// <tau ± xi>^b <xi>^s, the wave-Sobolev weight <|tau|-|xi|>^b <xi>^r, spatial
// H^s, and the pair norm for wave data. All sums use the cell-area rectangle
// rule, exact on lattice trigonometric polynomials.

#include <vector>

#include "xsb/grid.hpp"

namespace xsb {

enum class Sign { plus, minus };
inline int sign_value(Sign s) { return s == Sign::plus ? +1 : -1; }
inline Sign opposite(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

/// <x> = sqrt(1 + x^2)
inline double japanese_bracket(double x) { return std::sqrt(1.0 + x * x); }

enum class NormKind { xsb_plus, xsb_minus, wave_sobolev, sobolev_spatial, calh_pair };

struct NormSpec {
  NormKind kind = NormKind::xsb_plus;
  double s = 0.0;
  double b = 0.0;  // unused for sobolev_spatial
};

double xsb_norm(const FrequencyField& g, double s, double b, Sign sign);
double wave_sobolev_norm(const FrequencyField& g, double r, double b);

// Serial reference twins for the OpenMP reductions above.
double xsb_norm_serial(const FrequencyField& g, double s, double b, Sign sign);
double wave_sobolev_norm_serial(const FrequencyField& g, double r, double b);

// || <xi>^s fhat ||_{L^2} of one spatial slice (physical samples in).
double sobolev_norm(const std::vector<cplx>& slice, double s, const Grid& grid);

// wave_sobolev_norm(phi, r, b) + wave_sobolev_norm(phi_t, r-1, b)
double calH_pair_norm(const FrequencyField& phi, const FrequencyField& phi_t, double r, double b);

// --- localization probes -----------------------------------------------
// Sharp-cutoff boundedness: for each dT the ratio
// ||1_{[0,dT)} u||_{X^{s,b}} / ||u||_{X^{s,b}}. Hypothesis |b| < 1/2.
struct CutoffProbeRow {
  double dT = 0.0;
  double ratio = 0.0;
};
std::vector<CutoffProbeRow> cutoff_boundedness_probe(const SpaceTimeField& u, double s, double b,
                                                     Sign sign,
                                                     const std::vector<double>& dT_list);

// Smooth-window dilation gain: least-squares slope of
// log(||nu(t/dT) u||_{X^{s,b1}} / ||u||_{X^{s,b2}}) against log dT,
// expected >= b2 - b1 up to tolerance. Hypothesis -1/2 < b1 <= b2 < 1/2.
struct DilationProbe {
  double slope = 0.0;
  double predicted = 0.0;  // b2 - b1
  std::vector<double> dT;
  std::vector<double> ratio;
};
DilationProbe dilation_gain_probe(const SpaceTimeField& u, double s, double b1, double b2,
                                  Sign sign, const std::vector<double>& dT_list);

}  // namespace xsb
