#pragma once

// Exact-rational classification of the exponent regions (sufficiency
// interior, necessary-condition violations, boundary) and the dyadic
// summation bounds with their brute-force twins.

#include <string>
#include <vector>

#include "xsb/exponents.hpp"
#include "xsb/rational.hpp"

namespace xsb {

enum class RegionStatus { sufficient_interior, necessary_violated, boundary };

std::string to_string(RegionStatus s);

struct ConditionReport {
  std::string id;
  Rational margin;  // lhs - rhs; sufficiency wants > 0 (>= 0 where noted)
  bool ok = false;
};

struct RegionVerdict {
  RegionStatus status = RegionStatus::boundary;
  std::vector<ConditionReport> sufficient;       // the full sufficiency margin table
  std::vector<ConditionReport> necessary;        // the full necessity margin table
  std::vector<std::string> violated;             // strictly violated necessary conditions
};

// Classifier for the main trilinear estimate: SUFFICIENT_INTERIOR when every
// sufficiency condition holds with its required strictness, otherwise
// NECESSARY_VIOLATED when some necessary condition fails strictly, otherwise
// BOUNDARY. Pure rational arithmetic.
RegionVerdict thm11_check(const ExponentTuple& e);

// Sufficiency-only classifier for the mixed (wave-Sobolev third factor)
// estimate; no necessary catalog exists, so failures classify BOUNDARY.
RegionVerdict cor12_check(const Rational& s1, const Rational& s2, const Rational& r,
                          const Rational& b1, const Rational& b2, const Rational& b3);

// --- global well-posedness region ----------------------------------------

struct GwpVerdict {
  bool inside = false;
  bool s_in_range = false;      // -1/6 < s < 0
  bool below_cap = false;       // r <= s + 1
  bool above_lower = false;     // r strictly above the algebraic lower curve
  Rational quadratic;           // 2r^2 + (1-4s)r + 2s, positive iff above/below the curve pair
  bool lower_exact = false;     // the lower curve value is rational at this s
  Rational lower_bound;         // valid when lower_exact
  double lower_bound_approx = 0.0;
  Rational working_upper;       // 1/2 + 2s
  Rational cap;                 // s + 1
};

// Region of the well-posedness theorem: -1/6 < s < 0 and
// s - 1/4 + sqrt((s-1/4)^2 - s) < r <= s + 1, decided through the equivalent
// rational polynomial 2r^2 + (1-4s)r + 2s > 0 (with the vertex-side check).
GwpVerdict gwp_region_check(const Rational& s, const Rational& r);

// --- dyadic sums -----------------------------------------------------------

struct DyadicIndex {
  double N1 = 1, N2 = 1, N3 = 1;  // powers of two >= 1
  double L1 = 1, L2 = 1, L3 = 1;
};

// min{ (N_min L_min)^(1/2), (L1 L3)^(1/2), (L2 L3)^(1/2) }
double multiplier_bound(const DyadicIndex& d);

// Direct sum over dyadic (L1,L2,L3) <= L_cap with L_max within one dyadic
// step of max{L_med, N3}, each term L1^-b1 L2^-b2 L3^-b3 * multiplier_bound.
double inner_sum_bruteforce(double N1, double N2, double N3, double b1, double b2, double b3,
                            double L_cap);
double inner_sum_bruteforce_serial(double N1, double N2, double N3, double b1, double b2,
                                   double b3, double L_cap);

// Closed-form right side: N3^eps ( N3^{1/2-b1-b2-b3} Nmin^{1/2}
//   + N3^{-b3} Nmin^{1/2} + N3^{-bmin} Nmin^{(1/2-bmax)_+ + (1/2-bmed)_+} ).
double inner_sum_bound(double N1, double N2, double N3, double b1, double b2, double b3,
                       double eps);

struct OuterProbeRow {
  double N = 1;
  double partial = 0;
};

struct OuterProbe {
  std::vector<OuterProbeRow> rows;
  double sup = 0;
  double sup_at_N = 1;
  std::string trend;  // "growing" | "flat" | "decaying"
};

// Partial sums of the outer dyadic sum with the closed-form inner bound, per
// frequency scale N up to N_cap.
OuterProbe outer_sum_probe(const ExponentTuple& e, double eps, double N_cap);

}  // namespace xsb
