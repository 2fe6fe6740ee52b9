#pragma once

// Sheared boxes in the (tau, xi) plane: intersections of two slabs
// |a_tau*tau + a_xi*xi - center| <= halfwidth. These are the building blocks
// of the sharpness constructions, and the convolution-overlap integrals over
// triples of them are what the lambda sweeps measure.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace xsb {

struct Vec2 {
  double tau = 0.0;
  double xi = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.tau + b.tau, a.xi + b.xi}; }
inline Vec2 operator-(Vec2 a) { return {-a.tau, -a.xi}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.tau - b.tau, a.xi - b.xi}; }

struct LinearForm {
  double a_tau = 1.0;
  double a_xi = 0.0;
  double center = 0.0;
  double halfwidth = 1.0;

  double eval(const Vec2& p) const { return a_tau * p.tau + a_xi * p.xi; }
  bool admits(const Vec2& p) const { return std::abs(eval(p) - center) <= halfwidth; }
};

struct ShearedBox {
  LinearForm row1, row2;

  ShearedBox(LinearForm r1, LinearForm r2);

  double det() const { return row1.a_tau * row2.a_xi - row1.a_xi * row2.a_tau; }
  double measure() const {
    return 4.0 * row1.halfwidth * row2.halfwidth / std::abs(det());
  }
  bool contains(const Vec2& p) const { return row1.admits(p) && row2.admits(p); }

  // Point with row values (u, v); center() is (center1, center2).
  Vec2 point_from_row_values(double u, double v) const;
  Vec2 center() const { return point_from_row_values(row1.center, row2.center); }

  std::array<Vec2, 4> corners() const;  // counter-clockwise
};

ShearedBox axis_box(double tau_center, double tau_half, double xi_center, double xi_half);

// Area of the intersection of two convex quadrilaterals (exact clipping).
double convex_quad_intersection_area(const std::array<Vec2, 4>& a, const std::array<Vec2, 4>& b);

// |{p in A : shift - p in B}|^(1/2), exact.
double overlap_halfmeasure(const ShearedBox& a, const ShearedBox& b, const Vec2& shift);

// integral over A x B x C of the convolution constraint:
//   I(A,B,C) = \int\int 1_B(p) 1_C(q) 1_A(-p-q) dp dq.
// Exact separated interval convolution when the three boxes share form
// directions; adaptive quadrature over B with exact polygon clipping
// otherwise.
double trilinear_integral_boxes(const ShearedBox& a, const ShearedBox& b, const ShearedBox& c);

// Monte Carlo estimate of the same integral (test oracle).
double trilinear_integral_boxes_mc(const ShearedBox& a, const ShearedBox& b, const ShearedBox& c,
                                   std::uint64_t seed, long samples);

// Exact integral \int\int 1_B(x) 1_C(y) 1_A(-x-y) dx dy for intervals given
// as (lo, hi) pairs. Exposed for tests.
double interval_triple_convolution(double a_lo, double a_hi, double b_lo, double b_hi,
                                   double c_lo, double c_hi);

}  // namespace xsb
