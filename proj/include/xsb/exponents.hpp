#pragma once

#include <array>

#include "xsb/norms.hpp"
#include "xsb/rational.hpp"

namespace xsb {

// The exponent data of the trilinear estimate: spatial weights s_j,
// modulation weights b_j, and the sign pattern. The structure forces the
// third sign opposite to the first two: pair_sign applies to factors 1 and 2,
// the third factor carries the opposite sign. Rational-valued so the region
// classifiers stay exact; numeric paths read the double views.
struct ExponentTuple {
  Rational s1, s2, s3;
  Rational b1, b2, b3;
  Sign pair_sign = Sign::plus;

  std::array<Rational, 3> s() const { return {s1, s2, s3}; }
  std::array<Rational, 3> b() const { return {b1, b2, b3}; }

  Rational b_min() const { return rat_min(b1, rat_min(b2, b3)); }
  Rational b_max() const { return rat_max(b1, rat_max(b2, b3)); }
  Rational b_med() const { return b1 + b2 + b3 - b_min() - b_max(); }

  double s1d() const { return s1.to_double(); }
  double s2d() const { return s2.to_double(); }
  double s3d() const { return s3.to_double(); }
  double b1d() const { return b1.to_double(); }
  double b2d() const { return b2.to_double(); }
  double b3d() const { return b3.to_double(); }

  Sign sign3() const { return opposite(pair_sign); }
};

}  // namespace xsb
