#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace xsb {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares y = slope*x + intercept. Needs >= 2 points.
inline LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("least_squares: need matching vectors with >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("least_squares: degenerate abscissae");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

}  // namespace xsb
