#include "xsb/boxes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "xsb/parallel.hpp"

namespace xsb {

ShearedBox::ShearedBox(LinearForm r1, LinearForm r2) : row1(r1), row2(r2) {
  if (!(row1.halfwidth > 0.0) || !(row2.halfwidth > 0.0))
    throw std::invalid_argument("ShearedBox: halfwidths must be positive");
  if (std::abs(det()) < 1e-12 * (std::hypot(r1.a_tau, r1.a_xi) * std::hypot(r2.a_tau, r2.a_xi)))
    throw std::invalid_argument("ShearedBox: degenerate (parallel) forms");
}

Vec2 ShearedBox::point_from_row_values(double u, double v) const {
  // solve [a_tau1 a_xi1; a_tau2 a_xi2] p = (u, v)
  const double d = det();
  return {(u * row2.a_xi - v * row1.a_xi) / d, (row1.a_tau * v - row2.a_tau * u) / d};
}

std::array<Vec2, 4> ShearedBox::corners() const {
  const double u1 = row1.center - row1.halfwidth, u2 = row1.center + row1.halfwidth;
  const double v1 = row2.center - row2.halfwidth, v2 = row2.center + row2.halfwidth;
  std::array<Vec2, 4> pts = {point_from_row_values(u1, v1), point_from_row_values(u2, v1),
                             point_from_row_values(u2, v2), point_from_row_values(u1, v2)};
  // enforce counter-clockwise orientation
  double area2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Vec2& p = pts[i];
    const Vec2& q = pts[(i + 1) % 4];
    area2 += p.tau * q.xi - q.tau * p.xi;
  }
  if (area2 < 0.0) std::swap(pts[1], pts[3]);
  return pts;
}

ShearedBox axis_box(double tau_center, double tau_half, double xi_center, double xi_half) {
  return ShearedBox({1.0, 0.0, tau_center, tau_half}, {0.0, 1.0, xi_center, xi_half});
}

namespace {

double polygon_area(const std::vector<Vec2>& poly) {
  double area2 = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    area2 += p.tau * q.xi - q.tau * p.xi;
  }
  return 0.5 * std::abs(area2);
}

// Sutherland-Hodgman: clip a convex polygon by the half plane n.p <= c.
std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, double ntau, double nxi,
                                 double c) {
  std::vector<Vec2> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    const double dp = ntau * p.tau + nxi * p.xi - c;
    const double dq = ntau * q.tau + nxi * q.xi - c;
    if (dp <= 0.0) out.push_back(p);
    if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
      const double t = dp / (dp - dq);
      out.push_back({p.tau + t * (q.tau - p.tau), p.xi + t * (q.xi - p.xi)});
    }
  }
  return out;
}

}  // namespace

double convex_quad_intersection_area(const std::array<Vec2, 4>& a, const std::array<Vec2, 4>& b) {
  std::vector<Vec2> poly(a.begin(), a.end());
  for (int i = 0; i < 4 && !poly.empty(); ++i) {
    const Vec2& p = b[i];
    const Vec2& q = b[(i + 1) % 4];
    // inward normal for CCW polygon: edge (p,q), inside is left of the edge
    const double ntau = q.xi - p.xi;
    const double nxi = -(q.tau - p.tau);
    // left of edge: n.(x - p) >= 0, i.e. (-n).x <= -n.p
    poly = clip_halfplane(poly, -ntau, -nxi, -(ntau * p.tau + nxi * p.xi));
  }
  return poly.empty() ? 0.0 : polygon_area(poly);
}

namespace {

// the set  shift - B  as a sheared box
ShearedBox reflect_shift(const ShearedBox& b, const Vec2& shift) {
  auto flip = [&](const LinearForm& r) {
    LinearForm out = r;
    out.center = r.a_tau * shift.tau + r.a_xi * shift.xi - r.center;
    return out;
  };
  return ShearedBox(flip(b.row1), flip(b.row2));
}

}  // namespace

double overlap_halfmeasure(const ShearedBox& a, const ShearedBox& b, const Vec2& shift) {
  const ShearedBox mirrored = reflect_shift(b, shift);
  return std::sqrt(convex_quad_intersection_area(a.corners(), mirrored.corners()));
}

double interval_triple_convolution(double a_lo, double a_hi, double b_lo, double b_hi,
                                   double c_lo, double c_hi) {
  // J = int_{c} len(B cap (-A - y)) dy; the inner length is piecewise linear
  // in y with breakpoints where interval endpoints cross.
  auto len_at = [&](double y) {
    const double lo = std::max(b_lo, -a_hi - y);
    const double hi = std::min(b_hi, -a_lo - y);
    return std::max(0.0, hi - lo);
  };
  std::vector<double> pts = {c_lo, c_hi, -a_lo - b_hi, -a_hi - b_lo, -a_lo - b_lo, -a_hi - b_hi};
  std::sort(pts.begin(), pts.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double l = std::max(pts[i], c_lo);
    const double r = std::min(pts[i + 1], c_hi);
    if (r > l) acc += 0.5 * (len_at(l) + len_at(r)) * (r - l);  // exact: integrand linear here
  }
  return acc;
}

namespace {

struct FormMatch {
  bool ok = false;
  int perm[2] = {0, 1};     // box row i matches reference row perm[i]
  double scale[2] = {1, 1};  // box row = scale * reference row
};

FormMatch match_forms(const ShearedBox& ref, const ShearedBox& box) {
  const LinearForm* rrows[2] = {&ref.row1, &ref.row2};
  const LinearForm* brows[2] = {&box.row1, &box.row2};
  auto parallel_scale = [](const LinearForm& r, const LinearForm& b, double& sc) {
    const double cross = r.a_tau * b.a_xi - r.a_xi * b.a_tau;
    const double mag = std::hypot(r.a_tau, r.a_xi) * std::hypot(b.a_tau, b.a_xi);
    if (std::abs(cross) > 1e-12 * mag) return false;
    sc = (std::abs(r.a_tau) >= std::abs(r.a_xi)) ? b.a_tau / r.a_tau : b.a_xi / r.a_xi;
    return sc != 0.0;
  };
  for (int swapped = 0; swapped < 2; ++swapped) {
    FormMatch m;
    m.perm[0] = swapped;
    m.perm[1] = 1 - swapped;
    if (parallel_scale(*rrows[m.perm[0]], *brows[0], m.scale[0]) &&
        parallel_scale(*rrows[m.perm[1]], *brows[1], m.scale[1])) {
      m.ok = true;
      return m;
    }
  }
  return FormMatch{};
}

struct Interval {
  double lo, hi;
};

// Rewrite a box as axis intervals in the reference row coordinates.
std::array<Interval, 2> as_reference_intervals(const ShearedBox& box, const FormMatch& m) {
  std::array<Interval, 2> out;
  const LinearForm* brows[2] = {&box.row1, &box.row2};
  for (int i = 0; i < 2; ++i) {
    const double c = brows[i]->center / m.scale[i];
    const double h = brows[i]->halfwidth / std::abs(m.scale[i]);
    out[m.perm[i]] = {c - h, c + h};
  }
  return out;
}

// Adaptive Simpson over B's row-coordinate rectangle of
// f(p) = area(C cap (-p - A)).
class BoxOverlapQuadrature {
 public:
  BoxOverlapQuadrature(const ShearedBox& a, const ShearedBox& b, const ShearedBox& c)
      : a_(a), b_(b), c_corners_(c.corners()) {}

  double integrate(double rel_tol) const {
    const double u1 = b_.row1.center - b_.row1.halfwidth, u2 = b_.row1.center + b_.row1.halfwidth;
    const double v1 = b_.row2.center - b_.row2.halfwidth, v2 = b_.row2.center + b_.row2.halfwidth;
    const double whole = simpson_panel(u1, u2, v1, v2);
    const double scale_hint = c_measure_hint();
    const double val = adapt(u1, u2, v1, v2, whole, rel_tol * std::max(1.0, scale_hint), 0);
    return val / std::abs(b_.det());
  }

 private:
  double c_measure_hint() const {
    std::vector<Vec2> poly(c_corners_.begin(), c_corners_.end());
    return polygon_area(poly) * b_.measure();
  }

  double integrand(double u, double v) const {
    const Vec2 p = b_.point_from_row_values(u, v);
    const ShearedBox shifted = reflect_shift(a_, Vec2{-p.tau, -p.xi});
    return convex_quad_intersection_area(c_corners_, shifted.corners());
  }

  double simpson_panel(double u1, double u2, double v1, double v2) const {
    const double um = 0.5 * (u1 + u2), vm = 0.5 * (v1 + v2);
    const double w[3] = {1.0, 4.0, 1.0};
    const double us[3] = {u1, um, u2};
    const double vs[3] = {v1, vm, v2};
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) acc += w[i] * w[j] * integrand(us[i], vs[j]);
    return acc * (u2 - u1) * (v2 - v1) / 36.0;
  }

  double adapt(double u1, double u2, double v1, double v2, double whole, double tol,
               int depth) const {
    const double um = 0.5 * (u1 + u2), vm = 0.5 * (v1 + v2);
    const double q11 = simpson_panel(u1, um, v1, vm);
    const double q21 = simpson_panel(um, u2, v1, vm);
    const double q12 = simpson_panel(u1, um, vm, v2);
    const double q22 = simpson_panel(um, u2, vm, v2);
    const double refined = q11 + q21 + q12 + q22;
    if (depth >= 14 || std::abs(refined - whole) <= tol) return refined;
    return adapt(u1, um, v1, vm, q11, tol / 4, depth + 1) +
           adapt(um, u2, v1, vm, q21, tol / 4, depth + 1) +
           adapt(u1, um, vm, v2, q12, tol / 4, depth + 1) +
           adapt(um, u2, vm, v2, q22, tol / 4, depth + 1);
  }

  const ShearedBox& a_;
  const ShearedBox& b_;
  std::array<Vec2, 4> c_corners_;
};

}  // namespace

double trilinear_integral_boxes(const ShearedBox& a, const ShearedBox& b, const ShearedBox& c) {
  const FormMatch mb = match_forms(a, b);
  const FormMatch mc = match_forms(a, c);
  if (mb.ok && mc.ok) {
    // common change of variables: all three boxes are axis rectangles in the
    // row coordinates of A, and the constraint integral factors per axis
    const FormMatch ma = match_forms(a, a);
    const auto ia = as_reference_intervals(a, ma);
    const auto ib = as_reference_intervals(b, mb);
    const auto ic = as_reference_intervals(c, mc);
    double value = 1.0;
    for (int axis = 0; axis < 2; ++axis)
      value *= interval_triple_convolution(ia[axis].lo, ia[axis].hi, ib[axis].lo, ib[axis].hi,
                                           ic[axis].lo, ic[axis].hi);
    const double d = a.det();
    return value / (d * d);  // two copies of the change-of-variables Jacobian
  }
  return BoxOverlapQuadrature(a, b, c).integrate(1e-9);
}

double trilinear_integral_boxes_mc(const ShearedBox& a, const ShearedBox& b, const ShearedBox& c,
                                   std::uint64_t seed, long samples) {
  const int chunks = std::max(1, max_threads() * 4);
  const long per = (samples + chunks - 1) / chunks;
  double hits = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : hits)
  for (int ch = 0; ch < chunks; ++ch) {
    std::mt19937_64 eng(seed + 0x9e3779b97f4a7c15ull * (ch + 1));
    std::uniform_real_distribution<double> un(-1.0, 1.0);
    double local = 0.0;
    for (long i = 0; i < per; ++i) {
      const Vec2 p = b.point_from_row_values(b.row1.center + un(eng) * b.row1.halfwidth,
                                             b.row2.center + un(eng) * b.row2.halfwidth);
      const Vec2 q = c.point_from_row_values(c.row1.center + un(eng) * c.row1.halfwidth,
                                             c.row2.center + un(eng) * c.row2.halfwidth);
      if (a.contains(-(p + q))) local += 1.0;
    }
    hits += local;
  }
  const double total = double(per) * chunks;
  return hits / total * b.measure() * c.measure();
}

}  // namespace xsb
