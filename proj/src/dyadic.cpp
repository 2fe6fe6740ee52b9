#include "xsb/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xsb/parallel.hpp"
#include "xsb/stats.hpp"

namespace xsb {

std::string to_string(RegionStatus s) {
  switch (s) {
    case RegionStatus::sufficient_interior: return "SUFFICIENT_INTERIOR";
    case RegionStatus::necessary_violated: return "NECESSARY_VIOLATED";
    case RegionStatus::boundary: return "BOUNDARY";
  }
  return "?";
}

namespace {

const Rational kHalf(1, 2);

struct Condition {
  std::string id;
  Rational margin;    // lhs - rhs
  bool allow_equal;   // sufficiency side: margin >= 0 suffices
};

// Shared condition list; the sufficiency side reads the strictness flags, the
// necessity side accepts every margin >= 0.
std::vector<Condition> trilinear_conditions(const ExponentTuple& e) {
  const Rational bmin = e.b_min(), bmed = e.b_med(), bmax = e.b_max();
  const Rational bsum = e.b1 + e.b2 + e.b3;
  const Rational ssum = e.s1 + e.s2 + e.s3;
  const Rational plus_terms =
      (kHalf - bmax).positive_part() + (kHalf - bmed).positive_part() - bmin;
  std::vector<Condition> cs;
  cs.push_back({"b12", e.b1 + e.b2, false});
  cs.push_back({"b13", e.b1 + e.b3, false});
  cs.push_back({"b23", e.b2 + e.b3, false});
  cs.push_back({"bsum", bsum - kHalf, false});
  cs.push_back({"s12", e.s1 + e.s2, true});
  cs.push_back({"s13_bmin", e.s1 + e.s3 + bmin, false});
  cs.push_back({"s23_bmin", e.s2 + e.s3 + bmin, false});
  cs.push_back({"s13_bsum", e.s1 + e.s3 - (kHalf - bsum), false});
  cs.push_back({"s23_bsum", e.s2 + e.s3 - (kHalf - bsum), false});
  cs.push_back({"ssum_b3", ssum - (kHalf - e.b3), false});
  cs.push_back({"ssum_plus", ssum - plus_terms, false});
  return cs;
}

}  // namespace

RegionVerdict thm11_check(const ExponentTuple& e) {
  const auto cs = trilinear_conditions(e);
  RegionVerdict v;
  bool sufficient = true;
  for (const auto& c : cs) {
    const bool ok = c.allow_equal ? c.margin >= Rational(0) : c.margin > Rational(0);
    v.sufficient.push_back({c.id, c.margin, ok});
    sufficient = sufficient && ok;
  }
  bool violated = false;
  for (const auto& c : cs) {
    const bool ok = c.margin >= Rational(0);
    v.necessary.push_back({c.id, c.margin, ok});
    if (!ok) {
      violated = true;
      v.violated.push_back(c.id);
    }
  }
  v.status = sufficient ? RegionStatus::sufficient_interior
                        : (violated ? RegionStatus::necessary_violated : RegionStatus::boundary);
  return v;
}

RegionVerdict cor12_check(const Rational& s1, const Rational& s2, const Rational& r,
                          const Rational& b1, const Rational& b2, const Rational& b3) {
  const Rational bmin = rat_min(b1, rat_min(b2, b3));
  const Rational bmax = rat_max(b1, rat_max(b2, b3));
  const Rational bmed = b1 + b2 + b3 - bmin - bmax;
  const Rational bsum = b1 + b2 + b3;
  const Rational plus_terms =
      (kHalf - bmax).positive_part() + (kHalf - bmed).positive_part() - bmin;
  std::vector<Condition> cs;
  cs.push_back({"b12", b1 + b2, false});
  cs.push_back({"b13", b1 + b3, false});
  cs.push_back({"b23", b2 + b3, false});
  cs.push_back({"bsum", bsum - kHalf, false});
  cs.push_back({"s1r", s1 + r, true});
  cs.push_back({"s2r", s2 + r, true});
  cs.push_back({"s1r_bmin", s1 + r + bmin, false});
  cs.push_back({"s2r_bmin", s2 + r + bmin, false});
  cs.push_back({"s12_bmin", s1 + s2 + bmin, false});
  cs.push_back({"s12_bsum", s1 + s2 - (kHalf - bsum), false});
  cs.push_back({"s12r_b1", s1 + s2 + r - (kHalf - b1), false});
  cs.push_back({"s12r_b2", s1 + s2 + r - (kHalf - b2), false});
  cs.push_back({"s12r_plus", s1 + s2 + r - plus_terms, false});
  RegionVerdict v;
  bool sufficient = true;
  for (const auto& c : cs) {
    const bool ok = c.allow_equal ? c.margin >= Rational(0) : c.margin > Rational(0);
    v.sufficient.push_back({c.id, c.margin, ok});
    sufficient = sufficient && ok;
    if (!ok) v.violated.push_back(c.id);  // failed-strictness witnesses, not necessity
  }
  v.status = sufficient ? RegionStatus::sufficient_interior : RegionStatus::boundary;
  return v;
}

GwpVerdict gwp_region_check(const Rational& s, const Rational& r) {
  GwpVerdict v;
  const Rational minus_sixth(-1, 6);
  v.s_in_range = (s > minus_sixth) && (s < Rational(0));
  v.cap = s + Rational(1);
  v.below_cap = r <= v.cap;
  v.working_upper = kHalf + Rational(2) * s;
  // 2r^2 + (1-4s)r + 2s, positive above the upper root r_+ = s - 1/4 + sqrt(disc)
  v.quadratic = Rational(2) * r * r + (Rational(1) - Rational(4) * s) * r + Rational(2) * s;
  const Rational vertex = s - Rational(1, 4);  // midpoint of the two roots
  v.above_lower = (r > vertex) && (v.quadratic > Rational(0));
  const Rational disc = vertex * vertex - s;  // (s - 1/4)^2 - s >= 0 for s <= 0
  Rational root;
  if (disc >= Rational(0) && disc.sqrt_exact(root)) {
    v.lower_exact = true;
    v.lower_bound = vertex + root;
    v.lower_bound_approx = v.lower_bound.to_double();
  } else {
    v.lower_bound_approx = vertex.to_double() + std::sqrt(disc.to_double());
  }
  v.inside = v.s_in_range && v.below_cap && v.above_lower;
  return v;
}

namespace {

bool is_dyadic_ge1(double x) {
  if (!(x >= 1.0)) return false;
  const double lg = std::log2(x);
  return std::abs(lg - std::round(lg)) < 1e-9;
}

inline double pos(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace

double multiplier_bound(const DyadicIndex& d) {
  const double nmin = std::min({d.N1, d.N2, d.N3});
  const double lmin = std::min({d.L1, d.L2, d.L3});
  return std::min({std::sqrt(nmin * lmin), std::sqrt(d.L1 * d.L3), std::sqrt(d.L2 * d.L3)});
}

namespace {

double inner_sum_impl(double N1, double N2, double N3, double b1, double b2, double b3,
                      double L_cap, bool parallel) {
  for (double v : {N1, N2, N3, L_cap})
    if (!is_dyadic_ge1(v)) throw std::invalid_argument("inner_sum: arguments must be dyadic >= 1");
  if (L_cap < N3) throw std::invalid_argument("inner_sum: L_cap must be >= N3");
  const int lmax_exp = static_cast<int>(std::round(std::log2(L_cap)));
  const int n3_exp = static_cast<int>(std::round(std::log2(N3)));
  double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc) if (parallel)
  for (int e1 = 0; e1 <= lmax_exp; ++e1) {
    double local = 0.0;
    for (int e2 = 0; e2 <= lmax_exp; ++e2) {
      for (int e3 = 0; e3 <= lmax_exp; ++e3) {
        const int emax = std::max({e1, e2, e3});
        const int emin = std::min({e1, e2, e3});
        const int emed = e1 + e2 + e3 - emax - emin;
        const int target = std::max(emed, n3_exp);
        if (std::abs(emax - target) > 1) continue;  // "approx" = within one dyadic step
        DyadicIndex d{N1, N2, N3, std::exp2(e1), std::exp2(e2), std::exp2(e3)};
        local += std::pow(d.L1, -b1) * std::pow(d.L2, -b2) * std::pow(d.L3, -b3) *
                 multiplier_bound(d);
      }
    }
    acc += local;
  }
  return acc;
}

}  // namespace

double inner_sum_bruteforce(double N1, double N2, double N3, double b1, double b2, double b3,
                            double L_cap) {
  return inner_sum_impl(N1, N2, N3, b1, b2, b3, L_cap, max_threads() > 1);
}

double inner_sum_bruteforce_serial(double N1, double N2, double N3, double b1, double b2,
                                   double b3, double L_cap) {
  return inner_sum_impl(N1, N2, N3, b1, b2, b3, L_cap, false);
}

double inner_sum_bound(double N1, double N2, double N3, double b1, double b2, double b3,
                       double eps) {
  for (double v : {N1, N2, N3})
    if (!is_dyadic_ge1(v))
      throw std::invalid_argument("inner_sum_bound: arguments must be dyadic >= 1");
  const double nmin = std::min({N1, N2, N3});
  const double bmin = std::min({b1, b2, b3});
  const double bmax = std::max({b1, b2, b3});
  const double bmed = b1 + b2 + b3 - bmin - bmax;
  const double term1 = std::pow(N3, 0.5 - b1 - b2 - b3) * std::sqrt(nmin);
  const double term2 = std::pow(N3, -b3) * std::sqrt(nmin);
  const double term3 = std::pow(N3, -bmin) * std::pow(nmin, pos(0.5 - bmax) + pos(0.5 - bmed));
  return std::pow(N3, eps) * (term1 + term2 + term3);
}

OuterProbe outer_sum_probe(const ExponentTuple& e, double eps, double N_cap) {
  if (!is_dyadic_ge1(N_cap)) throw std::invalid_argument("outer_sum_probe: N_cap must be dyadic");
  const int cap_exp = static_cast<int>(std::round(std::log2(N_cap)));
  const double s1 = e.s1d(), s2 = e.s2d(), s3 = e.s3d();
  const double b1 = e.b1d(), b2 = e.b2d(), b3 = e.b3d();
  OuterProbe probe;
  for (int ne = 0; ne <= cap_exp; ++ne) {
    double partial = 0.0;
    // enumerate dyadic (N1,N2,N3) with N_max within a step of N and
    // N_med within a step of N_max
    for (int n1 = 0; n1 <= ne + 1; ++n1)
      for (int n2 = 0; n2 <= ne + 1; ++n2)
        for (int n3 = 0; n3 <= ne + 1; ++n3) {
          const int emax = std::max({n1, n2, n3});
          const int emin = std::min({n1, n2, n3});
          const int emed = n1 + n2 + n3 - emax - emin;
          if (std::abs(emax - ne) > 1 || std::abs(emed - emax) > 1) continue;
          const double N1 = std::exp2(n1), N2 = std::exp2(n2), N3 = std::exp2(n3);
          partial += std::pow(N1, -s1) * std::pow(N2, -s2) * std::pow(N3, -s3) *
                     inner_sum_bound(N1, N2, N3, b1, b2, b3, eps);
        }
    probe.rows.push_back({std::exp2(ne), partial});
    if (partial > probe.sup) {
      probe.sup = partial;
      probe.sup_at_N = std::exp2(ne);
    }
  }
  // classify the trend on the upper half of the scales
  std::vector<double> lx, ly;
  for (std::size_t i = probe.rows.size() / 2; i < probe.rows.size(); ++i) {
    lx.push_back(std::log(probe.rows[i].N));
    ly.push_back(std::log(std::max(probe.rows[i].partial, 1e-300)));
  }
  const double slope = lx.size() >= 2 ? least_squares(lx, ly).slope : 0.0;
  probe.trend = slope > 0.05 ? "growing" : (slope < -0.05 ? "decaying" : "flat");
  return probe;
}

}  // namespace xsb
