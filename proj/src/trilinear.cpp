#include "xsb/trilinear.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "xsb/parallel.hpp"
#include "xsb/stats.hpp"

namespace xsb {

cplx trilinear_integral_fields(const SpaceTimeField& f1, const SpaceTimeField& f2,
                               const SpaceTimeField& f3) {
  if (f1.grid != f2.grid || f1.grid != f3.grid)
    throw std::invalid_argument("trilinear_integral_fields: grid mismatch");
  cplx acc(0.0);
  for (std::size_t i = 0; i < f1.values.size(); ++i)
    acc += f1.values[i] * f2.values[i] * f3.values[i];
  return acc * f1.grid.cell_area_phys();
}

namespace {

cplx fourier_sum_impl(const FrequencyField& g1, const FrequencyField& g2,
                      const FrequencyField& g3, bool parallel) {
  const Grid& g = g1.grid;
  if (g != g2.grid || g != g3.grid)
    throw std::invalid_argument("trilinear_fourier_sum: grid mismatch");
  const int nt = g.t_points, nx = g.x_points;
  const long total = long(nt) * nx;
  double acc_re = 0.0, acc_im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc_re, acc_im) if (parallel)
  for (long i2 = 0; i2 < total; ++i2) {
    const int m2 = int(i2 / nx) + g.t_min();
    const int n2 = int(i2 % nx) + g.x_min();
    const cplx v2 = g2.at(m2, n2);
    if (v2 == cplx(0.0)) continue;
    cplx local(0.0);
    for (int m3 = g.t_min(); m3 < g.t_min() + nt; ++m3) {
      const int m1 = wrap_centered(-m2 - m3, nt);
      for (int n3 = g.x_min(); n3 < g.x_min() + nx; ++n3) {
        const int n1 = wrap_centered(-n2 - n3, nx);
        local += g1.at(m1, n1) * g3.at(m3, n3);
      }
    }
    local *= v2;
    acc_re += local.real();
    acc_im += local.imag();
  }
  const double P = g.x_length * g.t_length;
  const double scale = std::pow(2.0 * M_PI, 3) / (P * P);
  return cplx(acc_re, acc_im) * scale;
}

}  // namespace

cplx trilinear_fourier_sum(const FrequencyField& g1, const FrequencyField& g2,
                           const FrequencyField& g3) {
  return fourier_sum_impl(g1, g2, g3, max_threads() > 1);
}

cplx trilinear_fourier_sum_serial(const FrequencyField& g1, const FrequencyField& g2,
                                  const FrequencyField& g3) {
  return fourier_sum_impl(g1, g2, g3, false);
}

double multiplier_weight(const std::array<double, 3>& tau, const std::array<double, 3>& xi,
                         const ExponentTuple& e) {
  double mag = 1.0;
  for (int j = 0; j < 3; ++j) mag = std::max({mag, std::abs(tau[j]), std::abs(xi[j])});
  if (std::abs(tau[0] + tau[1] + tau[2]) > 1e-9 * mag ||
      std::abs(xi[0] + xi[1] + xi[2]) > 1e-9 * mag)
    throw std::invalid_argument("multiplier_weight: point off the convolution surface");
  const double sg = sign_value(e.pair_sign);
  const double num = std::pow(japanese_bracket(xi[0]), -e.s1d()) *
                     std::pow(japanese_bracket(xi[1]), -e.s2d()) *
                     std::pow(japanese_bracket(xi[2]), -e.s3d());
  const double den = std::pow(japanese_bracket(tau[0] + sg * xi[0]), e.b1d()) *
                     std::pow(japanese_bracket(tau[1] + sg * xi[1]), e.b2d()) *
                     std::pow(japanese_bracket(tau[2] - sg * xi[2]), e.b3d());
  return num / den;
}

double estimate_ratio(const SpaceTimeField& f1, const SpaceTimeField& f2,
                      const SpaceTimeField& f3, const ExponentTuple& e) {
  const double integral = std::abs(trilinear_integral_fields(f1, f2, f3));
  const double n1 = xsb_norm(dft_spacetime(f1), e.s1d(), e.b1d(), e.pair_sign);
  const double n2 = xsb_norm(dft_spacetime(f2), e.s2d(), e.b2d(), e.pair_sign);
  const double n3 = xsb_norm(dft_spacetime(f3), e.s3d(), e.b3d(), e.sign3());
  const double prod = n1 * n2 * n3;
  if (prod == 0.0) {
    if (integral == 0.0) return 0.0;
    throw std::invalid_argument("estimate_ratio: zero norm against nonzero integral");
  }
  return integral / prod;
}

double mixed_ratio(const SpaceTimeField& f1, const SpaceTimeField& f2, const SpaceTimeField& f3,
                   double s1, double s2, double r, double b1, double b2, double b3,
                   Sign pair_sign) {
  const double integral = std::abs(trilinear_integral_fields(f1, f2, f3));
  const double n1 = xsb_norm(dft_spacetime(f1), s1, b1, pair_sign);
  const double n2 = xsb_norm(dft_spacetime(f2), s2, b2, opposite(pair_sign));
  const double n3 = wave_sobolev_norm(dft_spacetime(f3), r, b3);
  const double prod = n1 * n2 * n3;
  if (prod == 0.0) {
    if (integral == 0.0) return 0.0;
    throw std::invalid_argument("mixed_ratio: zero norm against nonzero integral");
  }
  return integral / prod;
}

namespace {

ShearedBox shear_box(double at1, double ax1, double c1, double h1, double at2, double ax2,
                     double c2, double h2) {
  return ShearedBox({at1, ax1, c1, h1}, {at2, ax2, c2, h2});
}

std::vector<CounterexampleFamily> build_catalog() {
  std::vector<CounterexampleFamily> fams;
  auto add = [&](FamilyId id, std::string name, std::string cond, std::array<int, 3> d,
                 std::function<BoxTriple(double)> boxes,
                 std::function<double(const ExponentTuple&)> delta) {
    fams.push_back({id, std::move(name), std::move(cond), d, std::move(boxes), std::move(delta)});
  };

  add(FamilyId::b12, "b1b2", "b1 + b2 >= 0", {0, 0, 0},
      [](double l) {
        return BoxTriple{axis_box(l, 2, 0, 2), axis_box(-l, 1, 0, 1), axis_box(0, 1, 0, 1)};
      },
      [](const ExponentTuple& e) { return e.b1d() + e.b2d(); });

  add(FamilyId::b13, "b1b3", "b1 + b3 >= 0", {0, 0, 0},
      [](double l) {
        return BoxTriple{axis_box(l, 2, 0, 2), axis_box(0, 1, 0, 1), axis_box(-l, 1, 0, 1)};
      },
      [](const ExponentTuple& e) { return e.b1d() + e.b3d(); });

  add(FamilyId::bsum, "bsum", "b1 + b2 + b3 >= 1/2", {1, 1, 1},
      [](double l) {
        return BoxTriple{axis_box(-4 * l, 2 * l, 0, 2), axis_box(2 * l, l, 0, 1),
                         axis_box(2 * l, l, 0, 1)};
      },
      [](const ExponentTuple& e) { return e.b1d() + e.b2d() + e.b3d(); });

  add(FamilyId::s12, "s1s2", "s1 + s2 >= 0", {0, 0, 0},
      [](double l) {
        return BoxTriple{axis_box(-l, 2, l, 2), axis_box(l, 1, -l, 1), axis_box(0, 1, 0, 1)};
      },
      [](const ExponentTuple& e) { return e.s1d() + e.s2d(); });

  add(FamilyId::s13_b1, "s3_bmin1", "s1 + s3 + b1 >= 0", {0, 0, 0},
      [](double l) {
        return BoxTriple{axis_box(-l, 2, -l, 2), axis_box(0, 1, 0, 1), axis_box(l, 1, l, 1)};
      },
      [](const ExponentTuple& e) { return e.s1d() + e.s3d() + e.b1d(); });

  add(FamilyId::s13_b2, "s3_bmin2", "s1 + s3 + b2 >= 0", {0, 0, 0},
      [](double l) {
        return BoxTriple{axis_box(l, 2, -l, 2), axis_box(-2 * l, 1, 0, 1), axis_box(l, 1, l, 1)};
      },
      [](const ExponentTuple& e) { return e.s1d() + e.s3d() + e.b2d(); });

  add(FamilyId::s13_b3, "s3_bmin3", "s1 + s3 + b3 >= 0", {0, 0, 0},
      [](double l) {
        return BoxTriple{axis_box(-l, 2, l, 2), axis_box(0, 1, 0, 1), axis_box(l, 1, -l, 1)};
      },
      [](const ExponentTuple& e) { return e.s1d() + e.s3d() + e.b3d(); });

  add(FamilyId::s13_bsum, "s3_bsum", "s1 + s3 >= 1/2 - (b1+b2+b3)", {2, 1, 2},
      [](double l) {
        return BoxTriple{axis_box(-l, l / 2, -l, l / 2), axis_box(l, l / 4, 0, 1),
                         axis_box(0, l / 4, l, l / 4)};
      },
      [](const ExponentTuple& e) {
        return e.s1d() + e.s3d() + e.b1d() + e.b2d() + e.b3d();
      });

  add(FamilyId::ssum_b3, "ssum_b3", "s1 + s2 + s3 >= 1/2 - b3", {1, 1, 1},
      [](double l) {
        return BoxTriple{shear_box(1, 1, 0, 2, 0, 1, -2 * l, l / 2),
                         shear_box(1, 1, 0, 1, 0, 1, l, l / 4),
                         shear_box(1, 1, 0, 1, 0, 1, l, l / 4)};
      },
      [](const ExponentTuple& e) { return e.s1d() + e.s2d() + e.s3d() + e.b3d(); });

  add(FamilyId::ssum_ball, "ssum_ball", "s1 + s2 + s3 >= 1 - (b1+b2+b3)", {2, 2, 2},
      [](double l) {
        return BoxTriple{axis_box(0, l / 2, -2 * l, l / 2), axis_box(0, l / 4, l, l / 4),
                         axis_box(0, l / 4, l, l / 4)};
      },
      [](const ExponentTuple& e) {
        return e.s1d() + e.s2d() + e.s3d() + e.b1d() + e.b2d() + e.b3d();
      });

  add(FamilyId::ssum_b12, "ssum_b1b2", "s1 + s2 + s3 >= 1/2 - b1 - b2", {2, 2, 1},
      [](double l) {
        return BoxTriple{shear_box(1, 1, -3 * l, l, 0, 1, -2 * l, l / 2),
                         shear_box(1, 1, l, l / 4, 0, 1, l, l / 4),
                         shear_box(1, -1, 0, 1, 0, 1, l, l / 4)};
      },
      [](const ExponentTuple& e) {
        return e.s1d() + e.s2d() + e.s3d() + e.b1d() + e.b2d();
      });

  add(FamilyId::ssum_b13, "ssum_b1b3", "s1 + s2 + s3 >= 1/2 - b1 - b3", {2, 1, 2},
      [](double l) {
        return BoxTriple{shear_box(1, 1, -l, 3 * l / 4, 0, 1, -2 * l, l / 2),
                         shear_box(1, 1, 0, 1, 0, 1, l, l / 4),
                         axis_box(0, l / 4, l, l / 4)};
      },
      [](const ExponentTuple& e) {
        return e.s1d() + e.s2d() + e.s3d() + e.b1d() + e.b3d();
      });

  return fams;
}

}  // namespace

const std::vector<CounterexampleFamily>& family_catalog() {
  static const std::vector<CounterexampleFamily> cat = build_catalog();
  return cat;
}

const CounterexampleFamily& family_by_name(const std::string& name) {
  for (const auto& f : family_catalog())
    if (f.name == name) return f;
  throw std::invalid_argument("unknown counterexample family: " + name);
}

const CounterexampleFamily& family_for_bmin(const ExponentTuple& e, bool& tie) {
  const Rational bm = e.b_min();
  const std::array<Rational, 3> b = e.b();
  int first = 0;
  int count = 0;
  for (int j = 0; j < 3; ++j) {
    if (b[j] == bm) {
      if (count == 0) first = j;
      ++count;
    }
  }
  tie = count > 1;
  static const FamilyId ids[3] = {FamilyId::s13_b1, FamilyId::s13_b2, FamilyId::s13_b3};
  for (const auto& f : family_catalog())
    if (f.id == ids[first]) return f;
  throw std::logic_error("family_for_bmin: catalog incomplete");
}

std::vector<double> geometric_lambdas(double lo, double hi, double factor) {
  std::vector<double> out;
  for (double l = lo; l <= hi * (1.0 + 1e-12); l *= factor) out.push_back(l);
  return out;
}

SlopeReport counterexample_sweep(const CounterexampleFamily& fam, const ExponentTuple& e,
                                 const std::vector<double>& lambda_list) {
  if (lambda_list.size() < 6)
    throw std::invalid_argument("counterexample_sweep: need >= 6 lambda values");
  for (double l : lambda_list)
    if (l < 8.0) throw std::invalid_argument("counterexample_sweep: lambdas must be >= 8");
  for (std::size_t i = 2; i < lambda_list.size(); ++i) {
    const double r0 = lambda_list[1] / lambda_list[0];
    const double ri = lambda_list[i] / lambda_list[i - 1];
    if (std::abs(ri - r0) > 1e-9 * r0)
      throw std::invalid_argument("counterexample_sweep: lambda list must be geometric");
  }

  SlopeReport rep;
  rep.predicted_slope = -fam.margin(e);
  rep.rows.resize(lambda_list.size());
  // The catalog boxes witness the plus sign pattern; the minus pattern is the
  // tau reflection of the same construction with identical exponents.
  ExponentTuple ep = e;
  ep.pair_sign = Sign::plus;
  const long npts = static_cast<long>(lambda_list.size());
#pragma omp parallel for schedule(static) if (max_threads() > 1)
  for (long i = 0; i < npts; ++i) {
    const double l = lambda_list[i];
    const BoxTriple t = fam.boxes(l);
    const Vec2 pb = t.B.center();
    const Vec2 pc = t.C.center();
    const Vec2 pa = -(pb + pc);
    const double weight =
        multiplier_weight({pa.tau, pb.tau, pc.tau}, {pa.xi, pb.xi, pc.xi}, ep);
    const double overlap = trilinear_integral_boxes(t.A, t.B, t.C);
    const double denom = std::sqrt(t.A.measure() * t.B.measure() * t.C.measure());
    const double ratio = weight * overlap / denom;
    rep.rows[i] = {l, ratio, std::log(ratio)};
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {  // drop the preasymptotic point
    lx.push_back(std::log(rep.rows[i].lambda));
    ly.push_back(rep.rows[i].log_ratio);
  }
  rep.fitted_slope = least_squares(lx, ly).slope;
  return rep;
}

FrequencyField field_from_box(const ShearedBox& box, const Grid& grid) {
  FrequencyField out(grid);
  const int ss = 4;  // supersamples per cell edge
  for (int m = grid.t_min(); m < grid.t_min() + grid.t_points; ++m) {
    for (int n = grid.x_min(); n < grid.x_min() + grid.x_points; ++n) {
      int hits = 0;
      for (int i = 0; i < ss; ++i)
        for (int j = 0; j < ss; ++j) {
          const double tau = grid.tau(m) + ((i + 0.5) / ss - 0.5) * grid.dtau();
          const double xi = grid.xi(n) + ((j + 0.5) / ss - 0.5) * grid.dxi();
          if (box.contains({tau, xi})) ++hits;
        }
      out.at(m, n) = double(hits) / (ss * ss);
    }
  }
  return out;
}

}  // namespace xsb
