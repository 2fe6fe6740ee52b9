#include "xsb/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "xsb/parallel.hpp"
#include "xsb/stats.hpp"

namespace xsb {

namespace {

inline double xsb_weight(double tau, double xi, double s, double b, int sgn) {
  return std::pow(japanese_bracket(tau + sgn * xi), 2.0 * b) *
         std::pow(japanese_bracket(xi), 2.0 * s);
}

inline double wave_weight(double tau, double xi, double r, double b) {
  return std::pow(japanese_bracket(std::abs(tau) - std::abs(xi)), 2.0 * b) *
         std::pow(japanese_bracket(xi), 2.0 * r);
}

}  // namespace

double xsb_norm(const FrequencyField& g, double s, double b, Sign sign) {
  const Grid& gr = g.grid;
  const int sgn = sign_value(sign);
  double acc = 0.0;
  const bool par = gr.size() >= (1u << 14) && max_threads() > 1;
#pragma omp parallel for schedule(static) reduction(+ : acc) if (par)
  for (int r = 0; r < gr.t_points; ++r) {
    const double tau = gr.tau(r + gr.t_min());
    const cplx* row = g.coef.data() + std::size_t(r) * gr.x_points;
    double local = 0.0;
    for (int c = 0; c < gr.x_points; ++c)
      local += xsb_weight(tau, gr.xi(c + gr.x_min()), s, b, sgn) * std::norm(row[c]);
    acc += local;
  }
  return std::sqrt(acc * gr.cell_area_freq());
}

double xsb_norm_serial(const FrequencyField& g, double s, double b, Sign sign) {
  const Grid& gr = g.grid;
  const int sgn = sign_value(sign);
  double acc = 0.0;
  for (int r = 0; r < gr.t_points; ++r) {
    const double tau = gr.tau(r + gr.t_min());
    const cplx* row = g.coef.data() + std::size_t(r) * gr.x_points;
    for (int c = 0; c < gr.x_points; ++c)
      acc += xsb_weight(tau, gr.xi(c + gr.x_min()), s, b, sgn) * std::norm(row[c]);
  }
  return std::sqrt(acc * gr.cell_area_freq());
}

double wave_sobolev_norm(const FrequencyField& g, double r, double b) {
  const Grid& gr = g.grid;
  double acc = 0.0;
  const bool par = gr.size() >= (1u << 14) && max_threads() > 1;
#pragma omp parallel for schedule(static) reduction(+ : acc) if (par)
  for (int row = 0; row < gr.t_points; ++row) {
    const double tau = gr.tau(row + gr.t_min());
    const cplx* p = g.coef.data() + std::size_t(row) * gr.x_points;
    double local = 0.0;
    for (int c = 0; c < gr.x_points; ++c)
      local += wave_weight(tau, gr.xi(c + gr.x_min()), r, b) * std::norm(p[c]);
    acc += local;
  }
  return std::sqrt(acc * gr.cell_area_freq());
}

double wave_sobolev_norm_serial(const FrequencyField& g, double r, double b) {
  const Grid& gr = g.grid;
  double acc = 0.0;
  for (int row = 0; row < gr.t_points; ++row) {
    const double tau = gr.tau(row + gr.t_min());
    const cplx* p = g.coef.data() + std::size_t(row) * gr.x_points;
    for (int c = 0; c < gr.x_points; ++c)
      acc += wave_weight(tau, gr.xi(c + gr.x_min()), r, b) * std::norm(p[c]);
  }
  return std::sqrt(acc * gr.cell_area_freq());
}

double sobolev_norm(const std::vector<cplx>& slice, double s, const Grid& grid) {
  const auto fhat = dft_spatial(slice, grid);
  double acc = 0.0;
  for (int r = 0; r < grid.x_points; ++r)
    acc += std::pow(japanese_bracket(grid.xi(r + grid.x_min())), 2.0 * s) * std::norm(fhat[r]);
  return std::sqrt(acc * grid.dxi());
}

double calH_pair_norm(const FrequencyField& phi, const FrequencyField& phi_t, double r, double b) {
  if (phi.grid != phi_t.grid) throw std::invalid_argument("calH_pair_norm: grid mismatch");
  return wave_sobolev_norm(phi, r, b) + wave_sobolev_norm(phi_t, r - 1.0, b);
}

std::vector<CutoffProbeRow> cutoff_boundedness_probe(const SpaceTimeField& u, double s, double b,
                                                     Sign sign,
                                                     const std::vector<double>& dT_list) {
  if (!(b > -0.5 && b < 0.5))
    throw std::domain_error("cutoff_boundedness_probe: need |b| < 1/2");
  const double denom = xsb_norm(dft_spacetime(u), s, b, sign);
  if (denom == 0.0) throw std::invalid_argument("cutoff_boundedness_probe: zero field");
  std::vector<CutoffProbeRow> rows;
  rows.reserve(dT_list.size());
  for (double dT : dT_list) {
    const auto cut = time_window(u, dT, WindowKind::sharp_indicator);
    rows.push_back({dT, xsb_norm(dft_spacetime(cut), s, b, sign) / denom});
  }
  return rows;
}

DilationProbe dilation_gain_probe(const SpaceTimeField& u, double s, double b1, double b2,
                                  Sign sign, const std::vector<double>& dT_list) {
  if (!(b1 > -0.5 && b1 <= b2 && b2 < 0.5))
    throw std::domain_error("dilation_gain_probe: need -1/2 < b1 <= b2 < 1/2");
  if (dT_list.size() < 2)
    throw std::invalid_argument("dilation_gain_probe: need at least two dT values");
  const double denom = xsb_norm(dft_spacetime(u), s, b2, sign);
  if (denom == 0.0) throw std::invalid_argument("dilation_gain_probe: zero field");
  DilationProbe probe;
  probe.predicted = b2 - b1;
  std::vector<double> lx, ly;
  for (double dT : dT_list) {
    const auto win = time_window(u, dT, WindowKind::smooth_bump);
    const double ratio = xsb_norm(dft_spacetime(win), s, b1, sign) / denom;
    probe.dT.push_back(dT);
    probe.ratio.push_back(ratio);
    lx.push_back(std::log(dT));
    ly.push_back(std::log(ratio));
  }
  probe.slope = least_squares(lx, ly).slope;
  return probe;
}

}  // namespace xsb
