#include "xsb/imethod.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xsb/norms.hpp"
#include "xsb/parallel.hpp"
#include "xsb/stats.hpp"

namespace xsb {

Mollifier::Mollifier(double threshold, double regularity) : N(threshold), s(regularity) {
  if (!(N > 0.0)) throw std::invalid_argument("Mollifier: threshold N must be positive");
  if (!(s < 0.0)) throw std::invalid_argument("Mollifier: regularity s must be negative");
}

double Mollifier::rho0(double a) const {
  a = std::abs(a);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return std::pow(a, s);
  // log-log quintic h(t) = 3t^5 - 8t^4 + 6t^3: h(0)=0, h'(0)=0, h''(0)=0,
  // h(1)=1, h'(1)=1, h''(1)=0; h' >= 0, so rho0 is C^2 and nonincreasing.
  const double t = std::log(a) / std::log(2.0);
  const double h = ((3.0 * t - 8.0) * t + 6.0) * t * t * t;
  return std::exp(s * std::log(2.0) * h);
}

namespace {

std::vector<cplx> multiply_spatial(const std::vector<cplx>& slice, const Grid& grid,
                                   const Mollifier& mol, int power) {
  auto fhat = dft_spatial(slice, grid);
  for (int r = 0; r < grid.x_points; ++r) {
    const double rho = mol.rho(grid.xi(r + grid.x_min()));
    double factor = 1.0;
    for (int k = 0; k < power; ++k) factor *= rho;
    fhat[r] *= factor;
  }
  return idft_spatial(fhat, grid);
}

}  // namespace

std::vector<cplx> apply_I(const std::vector<cplx>& slice, const Grid& grid, const Mollifier& mol,
                          int power) {
  if (power < 1) throw std::invalid_argument("apply_I: power must be >= 1");
  return multiply_spatial(slice, grid, mol, power);
}

std::vector<double> apply_I(const std::vector<double>& slice, const Grid& grid,
                            const Mollifier& mol, int power) {
  std::vector<cplx> c(slice.size());
  for (std::size_t i = 0; i < slice.size(); ++i) c[i] = cplx(slice[i], 0.0);
  const auto out = apply_I(c, grid, mol, power);
  std::vector<double> res(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) res[i] = out[i].real();  // rho even => real stays real
  return res;
}

SpaceTimeField apply_I(const SpaceTimeField& f, const Mollifier& mol, int power) {
  SpaceTimeField out(f.grid);
  const int nt = f.grid.t_points, nx = f.grid.x_points;
#pragma omp parallel for schedule(static) if (nt >= 8 && max_threads() > 1)
  for (int j = 0; j < nt; ++j) {
    std::vector<cplx> row(f.values.begin() + std::size_t(j) * nx,
                          f.values.begin() + std::size_t(j + 1) * nx);
    const auto res = apply_I(row, f.grid, mol, power);
    std::copy(res.begin(), res.end(), out.values.begin() + std::size_t(j) * nx);
  }
  return out;
}

std::pair<double, double> sandwich_probe(const std::vector<cplx>& f, const Grid& grid,
                                         const Mollifier& mol, double sigma) {
  const double base = sobolev_norm(f, sigma, grid);
  const double mollified = sobolev_norm(apply_I(f, grid, mol), sigma - mol.s, grid);
  if (base == 0.0 || mollified == 0.0)
    throw std::invalid_argument("sandwich_probe: zero field");
  return {base / mollified, mollified / (std::pow(mol.N, -mol.s) * base)};
}

double trade_probe(const std::vector<cplx>& g, const Grid& grid, const Mollifier& mol, double s1,
                   double s2) {
  if (!(s1 < s2)) throw std::invalid_argument("trade_probe: need s1 < s2");
  const auto ghat = dft_spatial(g, grid);
  double low_mass = 0.0, total = 0.0;
  for (int r = 0; r < grid.x_points; ++r) {
    const double m = std::norm(ghat[r]);
    total += m;
    if (std::abs(grid.xi(r + grid.x_min())) < 0.5 * mol.N) low_mass += m;
  }
  if (total == 0.0) throw std::invalid_argument("trade_probe: zero field");
  if (low_mass > 1e-24 * total)
    throw std::domain_error("trade_probe: spectrum must live in |xi| >= N/2");
  const double num = sobolev_norm(g, s1, grid);
  const double den =
      std::pow(mol.N, s1 - s2 + mol.s) * sobolev_norm(apply_I(g, grid, mol), s2 - mol.s, grid);
  return num / den;
}

std::vector<cplx> commutator_slice(const std::vector<cplx>& f, const std::vector<cplx>& g,
                                   const Grid& grid, const Mollifier& mol) {
  if (f.size() != g.size() || static_cast<int>(f.size()) != grid.x_points)
    throw std::invalid_argument("commutator_slice: size mismatch");
  std::vector<cplx> prod(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) prod[i] = f[i] * g[i];
  const auto i_prod = apply_I(prod, grid, mol, 1);
  const auto i2f = apply_I(f, grid, mol, 2);
  const auto ig = apply_I(g, grid, mol, 1);
  std::vector<cplx> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = i_prod[i] - i2f[i] * ig[i];
  return out;
}

SpaceTimeField commutator(const SpaceTimeField& f, const SpaceTimeField& g,
                          const Mollifier& mol) {
  if (f.grid != g.grid) throw std::invalid_argument("commutator: grid mismatch");
  SpaceTimeField out(f.grid);
  const int nt = f.grid.t_points, nx = f.grid.x_points;
#pragma omp parallel for schedule(static) if (nt >= 8 && max_threads() > 1)
  for (int j = 0; j < nt; ++j) {
    std::vector<cplx> rf(f.values.begin() + std::size_t(j) * nx,
                         f.values.begin() + std::size_t(j + 1) * nx);
    std::vector<cplx> rg(g.values.begin() + std::size_t(j) * nx,
                         g.values.begin() + std::size_t(j + 1) * nx);
    const auto res = commutator_slice(rf, rg, f.grid, mol);
    std::copy(res.begin(), res.end(), out.values.begin() + std::size_t(j) * nx);
  }
  return out;
}

std::vector<cplx> commutator_slice_direct(const std::vector<cplx>& f, const std::vector<cplx>& g,
                                          const Grid& grid, const Mollifier& mol) {
  const int n = grid.x_points;
  const auto fhat = dft_spatial(f, grid);
  const auto ghat = dft_spatial(g, grid);
  std::vector<cplx> qhat(n, cplx(0.0));
  const double conv_scale = grid.dxi() / std::sqrt(2.0 * M_PI);
#pragma omp parallel for schedule(static) if (n >= 256 && max_threads() > 1)
  for (int m = 0; m < n; ++m) {
    const int mi = m + grid.x_min();
    const double xi = grid.xi(mi);
    cplx acc(0.0);
    for (int k = 0; k < n; ++k) {
      const int ki = k + grid.x_min();
      const int di = wrap_centered(mi - ki, n);  // the lattice product convolves with wrap
      const double kern =
          mol.rho(xi) - mol.rho(grid.xi(di)) * mol.rho(grid.xi(di)) * mol.rho(grid.xi(ki));
      acc += kern * fhat[di - grid.x_min()] * ghat[k];
    }
    qhat[m] = conv_scale * acc;
  }
  return idft_spatial(qhat, grid);
}

double gamma_running_sup(const Trajectory& traj, const Grid& grid, const Mollifier& mol,
                         double z) {
  if (traj.states.empty()) throw std::invalid_argument("gamma_running_sup: empty trajectory");
  double sup = 0.0;
  bool seen = false;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    if (traj.times[i] > z + 1e-12) break;
    const auto& st = traj.states[i];
    const auto ip = apply_I(st.psi_plus, grid, mol);
    const auto im = apply_I(st.psi_minus, grid, mol);
    double q = 0.0;
    for (std::size_t k = 0; k < ip.size(); ++k) q += std::norm(ip[k]) + std::norm(im[k]);
    q *= grid.dx();
    sup = seen ? std::max(sup, q) : q;
    seen = true;
  }
  if (!seen) throw std::invalid_argument("gamma_running_sup: no stored state at or before z");
  return sup;
}

double growth_term(const Trajectory& traj, const Grid& grid, const Mollifier& mol,
                   double t_prime) {
  if (traj.states.empty()) throw std::invalid_argument("growth_term: empty trajectory");
  // v_pm(t) = int Q(phi, psi_pm) conj(I psi_mp) dx, cumulative trapezoid,
  // then sup of |cumulative| over stored times <= t_prime.
  cplx cum_p(0.0), cum_m(0.0);
  double sup_p = 0.0, sup_m = 0.0;
  cplx prev_p(0.0), prev_m(0.0);
  double prev_t = 0.0;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    if (traj.times[i] > t_prime + 1e-12) break;
    const auto& st = traj.states[i];
    std::vector<cplx> phi_c(st.phi.size());
    for (std::size_t k = 0; k < st.phi.size(); ++k) phi_c[k] = cplx(st.phi[k], 0.0);
    const auto qp = commutator_slice(phi_c, st.psi_plus, grid, mol);
    const auto qm = commutator_slice(phi_c, st.psi_minus, grid, mol);
    const auto ip = apply_I(st.psi_plus, grid, mol);
    const auto im = apply_I(st.psi_minus, grid, mol);
    cplx vp(0.0), vm(0.0);
    for (std::size_t k = 0; k < qp.size(); ++k) {
      vp += qp[k] * std::conj(im[k]);
      vm += qm[k] * std::conj(ip[k]);
    }
    vp *= grid.dx();
    vm *= grid.dx();
    if (i > 0) {
      const double h = traj.times[i] - prev_t;
      cum_p += 0.5 * h * (prev_p + vp);
      cum_m += 0.5 * h * (prev_m + vm);
    }
    sup_p = std::max(sup_p, std::abs(cum_p));
    sup_m = std::max(sup_m, std::abs(cum_m));
    prev_p = vp;
    prev_m = vm;
    prev_t = traj.times[i];
  }
  return 2.0 * (sup_p + sup_m);
}

double delta_t_schedule(double N, double s, double r, double eps) {
  if (!(s < 0.0)) throw std::domain_error("delta_t_schedule: s must be negative");
  if (!(N > 1.0)) throw std::domain_error("delta_t_schedule: N must exceed 1");
  if (!(eps > 0.0)) throw std::domain_error("delta_t_schedule: eps must be positive");
  const double den = 1.0 + 2.0 * r - 4.0 * s - 6.0 * eps;
  if (!(den > 0.0)) throw std::domain_error("delta_t_schedule: schedule denominator must be positive");
  return std::pow(N, (4.0 * s - 2.0 * eps) / den);
}

AcReport almost_conservation_experiment(const AcParams& p) {
  if (!(p.s > -0.25 && p.s < 0.0))
    throw std::domain_error("almost_conservation_experiment: need -1/4 < s < 0");
  if (!(p.r > -p.s && p.r <= 1.0 + 2.0 * p.s))
    throw std::domain_error("almost_conservation_experiment: need -s < r <= 1 + 2s");
  if (p.N_list.empty()) throw std::invalid_argument("almost_conservation_experiment: empty N list");

  const SolverState data =
      initial_data(p.base_seed, p.s, p.r, p.amp_spinor, p.amp_scalar, p.grid);
  AcReport rep;
  rep.rows.resize(p.N_list.size());
  const long runs = static_cast<long>(p.N_list.size());
#pragma omp parallel for schedule(dynamic) if (max_threads() > 1)
  for (long i = 0; i < runs; ++i) {
    const double N = p.N_list[i];
    const Mollifier mol(N, p.s);
    const double dT = delta_t_schedule(N, p.s, p.r, p.eps);
    SolverConfig cfg;
    cfg.dirac_mass = p.dirac_mass;
    cfg.scalar_mass = p.scalar_mass;
    cfg.grid = p.grid;
    cfg.dt = p.dt;
    const Trajectory traj = evolve(data, cfg, dT, {}, 1);
    AcRow row;
    row.N = N;
    row.deltaT = dT;
    row.gamma0 = gamma_running_sup(traj, p.grid, mol, 0.0);
    row.gammaT = gamma_running_sup(traj, p.grid, mol, dT);
    row.dgamma = row.gammaT - row.gamma0;
    row.at_noise_floor = row.dgamma < 1e-12 * row.gamma0;
    rep.rows[i] = row;
  }
  const double q_exp = (4.0 * p.s - 2.0 * p.eps) / (1.0 + 2.0 * p.r - 4.0 * p.s - 6.0 * p.eps);
  rep.reference_slope = (0.5 - 2.0 * p.eps) * q_exp + (-p.r + 2.0 * p.eps);
  std::vector<double> lx, ly;
  for (const auto& row : rep.rows) {
    if (row.at_noise_floor) continue;
    lx.push_back(std::log(row.N));
    ly.push_back(std::log(row.dgamma / row.gamma0));
  }
  rep.slope_defined = lx.size() >= 2;
  if (rep.slope_defined) rep.fitted_slope = least_squares(lx, ly).slope;
  return rep;
}

}  // namespace xsb
