#include "xsb/dkg.hpp"

#include <cmath>

#include "xsb/norms.hpp"

namespace xsb {

void SolverConfig::validate() const {
  if (dt == 0.0 || !std::isfinite(dt)) throw std::invalid_argument("SolverConfig: dt must be nonzero");
  if (std::abs(dt) > grid.dx() + 1e-15)
    throw std::invalid_argument("SolverConfig: |dt| must not exceed dx");
}

int dealias_cutoff(int n_points) {
  // keep |k| <= K with n - 2K > K so aliased quadratic images stay outside
  int K = (n_points + 2) / 3 - 1;
  return K < 0 ? 0 : K;
}

namespace {

// FFT-order wavenumber for slot i: i < n/2 -> i, else i - n.
inline int fft_wavenumber(int slot, int n) { return slot < n / 2 ? slot : slot - n; }

std::vector<cplx> to_complex(const std::vector<double>& v) {
  std::vector<cplx> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = cplx(v[i], 0.0);
  return out;
}

void take_real(const std::vector<cplx>& v, std::vector<double>& out, const char* who) {
  out.resize(v.size());
  double max_re = 0.0, max_im = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    max_re = std::max(max_re, std::abs(v[i].real()));
    max_im = std::max(max_im, std::abs(v[i].imag()));
    out[i] = v[i].real();
  }
  if (max_im > 1e-12 * std::max(1.0, max_re))
    throw std::runtime_error(std::string(who) + ": scalar field grew an imaginary part");
}

void band_project_fftorder(std::vector<cplx>& spec, int n) {
  const int K = dealias_cutoff(n);
  for (int i = 0; i < n; ++i)
    if (std::abs(fft_wavenumber(i, n)) > K) spec[i] = cplx(0.0);
}

struct Workspace {
  const Grid& g;
  int n;
  explicit Workspace(const Grid& grid) : g(grid), n(grid.x_points) {}

  std::vector<cplx> fft(const std::vector<cplx>& v) const {
    std::vector<cplx> out = v;
    fft_pow2(out, -1);
    return out;
  }
  std::vector<cplx> ifft(std::vector<cplx> v) const {
    fft_pow2(v, +1);
    const double inv = 1.0 / n;
    for (auto& c : v) c *= inv;
    return v;
  }

  // pointwise product projected back onto the dealias band
  std::vector<cplx> dealiased_product(const std::vector<cplx>& a,
                                      const std::vector<cplx>& b) const {
    std::vector<cplx> prod(n);
    for (int i = 0; i < n; ++i) prod[i] = a[i] * b[i];
    auto spec = fft(prod);
    band_project_fftorder(spec, n);
    return ifft(std::move(spec));
  }
};

// Exact linear propagator over time h: transport phases on the spinors, the
// scalar rotation on (phi, phi_t).
void apply_linear(SolverState& st, const Workspace& ws, double h, double scalar_mass) {
  const int n = ws.n;
  auto sp = ws.fft(st.psi_plus);
  auto sm = ws.fft(st.psi_minus);
  auto ph = ws.fft(to_complex(st.phi));
  auto pt = ws.fft(to_complex(st.phi_t));
  const double m2 = scalar_mass * scalar_mass;
  for (int i = 0; i < n; ++i) {
    const double xi = ws.g.xi(fft_wavenumber(i, n));
    const cplx phase(std::cos(xi * h), -std::sin(xi * h));
    sp[i] *= phase;             // e^{-i xi h}
    sm[i] *= std::conj(phase);  // e^{+i xi h}
    const double om = std::sqrt(xi * xi + m2);
    if (om > 0.0) {
      const double c = std::cos(om * h), s = std::sin(om * h);
      const cplx f = ph[i], ft = pt[i];
      ph[i] = c * f + (s / om) * ft;
      pt[i] = -om * s * f + c * ft;
    } else {
      ph[i] += h * pt[i];  // massless zero mode: free drift
    }
  }
  st.psi_plus = ws.ifft(std::move(sp));
  st.psi_minus = ws.ifft(std::move(sm));
  take_real(ws.ifft(std::move(ph)), st.phi, "linear flow");
  take_real(ws.ifft(std::move(pt)), st.phi_t, "linear flow");
}

struct Increment {
  std::vector<cplx> dpsi_plus, dpsi_minus;
  std::vector<double> dphi_t;
};

// Pointwise coupling field: dpsi_± = -iM psi_∓ + i P(phi psi_∓),
// dphi_t = P(2 Re(psi_+ conj psi_-)); phi itself is carried by the linear
// rotation.
Increment coupling(const SolverState& st, const Workspace& ws, double dirac_mass) {
  const int n = ws.n;
  Increment k;
  k.dpsi_plus.resize(n);
  k.dpsi_minus.resize(n);
  k.dphi_t.resize(n);
  std::vector<cplx> phi_c = to_complex(st.phi);
  auto pp = ws.dealiased_product(phi_c, st.psi_plus);
  auto pm = ws.dealiased_product(phi_c, st.psi_minus);
  std::vector<cplx> src(n);
  for (int i = 0; i < n; ++i) src[i] = st.psi_plus[i] * std::conj(st.psi_minus[i]);
  auto src_spec = ws.fft(src);
  band_project_fftorder(src_spec, n);
  auto src_band = ws.ifft(std::move(src_spec));
  const cplx iu(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    k.dpsi_plus[i] = iu * (pm[i] - dirac_mass * st.psi_minus[i]);
    k.dpsi_minus[i] = iu * (pp[i] - dirac_mass * st.psi_plus[i]);
    k.dphi_t[i] = 2.0 * src_band[i].real();
  }
  return k;
}

void axpy(SolverState& st, double a, const Increment& k) {
  for (std::size_t i = 0; i < st.psi_plus.size(); ++i) {
    st.psi_plus[i] += a * k.dpsi_plus[i];
    st.psi_minus[i] += a * k.dpsi_minus[i];
    st.phi_t[i] += a * k.dphi_t[i];
  }
}

SolverState step_strang(const SolverState& st, const SolverConfig& cfg) {
  const Workspace ws(cfg.grid);
  const double h = cfg.dt;
  SolverState out = st;
  apply_linear(out, ws, 0.5 * h, cfg.scalar_mass);
  // explicit midpoint on the coupling substep
  Increment k1 = coupling(out, ws, cfg.dirac_mass);
  SolverState mid = out;
  axpy(mid, 0.5 * h, k1);
  Increment k2 = coupling(mid, ws, cfg.dirac_mass);
  axpy(out, h, k2);
  apply_linear(out, ws, 0.5 * h, cfg.scalar_mass);
  out.time = st.time + h;
  return out;
}

SolverState add_states(const SolverState& a, double ca, const SolverState& b, double cb) {
  SolverState out = a;
  for (std::size_t i = 0; i < a.psi_plus.size(); ++i) {
    out.psi_plus[i] = ca * a.psi_plus[i] + cb * b.psi_plus[i];
    out.psi_minus[i] = ca * a.psi_minus[i] + cb * b.psi_minus[i];
    out.phi[i] = ca * a.phi[i] + cb * b.phi[i];
    out.phi_t[i] = ca * a.phi_t[i] + cb * b.phi_t[i];
  }
  return out;
}

// Integrating-factor RK4: classical RK4 on w(t) = E(-t) u(t) where E is the
// exact linear flow. Increments ride through E as full states with zero phi.
SolverState step_rk4_if(const SolverState& st, const SolverConfig& cfg) {
  const Workspace ws(cfg.grid);
  const double h = cfg.dt;
  auto E = [&](const SolverState& v, double t) {
    SolverState out = v;
    apply_linear(out, ws, t, cfg.scalar_mass);
    return out;
  };
  auto N = [&](const SolverState& v) {
    Increment k = coupling(v, ws, cfg.dirac_mass);
    SolverState out(cfg.grid);
    out.psi_plus = k.dpsi_plus;
    out.psi_minus = k.dpsi_minus;
    out.phi_t = k.dphi_t;
    return out;
  };
  const SolverState k1 = N(st);
  const SolverState u_half = E(st, 0.5 * h);
  const SolverState k2 = N(add_states(u_half, 1.0, E(k1, 0.5 * h), 0.5 * h));
  const SolverState k3 = N(add_states(u_half, 1.0, k2, 0.5 * h));
  const SolverState u_full = E(st, h);
  const SolverState k4 = N(add_states(u_full, 1.0, E(k3, 0.5 * h), h));
  SolverState out = u_full;
  SolverState acc = add_states(E(k1, h), 1.0, E(k2, 0.5 * h), 2.0);
  acc = add_states(acc, 1.0, E(k3, 0.5 * h), 2.0);
  acc = add_states(acc, 1.0, k4, 1.0);
  out = add_states(out, 1.0, acc, h / 6.0);
  out.time = st.time + h;
  return out;
}

bool finite_state(const SolverState& st) {
  for (const auto& c : st.psi_plus)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  for (const auto& c : st.psi_minus)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  for (double v : st.phi)
    if (!std::isfinite(v)) return false;
  for (double v : st.phi_t)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

void project_band(SolverState& st, const Grid& g) {
  const Workspace ws(g);
  auto project = [&](std::vector<cplx>& v) {
    auto spec = ws.fft(v);
    band_project_fftorder(spec, ws.n);
    v = ws.ifft(std::move(spec));
  };
  project(st.psi_plus);
  project(st.psi_minus);
  std::vector<cplx> tmp = to_complex(st.phi);
  project(tmp);
  take_real(tmp, st.phi, "project_band");
  tmp = to_complex(st.phi_t);
  project(tmp);
  take_real(tmp, st.phi_t, "project_band");
}

SolverState initial_data(std::uint64_t seed, double s, double r, double amp_spinor,
                         double amp_scalar, const Grid& grid) {
  const int K = dealias_cutoff(grid.x_points);
  SolverState st(grid);
  st.psi_plus = random_spatial(seed * 4 + 1, s, grid, amp_spinor, K);
  st.psi_minus = random_spatial(seed * 4 + 2, s, grid, amp_spinor, K);
  auto real_component = [&](std::uint64_t sub_seed, double reg, double amp,
                            std::vector<double>& out) {
    auto c = random_spatial(sub_seed, reg, grid, 1.0, K);
    std::vector<cplx> re(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) re[i] = cplx(c[i].real(), 0.0);
    const double nrm = sobolev_norm(re, reg, grid);
    out.resize(c.size());
    const double scale = amp == 0.0 ? 0.0 : amp / nrm;
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = re[i].real() * scale;
  };
  real_component(seed * 4 + 3, r, amp_scalar, st.phi);
  real_component(seed * 4 + 4, r - 1.0, amp_scalar, st.phi_t);
  return st;
}

SolverState step(const SolverState& st, const SolverConfig& cfg) {
  cfg.validate();
  SolverState out =
      cfg.scheme == Scheme::strang ? step_strang(st, cfg) : step_rk4_if(st, cfg);
  if (!finite_state(out))
    throw divergence_error("solver state diverged (NaN/Inf)", -1, out.time);
  return out;
}

double charge(const SolverState& st, const Grid& g) {
  double acc = 0.0;
  for (std::size_t i = 0; i < st.psi_plus.size(); ++i)
    acc += std::norm(st.psi_plus[i]) + std::norm(st.psi_minus[i]);
  return acc * g.dx();
}

Trajectory evolve(SolverState st, const SolverConfig& cfg, double T,
                  const std::vector<Observer>& observers, int store_stride) {
  cfg.validate();
  if (T < 0.0) throw std::invalid_argument("evolve: T must be >= 0");
  if (store_stride < 1) throw std::invalid_argument("evolve: store_stride must be >= 1");
  project_band(st, cfg.grid);

  Trajectory traj;
  auto record = [&](const SolverState& s) {
    traj.times.push_back(s.time);
    traj.states.push_back(s);
    for (const auto& obs : observers) obs(s, cfg.grid);
  };
  record(st);
  if (T == 0.0) return traj;

  const double hdt = std::abs(cfg.dt);
  const long full_steps = static_cast<long>(std::floor(T / hdt + 1e-9));
  const double remainder = T - full_steps * hdt;
  const bool has_remainder = remainder > 1e-12 * hdt;
  for (long i = 1; i <= full_steps; ++i) {
    try {
      st = step(st, cfg);
    } catch (const divergence_error& e) {
      throw divergence_error(e.what(), i, st.time);
    }
    const bool is_final = (i == full_steps) && !has_remainder;
    if (!is_final && i % store_stride == 0) record(st);
  }
  if (has_remainder) {
    SolverConfig last = cfg;
    last.dt = cfg.dt < 0 ? -remainder : remainder;
    try {
      st = step(st, last);
    } catch (const divergence_error& e) {
      throw divergence_error(e.what(), full_steps + 1, st.time);
    }
  }
  record(st);  // endpoint, exactly once
  return traj;
}

}  // namespace xsb
