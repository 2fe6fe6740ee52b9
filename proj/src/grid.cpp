#include "xsb/grid.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "xsb/norms.hpp"
#include "xsb/parallel.hpp"

namespace xsb {

Grid::Grid(int xp, int tp, double xl, double tl)
    : x_points(xp), t_points(tp), x_length(xl), t_length(tl) {
  if (!is_pow2(xp) || !is_pow2(tp))
    throw std::invalid_argument("Grid: point counts must be powers of two");
  if (!(xl > 0.0) || !(tl > 0.0) || !std::isfinite(xl) || !std::isfinite(tl))
    throw std::invalid_argument("Grid: periods must be positive finite");
}

SpaceTimeField::SpaceTimeField(const Grid& g, std::vector<cplx> v)
    : grid(g), values(std::move(v)) {
  if (values.size() != grid.size())
    throw std::invalid_argument("SpaceTimeField: value array does not match grid");
}

FrequencyField::FrequencyField(const Grid& g, std::vector<cplx> c) : grid(g), coef(std::move(c)) {
  if (coef.size() != grid.size())
    throw std::invalid_argument("FrequencyField: coefficient array does not match grid");
}

namespace {

// 2-D FFT over [t][x] storage; rows then gathered columns. sign as fft_pow2.
void fft2(std::vector<cplx>& a, int nt, int nx, int sign) {
  const bool par = std::size_t(nt) * nx >= (1u << 14) && max_threads() > 1;
#pragma omp parallel for schedule(static) if (par)
  for (int j = 0; j < nt; ++j) fft_pow2(a.data() + std::size_t(j) * nx, nx, sign);
#pragma omp parallel for schedule(static) if (par)
  for (int k = 0; k < nx; ++k) {
    std::vector<cplx> col(nt);
    for (int j = 0; j < nt; ++j) col[j] = a[std::size_t(j) * nx + k];
    fft_pow2(col.data(), nt, sign);
    for (int j = 0; j < nt; ++j) a[std::size_t(j) * nx + k] = col[j];
  }
}

// FFT-order <-> centered-order: centered slot r holds frequency index
// r - n/2, which lives at FFT slot (r + n/2) % n.
inline int fft_slot(int r, int n) { return (r + n / 2) % n; }

}  // namespace

FrequencyField dft_spacetime(const SpaceTimeField& f) {
  const Grid& g = f.grid;
  std::vector<cplx> work = f.values;
  fft2(work, g.t_points, g.x_points, -1);
  FrequencyField out(g);
  const double scale = g.dx() * g.dt() / (2.0 * M_PI);
  for (int r = 0; r < g.t_points; ++r)
    for (int c = 0; c < g.x_points; ++c)
      out.coef[std::size_t(r) * g.x_points + c] =
          scale * work[std::size_t(fft_slot(r, g.t_points)) * g.x_points + fft_slot(c, g.x_points)];
  return out;
}

SpaceTimeField idft(const FrequencyField& gf) {
  const Grid& g = gf.grid;
  std::vector<cplx> work(g.size());
  for (int r = 0; r < g.t_points; ++r)
    for (int c = 0; c < g.x_points; ++c)
      work[std::size_t(fft_slot(r, g.t_points)) * g.x_points + fft_slot(c, g.x_points)] =
          gf.coef[std::size_t(r) * g.x_points + c];
  fft2(work, g.t_points, g.x_points, +1);
  const double scale = g.dtau() * g.dxi() / (2.0 * M_PI);
  SpaceTimeField out(g);
  for (std::size_t i = 0; i < work.size(); ++i) out.values[i] = scale * work[i];
  return out;
}

std::vector<cplx> dft_spatial(const std::vector<cplx>& f, const Grid& grid) {
  const int n = grid.x_points;
  if (static_cast<int>(f.size()) != n)
    throw std::invalid_argument("dft_spatial: array does not match grid");
  std::vector<cplx> work = f;
  fft_pow2(work, -1);
  std::vector<cplx> out(n);
  const double scale = grid.dx() / std::sqrt(2.0 * M_PI);
  for (int r = 0; r < n; ++r) out[r] = scale * work[fft_slot(r, n)];
  return out;
}

std::vector<cplx> idft_spatial(const std::vector<cplx>& fhat, const Grid& grid) {
  const int n = grid.x_points;
  if (static_cast<int>(fhat.size()) != n)
    throw std::invalid_argument("idft_spatial: array does not match grid");
  std::vector<cplx> work(n);
  for (int r = 0; r < n; ++r) work[fft_slot(r, n)] = fhat[r];
  fft_pow2(work, +1);
  const double scale = grid.dxi() / std::sqrt(2.0 * M_PI);
  for (int r = 0; r < n; ++r) work[r] *= scale;
  return work;
}

double bump_profile(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double z = 2.0 * u - 1.0;
  return std::exp(1.0 - 1.0 / (1.0 - z * z));
}

SpaceTimeField time_window(const SpaceTimeField& f, double dT, WindowKind kind) {
  const Grid& g = f.grid;
  if (!(dT > 0.0) || dT > g.t_length)
    throw std::invalid_argument("time_window: need 0 < dT <= t_length");
  SpaceTimeField out(g);
  for (int j = 0; j < g.t_points; ++j) {
    const double tj = g.t(j);
    const double w =
        kind == WindowKind::sharp_indicator ? (tj < dT ? 1.0 : 0.0) : bump_profile(tj / dT);
    for (int k = 0; k < g.x_points; ++k) out.at(j, k) = w * f.at(j, k);
  }
  return out;
}

namespace {

// Box-Muller on top of mt19937_64 so the draw is identical across standard
// libraries.
struct GaussianDraw {
  std::mt19937_64 eng;
  explicit GaussianDraw(std::uint64_t seed) : eng(seed) {}
  double uniform01() {
    // (0,1]: avoids log(0)
    return (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;
  }
  cplx complex_unit_gaussian() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-std::log(u1));  // so E|Z|^2 = 1
    const double th = 2.0 * M_PI * u2;
    return cplx(r * std::cos(th), r * std::sin(th));
  }
};

constexpr double kSpectralMargin = 0.01;  // keeps H^s membership resolution-stable
constexpr double kTemporalDecay = 0.51;

}  // namespace

SpaceTimeField random_field(std::uint64_t seed, double s, const Grid& grid, double amplitude) {
  GaussianDraw draw(seed);
  FrequencyField coefs(grid);
  const double xi_exp = -s - 0.5 - kSpectralMargin;
  for (int m = grid.t_min(); m < grid.t_min() + grid.t_points; ++m) {
    const double wt = std::pow(japanese_bracket(grid.tau(m)), -kTemporalDecay);
    for (int n = grid.x_min(); n < grid.x_min() + grid.x_points; ++n) {
      const double wx = std::pow(japanese_bracket(grid.xi(n)), xi_exp);
      coefs.at(m, n) = draw.complex_unit_gaussian() * (wt * wx);
    }
  }
  if (amplitude == 0.0) return SpaceTimeField(grid);
  const double norm = xsb_norm(coefs, s, 0.0, Sign::plus);
  for (auto& c : coefs.coef) c *= amplitude / norm;
  return idft(coefs);
}

std::vector<cplx> random_spatial(std::uint64_t seed, double s, const Grid& grid, double amplitude,
                                 int band_limit) {
  GaussianDraw draw(seed);
  const int n = grid.x_points;
  std::vector<cplx> fhat(n, cplx(0.0));
  const double xi_exp = -s - 0.5 - kSpectralMargin;
  double norm2 = 0.0;
  for (int r = 0; r < n; ++r) {
    const int idx = r + grid.x_min();
    cplx z = draw.complex_unit_gaussian();  // always draw: band limit must not reshuffle modes
    if (band_limit >= 0 && std::abs(idx) > band_limit) continue;
    const double xi = grid.xi(idx);
    fhat[r] = z * std::pow(japanese_bracket(xi), xi_exp);
    norm2 += std::pow(japanese_bracket(xi), 2.0 * s) * std::norm(fhat[r]) * grid.dxi();
  }
  if (amplitude == 0.0) return std::vector<cplx>(n, cplx(0.0));
  const double scale = amplitude / std::sqrt(norm2);
  for (auto& c : fhat) c *= scale;
  return idft_spatial(fhat, grid);
}

}  // namespace xsb
