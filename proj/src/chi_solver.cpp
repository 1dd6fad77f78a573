#include "genmax/chi_solver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "genmax/errors.hpp"

namespace genmax {

namespace {

enum Slot { kEx, kEy, kEz, kBx, kBy, kBz, kCr, kCi, kCrt, kCit, kSlots };

using ModeState = std::array<cplx, kSlots>;

// Time derivative of one Fourier mode of the linear system.
inline ModeState mode_rhs(const ModeState& y, const Vec3& k, double k2) {
  ModeState d;
  const cplx ik[3] = {kI * k.x(), kI * k.y(), kI * k.z()};
  // ik x B - ik Re chi
  d[kEx] = ik[1] * y[kBz] - ik[2] * y[kBy] - ik[0] * y[kCr];
  d[kEy] = ik[2] * y[kBx] - ik[0] * y[kBz] - ik[1] * y[kCr];
  d[kEz] = ik[0] * y[kBy] - ik[1] * y[kBx] - ik[2] * y[kCr];
  // -ik x E + ik Im chi
  d[kBx] = -(ik[1] * y[kEz] - ik[2] * y[kEy]) + ik[0] * y[kCi];
  d[kBy] = -(ik[2] * y[kEx] - ik[0] * y[kEz]) + ik[1] * y[kCi];
  d[kBz] = -(ik[0] * y[kEy] - ik[1] * y[kEx]) + ik[2] * y[kCi];
  d[kCr] = y[kCrt];
  d[kCi] = y[kCit];
  d[kCrt] = -k2 * y[kCr];
  d[kCit] = -k2 * y[kCi];
  return d;
}

inline ModeState axpy(const ModeState& y, double h, const ModeState& d) {
  ModeState out;
  for (int i = 0; i < kSlots; ++i) out[i] = y[i] + h * d[i];
  return out;
}

double sum_squares(const FieldState& s) {
  double acc = 0.0;
  for (const RealField* f : s.fields())
    for (double v : *f) acc += v * v;
  return acc;
}

}  // namespace

FieldState FieldState::zeros(const Grid& g) {
  g.validate();
  FieldState s;
  s.grid = g;
  for (RealField* f : s.fields()) f->assign(g.size(), 0.0);
  return s;
}

std::array<const RealField*, 10> FieldState::fields() const {
  return {&E[0], &E[1], &E[2], &B[0], &B[1], &B[2], &chi_re, &chi_im, &chi_re_t, &chi_im_t};
}

std::array<RealField*, 10> FieldState::fields() {
  return {&E[0], &E[1], &E[2], &B[0], &B[1], &B[2], &chi_re, &chi_im, &chi_re_t, &chi_im_t};
}

bool FieldState::all_finite() const {
  for (const RealField* f : fields())
    for (double v : *f)
      if (!std::isfinite(v)) return false;
  return true;
}

void FieldState::check_shape() const {
  const std::size_t n = grid.size();
  for (const RealField* f : fields()) {
    if (f->size() != n) throw std::invalid_argument("field array does not match grid size");
  }
}

double cfl_bound(const Grid& g) { return 0.5 * g.dx() / std::sqrt(static_cast<double>(g.dims)); }

FieldState linear_combination(double a, const FieldState& x, double b, const FieldState& y) {
  if (!(x.grid == y.grid)) throw std::invalid_argument("states live on different grids");
  FieldState out = FieldState::zeros(x.grid);
  out.t = x.t;
  auto fo = out.fields();
  auto fx = x.fields();
  auto fy = y.fields();
  for (std::size_t c = 0; c < fo.size(); ++c)
    for (std::size_t i = 0; i < fo[c]->size(); ++i)
      (*fo[c])[i] = a * (*fx[c])[i] + b * (*fy[c])[i];
  return out;
}

double relative_l2_error(const FieldState& x, const FieldState& reference) {
  const double diff = sum_squares(linear_combination(1.0, x, -1.0, reference));
  const double ref = sum_squares(reference);
  return ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff);
}

ChiSolver::ChiSolver(const Grid& g) : spectral_(g) {}

ChiSolver::Spectrum ChiSolver::to_spectrum(const FieldState& s) const {
  if (!(s.grid == grid())) throw std::invalid_argument("state grid does not match solver grid");
  s.check_shape();
  Spectrum sp;
  const auto f = s.fields();
  for (int c = 0; c < kSlots; ++c) sp.f[c] = spectral_.forward(*f[c]);
  sp.t = s.t;
  return sp;
}

FieldState ChiSolver::to_state(const Spectrum& sp) const {
  FieldState s;
  s.grid = grid();
  auto f = s.fields();
  for (int c = 0; c < kSlots; ++c) *f[c] = spectral_.inverse(sp.f[c]);
  s.t = sp.t;
  return s;
}

void ChiSolver::advance(Spectrum& sp, double dt) const {
  const std::size_t ns = grid().spectral_size();
  for (std::size_t idx = 0; idx < ns; ++idx) {
    const Vec3& k = spectral_.k(idx);
    const double k2 = spectral_.k2(idx);
    ModeState y;
    for (int c = 0; c < kSlots; ++c) y[c] = sp.f[c][idx];

    const ModeState k1 = mode_rhs(y, k, k2);
    const ModeState k2s = mode_rhs(axpy(y, 0.5 * dt, k1), k, k2);
    const ModeState k3 = mode_rhs(axpy(y, 0.5 * dt, k2s), k, k2);
    const ModeState k4 = mode_rhs(axpy(y, dt, k3), k, k2);
    for (int c = 0; c < kSlots; ++c) {
      sp.f[c][idx] = y[c] + (dt / 6.0) * (k1[c] + 2.0 * k2s[c] + 2.0 * k3[c] + k4[c]);
    }
  }
  sp.t += dt;
}

FieldState ChiSolver::step(const FieldState& s, double dt) const {
  const double bound = cfl_bound(grid());
  if (std::abs(dt) > bound) throw CFLViolation(dt, bound);
  Spectrum sp = to_spectrum(s);
  advance(sp, dt);
  return to_state(sp);
}

Diagnostics ChiSolver::diagnostics(const FieldState& s) const {
  return diagnostics(to_spectrum(s));
}

Diagnostics ChiSolver::diagnostics(const Spectrum& sp) const {
  const std::size_t ns = grid().spectral_size();
  const auto& f = sp.f;
  Diagnostics d;
  d.t = sp.t;

  SpectralField ge(ns), gb(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    const Vec3& k = spectral_.k(i);
    const cplx div_e = kI * (k.x() * f[kEx][i] + k.y() * f[kEy][i] + k.z() * f[kEz][i]);
    const cplx div_b = kI * (k.x() * f[kBx][i] + k.y() * f[kBy][i] + k.z() * f[kBz][i]);
    ge[i] = div_e + f[kCrt][i];
    gb[i] = div_b - f[kCit][i];
  }
  d.gauss_e_residual = spectral_.rms(ge);
  d.gauss_b_residual = spectral_.rms(gb);

  // Current and charge read off the right-hand sides of the Re chi equations:
  //   j = (i c / 4 pi hbar) grad Re chi,  rho = -(i / 4 pi hbar c) d(Re chi)/dt.
  // Both are imaginary multiples of real fields; only their real profiles
  // (scaled by 1 / 4 pi) enter the norms.
  const double scale = 1.0 / (4.0 * std::numbers::pi);

  // curl of the materialized current
  std::array<SpectralField, 3> jk;
  SpectralField tmp(ns);
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < ns; ++i) tmp[i] = kI * spectral_.k(i)[c] * f[kCr][i];
    jk[c] = spectral_.forward(spectral_.inverse(tmp));
  }
  std::array<SpectralField, 3> curl_j;
  for (int c = 0; c < 3; ++c) {
    const int a = (c + 1) % 3, b = (c + 2) % 3;
    curl_j[c].resize(ns);
    for (std::size_t i = 0; i < ns; ++i) {
      const Vec3& k = spectral_.k(i);
      curl_j[c][i] = kI * (k[a] * jk[b][i] - k[b] * jk[a][i]);
    }
  }
  d.curl_j_residual = scale * spectral_.rms(curl_j);

  // (1/c^2) dj/dt + grad rho with dj/dt taken from the state's d(Re chi)/dt in
  // real space and grad rho spectrally.
  std::array<SpectralField, 3> cont;
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < ns; ++i) tmp[i] = kI * spectral_.k(i)[c] * f[kCrt][i];
    const SpectralField djdt = spectral_.forward(spectral_.inverse(tmp));
    cont[c].resize(ns);
    for (std::size_t i = 0; i < ns; ++i) cont[c][i] = djdt[i] - tmp[i];
  }
  d.continuity_residual = scale * spectral_.rms(cont);

  const double e_rms = spectral_.rms(std::span(&f[kEx], 3));
  const double b_rms = spectral_.rms(std::span(&f[kBx], 3));
  const double chi_rms = spectral_.rms(std::span(&f[kCr], 2));
  d.energy = 0.5 * grid().volume() * (e_rms * e_rms + b_rms * b_rms + chi_rms * chi_rms);
  return d;
}

RunResult run(const FieldState& initial, double t_end, double dt, int output_every,
              const SnapshotSink& sink) {
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (output_every < 0) throw std::invalid_argument("output_every must be >= 0");
  const double bound = cfl_bound(initial.grid);
  if (dt > bound) throw CFLViolation(dt, bound);

  const ChiSolver solver(initial.grid);
  const int steps = static_cast<int>(std::ceil(t_end / dt - 1e-9));
  const double h = t_end / steps;

  RunResult result;
  result.steps = steps;
  result.dt_used = h;

  ChiSolver::Spectrum sp = solver.to_spectrum(initial);
  const double t0 = initial.t;
  result.series.push_back(solver.diagnostics(sp));

  int snapshot_index = 0;
  auto emit = [&](const FieldState& s) {
    result.snapshot_times.push_back(s.t);
    if (sink) sink(s, snapshot_index);
    ++snapshot_index;
  };
  emit(initial);

  for (int n = 1; n <= steps; ++n) {
    solver.advance(sp, h);
    sp.t = t0 + n * h;
    result.series.push_back(solver.diagnostics(sp));
    const bool periodic = output_every > 0 && n % output_every == 0;
    if (periodic || n == steps) {
      FieldState s = solver.to_state(sp);
      if (n == steps) result.final_state = s;
      emit(s);
    }
  }
  return result;
}

}  // namespace genmax
