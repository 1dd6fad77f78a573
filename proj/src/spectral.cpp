#include "genmax/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <fftw3.h>

namespace genmax {

void Grid::validate() const {
  if (dims != 1 && dims != 3) throw std::invalid_argument("grid dims must be 1 or 3");
  if (n < 8 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("grid n must be a power of two >= 8, got " + std::to_string(n));
  }
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("grid L must be positive");
}

std::size_t Grid::size() const {
  const auto nn = static_cast<std::size_t>(n);
  return dims == 1 ? nn : nn * nn * nn;
}

std::size_t Grid::spectral_size() const {
  const auto nn = static_cast<std::size_t>(n);
  const std::size_t half = nn / 2 + 1;
  return dims == 1 ? half : nn * nn * half;
}

double Grid::volume() const { return dims == 1 ? L : L * L * L; }

Vec3 Grid::position(std::size_t idx) const {
  const double h = dx();
  const auto nn = static_cast<std::size_t>(n);
  if (dims == 1) return {0.0, 0.0, static_cast<double>(idx) * h};
  return {static_cast<double>(idx / (nn * nn)) * h, static_cast<double>((idx / nn) % nn) * h,
          static_cast<double>(idx % nn) * h};
}

struct SpectralGrid::Plans {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  ~Plans() {
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
    fftw_free(real);
    fftw_free(spec);
  }
};

SpectralGrid::SpectralGrid(const Grid& g) : grid_(g), plans_(std::make_unique<Plans>()) {
  grid_.validate();
  const int n = grid_.n;
  plans_->real = fftw_alloc_real(grid_.size());
  plans_->spec = fftw_alloc_complex(grid_.spectral_size());
  if (grid_.dims == 1) {
    plans_->fwd = fftw_plan_dft_r2c_1d(n, plans_->real, plans_->spec, FFTW_ESTIMATE);
    plans_->inv = fftw_plan_dft_c2r_1d(n, plans_->spec, plans_->real, FFTW_ESTIMATE);
  } else {
    plans_->fwd = fftw_plan_dft_r2c_3d(n, n, n, plans_->real, plans_->spec, FFTW_ESTIMATE);
    plans_->inv = fftw_plan_dft_c2r_3d(n, n, n, plans_->spec, plans_->real, FFTW_ESTIMATE);
  }

  const double dk = 2.0 * std::numbers::pi / grid_.L;
  auto freq = [n](int j) { return j < n / 2 ? j : (j == n / 2 ? 0 : j - n); };
  const int half = n / 2 + 1;

  const std::size_t ns = grid_.spectral_size();
  k_.resize(ns);
  k2_.resize(ns);
  weight_.resize(ns);
  for (std::size_t idx = 0; idx < ns; ++idx) {
    const int jz = static_cast<int>(idx % half);
    Vec3 k{0.0, 0.0, dk * freq(jz)};
    if (grid_.dims == 3) {
      const auto rest = static_cast<int>(idx / half);
      k.x() = dk * freq(rest / n);
      k.y() = dk * freq(rest % n);
    }
    k_[idx] = k;
    k2_[idx] = k.squaredNorm();
    weight_[idx] = (jz == 0 || jz == n / 2) ? 1.0 : 2.0;
  }
}

SpectralGrid::~SpectralGrid() = default;

SpectralField SpectralGrid::forward(std::span<const double> f) const {
  if (f.size() != grid_.size()) throw std::invalid_argument("field size does not match grid");
  std::copy(f.begin(), f.end(), plans_->real);
  fftw_execute(plans_->fwd);
  SpectralField out(grid_.spectral_size());
  const auto* src = reinterpret_cast<const cplx*>(plans_->spec);
  std::copy(src, src + out.size(), out.begin());
  return out;
}

RealField SpectralGrid::inverse(std::span<const cplx> fk) const {
  if (fk.size() != grid_.spectral_size()) {
    throw std::invalid_argument("spectrum size does not match grid");
  }
  std::copy(fk.begin(), fk.end(), reinterpret_cast<cplx*>(plans_->spec));
  fftw_execute(plans_->inv);
  RealField out(grid_.size());
  const double norm = 1.0 / static_cast<double>(grid_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = plans_->real[i] * norm;
  return out;
}

double SpectralGrid::rms(std::span<const cplx> fk) const {
  double s = 0.0;
  for (std::size_t i = 0; i < fk.size(); ++i) s += weight_[i] * std::norm(fk[i]);
  return std::sqrt(s) / static_cast<double>(grid_.size());
}

double SpectralGrid::rms(std::span<const SpectralField> fks) const {
  double s = 0.0;
  for (const auto& fk : fks) {
    for (std::size_t i = 0; i < fk.size(); ++i) s += weight_[i] * std::norm(fk[i]);
  }
  return std::sqrt(s) / static_cast<double>(grid_.size());
}

RealVectorField SpectralGrid::gradient(std::span<const double> f) const {
  const SpectralField fk = forward(f);
  RealVectorField out;
  SpectralField d(fk.size());
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < fk.size(); ++i) d[i] = kI * k_[i][c] * fk[i];
    out[c] = inverse(d);
  }
  return out;
}

RealField SpectralGrid::divergence(const RealVectorField& v) const {
  SpectralField acc(grid_.spectral_size(), cplx{});
  for (int c = 0; c < 3; ++c) {
    const SpectralField vk = forward(v[c]);
    for (std::size_t i = 0; i < vk.size(); ++i) acc[i] += kI * k_[i][c] * vk[i];
  }
  return inverse(acc);
}

RealVectorField SpectralGrid::curl(const RealVectorField& v) const {
  std::array<SpectralField, 3> vk = {forward(v[0]), forward(v[1]), forward(v[2])};
  RealVectorField out;
  SpectralField d(grid_.spectral_size());
  for (int c = 0; c < 3; ++c) {
    const int a = (c + 1) % 3, b = (c + 2) % 3;
    for (std::size_t i = 0; i < d.size(); ++i) {
      d[i] = kI * (k_[i][a] * vk[b][i] - k_[i][b] * vk[a][i]);
    }
    out[c] = inverse(d);
  }
  return out;
}

RealField SpectralGrid::laplacian(std::span<const double> f) const {
  SpectralField fk = forward(f);
  for (std::size_t i = 0; i < fk.size(); ++i) fk[i] *= -k2_[i];
  return inverse(fk);
}

RealField SpectralGrid::solve_poisson(std::span<const double> rhs) const {
  SpectralField fk = forward(rhs);
  for (std::size_t i = 0; i < fk.size(); ++i) {
    fk[i] = k2_[i] > 0.0 ? -fk[i] / k2_[i] : cplx{};
  }
  return inverse(fk);
}

}  // namespace genmax
