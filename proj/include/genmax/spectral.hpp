#pragma once

// Periodic FFT machinery shared by the time-domain solver: real-to-complex
// transforms on a 1D (z only) or 3D cube and spectral derivative operators.

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "genmax/types.hpp"

namespace genmax {

/// Periodic box: n points per axis (power of two, n >= 8), edge length L,
/// dims = 1 (fields vary along z only) or 3.
struct Grid {
  int n = 64;
  double L = 6.283185307179586;
  int dims = 3;

  /// Throws std::invalid_argument on a malformed grid.
  void validate() const;
  std::size_t size() const;           // real-space points
  std::size_t spectral_size() const;  // half-spectrum coefficients
  double dx() const { return L / n; }
  double volume() const;
  /// Coordinate of point `idx`; unused axes are 0 in 1D.
  Vec3 position(std::size_t idx) const;

  bool operator==(const Grid&) const = default;
};

using RealField = std::vector<double>;
using SpectralField = std::vector<cplx>;
using RealVectorField = std::array<RealField, 3>;

/// Owns FFTW plans for one grid.  Not copyable; one instance per thread.
class SpectralGrid {
 public:
  explicit SpectralGrid(const Grid& g);
  ~SpectralGrid();
  SpectralGrid(const SpectralGrid&) = delete;
  SpectralGrid& operator=(const SpectralGrid&) = delete;

  const Grid& grid() const { return grid_; }

  SpectralField forward(std::span<const double> f) const;
  /// Normalized inverse: inverse(forward(f)) == f up to rounding.
  RealField inverse(std::span<const cplx> fk) const;

  /// Derivative wavevector of half-spectrum entry `idx`.  The Nyquist
  /// component on each axis is zero so odd derivatives stay real.
  const Vec3& k(std::size_t idx) const { return k_[idx]; }
  double k2(std::size_t idx) const { return k2_[idx]; }
  /// Weight of entry `idx` in a full-spectrum Parseval sum (1 or 2).
  double parseval_weight(std::size_t idx) const { return weight_[idx]; }

  /// sqrt(mean over grid of |f|^2) from the half spectrum of a real field.
  double rms(std::span<const cplx> fk) const;
  /// Same for several fields summed pointwise in square: sqrt(mean sum_c |f_c|^2).
  double rms(std::span<const SpectralField> fks) const;

  RealVectorField gradient(std::span<const double> f) const;
  RealField divergence(const RealVectorField& v) const;
  RealVectorField curl(const RealVectorField& v) const;
  RealField laplacian(std::span<const double> f) const;
  /// Solves lap(phi) = rhs with zero mean; the k = 0 component of rhs must
  /// vanish (checked by caller).
  RealField solve_poisson(std::span<const double> rhs) const;

 private:
  struct Plans;
  Grid grid_;
  std::unique_ptr<Plans> plans_;
  std::vector<Vec3> k_;
  std::vector<double> k2_;
  std::vector<double> weight_;
};

}  // namespace genmax
