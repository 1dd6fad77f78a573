#pragma once

// Pseudo-spectral time-domain solver for the chi-extended Maxwell system on a
// periodic box (c = 1):
//
//   dE/dt = curl B - grad Re chi        div E = -d(Re chi)/dt
//   dB/dt = -curl E + grad Im chi       div B = +d(Im chi)/dt
//   d^2 chi / dt^2 = lap chi
//
// The divergence equations are monitored, never projected.  The system is
// linear with constant coefficients, so the state is advanced mode by mode in
// Fourier space with classical RK4; the divergence constraints are linear
// invariants of the per-mode operator and are kept to rounding.

#include <array>
#include <functional>
#include <vector>

#include "genmax/spectral.hpp"

namespace genmax {

enum class ChiMode { real, complex };

struct FieldState {
  Grid grid;
  RealVectorField E;
  RealVectorField B;
  RealField chi_re, chi_im, chi_re_t, chi_im_t;
  double t = 0.0;

  /// All-zero state on `g` at t = 0.
  static FieldState zeros(const Grid& g);

  /// Ex, Ey, Ez, Bx, By, Bz, chi_re, chi_im, chi_re_t, chi_im_t
  static constexpr std::array<const char*, 10> kFieldOrder = {
      "Ex", "Ey", "Ez", "Bx", "By", "Bz", "chi_re", "chi_im", "chi_re_t", "chi_im_t"};
  std::array<const RealField*, 10> fields() const;
  std::array<RealField*, 10> fields();

  bool all_finite() const;
  /// Throws std::invalid_argument if any array does not match grid.size().
  void check_shape() const;
};

/// Volume-normalized L2 (RMS) norms; energy is 1/2 int (E^2 + B^2 + |chi|^2) dV,
/// which is conserved while the divergence constraints hold.
struct Diagnostics {
  double t = 0.0;
  double gauss_e_residual = 0.0;
  double gauss_b_residual = 0.0;
  double curl_j_residual = 0.0;
  double continuity_residual = 0.0;
  double energy = 0.0;
};

/// dt <= 0.5 dx / sqrt(dims)
double cfl_bound(const Grid& g);

// FieldState algebra, used by linearity checks and error norms.
FieldState linear_combination(double a, const FieldState& x, double b, const FieldState& y);
/// sqrt(sum over fields and points of (x - y)^2) / sqrt(sum of y^2); absolute if y = 0.
double relative_l2_error(const FieldState& x, const FieldState& reference);

class ChiSolver {
 public:
  explicit ChiSolver(const Grid& g);

  const Grid& grid() const { return spectral_.grid(); }

  /// One RK4 step of size dt (negative dt runs backwards).
  /// Throws CFLViolation if |dt| > cfl_bound.
  FieldState step(const FieldState& s, double dt) const;

  Diagnostics diagnostics(const FieldState& s) const;

  /// Spectral working state: the ten fields' half spectra.
  struct Spectrum {
    std::array<SpectralField, 10> f;
    double t = 0.0;
  };
  Spectrum to_spectrum(const FieldState& s) const;
  FieldState to_state(const Spectrum& sp) const;
  void advance(Spectrum& sp, double dt) const;
  Diagnostics diagnostics(const Spectrum& sp) const;

 private:
  SpectralGrid spectral_;
};

using SnapshotSink = std::function<void(const FieldState&, int index)>;

struct RunResult {
  FieldState final_state;
  std::vector<Diagnostics> series;  // t = 0 and after every step
  std::vector<double> snapshot_times;
  int steps = 0;
  double dt_used = 0.0;
};

/// Advances `initial` to t_end in ceil(t_end / dt) equal steps (the step is
/// shrunk so the last one lands on t_end).  Snapshots go to `sink` at t = 0,
/// every `output_every` steps, and at t_end; output_every = 0 means only the
/// first and last.
RunResult run(const FieldState& initial, double t_end, double dt, int output_every,
              const SnapshotSink& sink = {});

}  // namespace genmax
