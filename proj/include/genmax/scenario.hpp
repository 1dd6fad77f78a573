#pragma once

// Initial-data scenarios for the chi solver and their JSON configuration.

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "genmax/chi_solver.hpp"

namespace genmax {

/// Transverse plane wave with chi = 0.  k must be a lattice wavevector
/// (k L / 2pi integer per axis; along z only in 1D).  The wave has
/// (S.k_hat) e = helicity e and frequency -helicity |k|.
struct VacuumPlaneWave {
  Vec3 k{0, 0, 1};
  int helicity = -1;
  double amplitude = 1.0;
};

/// Re chi = A g, d(Re chi)/dt = A w lap g with g a periodic-centred Gaussian
/// of width w; E = -A w grad g so that div E = -d(Re chi)/dt, B = 0.  In
/// complex mode an imaginary part of amplitude `imag_amplitude` is seeded the
/// same way with B = +A_im w grad g.
struct ChiGaussian {
  double width = 0.5;
  double amplitude = 1.0;
  double imag_amplitude = 0.0;
};

/// Re chi = A cos(k.x - |k| t) with E = (A k_hat) cos(k.x - |k| t), B = 0.
struct ChiPlaneWave {
  Vec3 k{0, 0, 1};
  double amplitude = 1.0;
};

/// Caller-supplied fields (e.g. a snapshot read back from disk).
struct CustomFields {
  FieldState state;
};

using ScenarioSpec = std::variant<VacuumPlaneWave, ChiGaussian, ChiPlaneWave, CustomFields>;

/// Builds t = 0 data.  Throws InconsistentScenario if the data violates the
/// divergence constraints by more than 1e-8 (RMS), uses Im chi in real mode,
/// or asks for a wavevector the grid cannot represent.
FieldState init_state(const Grid& g, const ScenarioSpec& scenario, ChiMode mode = ChiMode::real);

/// Exact solution at time t where one is known in closed form
/// (vacuum_planewave, chi_planewave).
std::optional<FieldState> analytic_solution(const Grid& g, const ScenarioSpec& scenario, double t);

/// Angular frequency of a vacuum plane wave measured from the phase advance of
/// its Riemann-Silberstein mode amplitude between `initial` and `later`.  The
/// nominal frequency |k| only unwraps the phase (valid while the accumulated
/// phase error is below pi).
double measured_frequency(const FieldState& initial, const FieldState& later,
                          const VacuumPlaneWave& wave);

/// The JSON scenario document:
///   {grid: {n, L, dims}, scenario: {type, params}, dt, t_end, output_every,
///    chi_mode: "real"|"complex", c (optional, speed of light in config units)}
/// dt and t_end are converted to internal units (c = 1) as t_internal = c t.
struct RunConfig {
  Grid grid;
  ScenarioSpec scenario;
  std::string scenario_type;
  double dt = 0.0;
  double t_end = 0.0;
  int output_every = 0;
  ChiMode chi_mode = ChiMode::real;
};

/// Throws UsageError on malformed documents.  Relative snapshot paths in a
/// custom scenario resolve against `base_dir`.
RunConfig parse_run_config(const nlohmann::json& doc, const std::string& base_dir = ".");

}  // namespace genmax
