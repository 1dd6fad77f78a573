#include "genmax/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>

#include "genmax/errors.hpp"
#include "genmax/gersten.hpp"
#include "genmax/io.hpp"

namespace genmax {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Checks that k is representable below Nyquist on the grid.
void require_lattice_wavevector(const Grid& g, const Vec3& k) {
  if (k.norm() == 0.0) throw InconsistentScenario("wavevector must be nonzero");
  for (int a = 0; a < 3; ++a) {
    if (g.dims == 1 && a < 2 && k[a] != 0.0) {
      throw InconsistentScenario("1D grids resolve z only; k must lie along z");
    }
    const double mode = k[a] * g.L / kTwoPi;
    if (std::abs(mode - std::round(mode)) > 1e-9 * std::max(1.0, std::abs(mode))) {
      throw InconsistentScenario("wavevector is not periodic on the box (k L / 2pi = " +
                                 std::to_string(mode) + ")");
    }
    if (std::abs(std::round(mode)) >= g.n / 2) {
      throw InconsistentScenario("wavevector is at or above the grid Nyquist limit");
    }
  }
}

FieldState vacuum_planewave_at(const Grid& g, const VacuumPlaneWave& w, double t) {
  if (w.helicity != 1 && w.helicity != -1) {
    throw InconsistentScenario("helicity must be +1 or -1");
  }
  require_lattice_wavevector(g, w.k);
  const auto [ms, rs] =
      build_generalized_planewave(Momentum3(w.k), -w.helicity, cplx{w.amplitude, 0.0}, {});
  FieldState s = FieldState::zeros(g);
  s.t = t;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double phase = w.k.dot(g.position(i)) - ms.E * t;
    const Vec3c psi = rs.psi * std::polar(1.0, phase);
    for (int c = 0; c < 3; ++c) {
      s.E[c][i] = psi(c).real();
      s.B[c][i] = -psi(c).imag();
    }
  }
  return s;
}

FieldState chi_planewave_at(const Grid& g, const ChiPlaneWave& w, double t) {
  require_lattice_wavevector(g, w.k);
  const double kn = w.k.norm();
  const Vec3 khat = w.k / kn;
  FieldState s = FieldState::zeros(g);
  s.t = t;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double theta = w.k.dot(g.position(i)) - kn * t;
    const double c = std::cos(theta);
    s.chi_re[i] = w.amplitude * c;
    s.chi_re_t[i] = w.amplitude * kn * std::sin(theta);
    for (int a = 0; a < 3; ++a) s.E[a][i] = w.amplitude * khat[a] * c;
  }
  return s;
}

FieldState chi_gaussian_initial(const Grid& g, const ChiGaussian& w, ChiMode mode) {
  if (!(w.width > 0.0)) throw InconsistentScenario("gaussian width must be positive");
  if (mode == ChiMode::real && w.imag_amplitude != 0.0) {
    throw InconsistentScenario("imag_amplitude requires chi_mode = complex");
  }
  const SpectralGrid sg(g);
  RealField gauss(g.size());
  const Vec3 centre = Vec3::Constant(g.L / 2.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec3 d = g.position(i) - centre;
    if (g.dims == 1) d.x() = d.y() = 0.0;
    gauss[i] = std::exp(-d.squaredNorm() / (2.0 * w.width * w.width));
  }
  const RealField lap = sg.laplacian(gauss);

  FieldState s = FieldState::zeros(g);
  auto seed = [&](double amp, RealField& chi, RealField& chi_t) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      chi[i] = amp * gauss[i];
      chi_t[i] = amp * w.width * lap[i];
    }
  };
  seed(w.amplitude, s.chi_re, s.chi_re_t);
  seed(w.imag_amplitude, s.chi_im, s.chi_im_t);

  // div E = -d(Re chi)/dt with E = -grad phi  =>  lap phi = d(Re chi)/dt
  const RealVectorField grad_e = sg.gradient(sg.solve_poisson(s.chi_re_t));
  // div B = +d(Im chi)/dt with B = grad phi  =>  lap phi = d(Im chi)/dt
  const RealVectorField grad_b = sg.gradient(sg.solve_poisson(s.chi_im_t));
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      s.E[c][i] = -grad_e[c][i];
      s.B[c][i] = grad_b[c][i];
    }
  }
  return s;
}

}  // namespace

FieldState init_state(const Grid& g, const ScenarioSpec& scenario, ChiMode mode) {
  g.validate();
  FieldState s;
  if (const auto* w = std::get_if<VacuumPlaneWave>(&scenario)) {
    s = vacuum_planewave_at(g, *w, 0.0);
  } else if (const auto* w = std::get_if<ChiGaussian>(&scenario)) {
    s = chi_gaussian_initial(g, *w, mode);
  } else if (const auto* w = std::get_if<ChiPlaneWave>(&scenario)) {
    s = chi_planewave_at(g, *w, 0.0);
  } else {
    s = std::get<CustomFields>(scenario).state;
    if (!(s.grid == g)) throw InconsistentScenario("custom fields live on a different grid");
    try {
      s.check_shape();
    } catch (const std::invalid_argument& e) {
      throw InconsistentScenario(e.what());
    }
    if (!s.all_finite()) throw InconsistentScenario("custom fields contain non-finite values");
    if (mode == ChiMode::real) {
      for (const RealField* f : {&s.chi_im, &s.chi_im_t})
        for (double v : *f)
          if (v != 0.0) throw InconsistentScenario("nonzero Im chi requires chi_mode = complex");
    }
  }

  const Diagnostics d = ChiSolver(g).diagnostics(s);
  if (d.gauss_e_residual > 1e-8 || d.gauss_b_residual > 1e-8) {
    throw InconsistentScenario("initial data violates the divergence constraints (div E: " +
                               std::to_string(d.gauss_e_residual) +
                               ", div B: " + std::to_string(d.gauss_b_residual) + ")");
  }
  return s;
}

std::optional<FieldState> analytic_solution(const Grid& g, const ScenarioSpec& scenario,
                                            double t) {
  if (const auto* w = std::get_if<VacuumPlaneWave>(&scenario)) {
    return vacuum_planewave_at(g, *w, t);
  }
  if (const auto* w = std::get_if<ChiPlaneWave>(&scenario)) {
    return chi_planewave_at(g, *w, t);
  }
  return std::nullopt;
}

double measured_frequency(const FieldState& initial, const FieldState& later,
                          const VacuumPlaneWave& wave) {
  const Grid& g = initial.grid;
  const Vec3c e = helicity_eigenvector(Momentum3(wave.k), wave.helicity);
  auto amplitude = [&](const FieldState& s) {
    cplx acc{};
    for (std::size_t i = 0; i < g.size(); ++i) {
      const cplx basis = std::polar(1.0, -wave.k.dot(g.position(i)));
      for (int c = 0; c < 3; ++c) {
        const cplx psi{s.E[c][i], -s.B[c][i]};
        acc += std::conj(e(c)) * basis * psi;
      }
    }
    return acc;
  };
  const double dt = later.t - initial.t;
  if (dt == 0.0) throw std::invalid_argument("states are at the same time");
  // Psi ~ exp(-i omega t) with omega = -helicity |k|
  const double nominal = -wave.helicity * wave.k.norm();
  const cplx drift = amplitude(later) / amplitude(initial) * std::polar(1.0, nominal * dt);
  return std::abs(nominal - std::arg(drift) / dt);
}

namespace {

using nlohmann::json;

Vec3 read_vec3(const json& j, const char* key, const Vec3& fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != 3) {
    throw UsageError(std::string("'") + key + "' must be an array of 3 numbers");
  }
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

}  // namespace

RunConfig parse_run_config(const json& doc, const std::string& base_dir) {
  try {
    RunConfig cfg;
    const json& grid = doc.at("grid");
    cfg.grid.n = grid.at("n").get<int>();
    cfg.grid.L = grid.value("L", kTwoPi);
    cfg.grid.dims = grid.value("dims", 3);
    try {
      cfg.grid.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }

    const double c = doc.value("c", 1.0);
    if (!(c > 0.0)) throw UsageError("'c' must be positive");
    cfg.dt = c * doc.at("dt").get<double>();
    cfg.t_end = c * doc.at("t_end").get<double>();
    cfg.output_every = doc.value("output_every", 0);
    if (!(cfg.dt > 0.0) || !(cfg.t_end > 0.0) || cfg.output_every < 0) {
      throw UsageError("dt and t_end must be positive and output_every >= 0");
    }

    const std::string mode = doc.value("chi_mode", std::string("real"));
    if (mode == "real") {
      cfg.chi_mode = ChiMode::real;
    } else if (mode == "complex") {
      cfg.chi_mode = ChiMode::complex;
    } else {
      throw UsageError("chi_mode must be 'real' or 'complex'");
    }

    const json& sc = doc.at("scenario");
    cfg.scenario_type = sc.at("type").get<std::string>();
    const json params = sc.value("params", json::object());
    if (cfg.scenario_type == "vacuum_planewave") {
      VacuumPlaneWave w;
      w.k = read_vec3(params, "k", w.k);
      w.helicity = params.value("helicity", w.helicity);
      w.amplitude = params.value("amplitude", w.amplitude);
      cfg.scenario = w;
    } else if (cfg.scenario_type == "chi_gaussian") {
      ChiGaussian w;
      w.width = params.value("width", w.width);
      w.amplitude = params.value("amplitude", w.amplitude);
      w.imag_amplitude = params.value("imag_amplitude", w.imag_amplitude);
      cfg.scenario = w;
    } else if (cfg.scenario_type == "chi_planewave") {
      ChiPlaneWave w;
      w.k = read_vec3(params, "k", w.k);
      w.amplitude = params.value("amplitude", w.amplitude);
      cfg.scenario = w;
    } else if (cfg.scenario_type == "custom") {
      std::filesystem::path p = params.at("snapshot").get<std::string>();
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      cfg.scenario = CustomFields{io::read_snapshot(p)};
    } else {
      throw UsageError("unknown scenario type '" + cfg.scenario_type + "'");
    }
    return cfg;
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed run configuration: ") + e.what());
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const UsageError*>(&e)) throw;
    throw UsageError(e.what());
  }
}

}  // namespace genmax
