// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "genmax/bw_fields.hpp"
#include "genmax/chi_solver.hpp"
#include "genmax/commands.hpp"
#include "genmax/gersten.hpp"
#include "genmax/io.hpp"
#include "genmax/scenario.hpp"
#include "genmax/spin_algebra.hpp"

using namespace genmax;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Tracks the worst value of residual / tolerance.
struct Worst {
  double ratio = 0.0;
  double value = 0.0;
  void add(double v, double tol) {
    const double r = tol > 0 ? v / tol : (v > 0 ? INFINITY : 0.0);
    if (r > ratio || std::isnan(v)) {
      ratio = std::isnan(v) ? INFINITY : r;
      value = v;
    }
  }
  bool ok() const { return ratio <= 1.0; }
};

Momentum3 draw_p(std::mt19937_64& rng, double a = 10.0) {
  std::uniform_real_distribution<double> u(-a, a);
  return {u(rng), u(rng), u(rng)};
}

cplx draw_c(std::mt19937_64& rng, double a = 2.0) {
  std::uniform_real_distribution<double> u(-a, a);
  return {u(rng), u(rng)};
}

Outcome identity_suite() {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> u(-10, 10);
  Worst fact, ann, prod;
  const int trials = 2000;
  for (int t = 0; t < trials; ++t) {
    const Momentum3 p = draw_p(rng);
    const MomentumState s{u(rng), p, 0.0};  // E unrelated to p: off-shell on purpose
    const RSVector v{Vec3c(draw_c(rng), draw_c(rng), draw_c(rng)), {}};
    fact.add(eq9_residual(s, v), 1e-12 * (1 + s.E * s.E + p.squared_norm()) * v.psi.norm());
    ann.add(annihilation_residual(p), 1e-12 * p.squared_norm());
    for (Axis a : {Axis::x, Axis::y, Axis::z})
      prod.add(product_identity_residual(a, p), 1e-12 * (1 + p.norm()));
  }
  return {fact.ok() && ann.ok() && prod.ok(),
          fmt::format("{} inputs; worst scaled residual factorization {:.2e}, annihilation {:.2e}, product {:.2e}",
                      trials, fact.ratio * 1e-12, ann.ratio * 1e-12, prod.ratio * 1e-12)};
}

Outcome generalized_suite() {
  std::mt19937_64 rng(kSeed + 1);
  Worst pair, disp;
  int built = 0, found = 0;
  for (int t = 0; t < 1000; ++t) {
    const Momentum3 p = draw_p(rng);
    const cplx a = draw_c(rng, 1.0), chi = draw_c(rng, 1.0);
    for (int sign : {1, -1}) {
      const auto [s, v] = build_generalized_planewave(p, sign, a, chi);
      const auto [r1, r2] = generalized_solution_residual(s, v);
      const double scale = std::max(1.0, p.norm() * (std::abs(a) + std::abs(chi)));
      pair.add(std::max(r1, r2), 1e-13 * scale);
      ++built;
    }
    for (const auto& m : find_generalized_solutions(p)) {
      if (m.v.psi.norm() + std::abs(m.v.chi) == 0.0) continue;
      disp.add(std::abs(std::abs(m.eigenvalue) - p.norm()), 1e-10);
      ++found;
    }
  }
  return {pair.ok() && disp.ok(),
          fmt::format("{} constructed, worst scaled pair residual {:.2e}; {} found modes, "
                      "worst ||E| - |p|| {:.2e}",
                      built, pair.ratio * 1e-13, found, disp.value)};
}

Outcome proca_dichotomy() {
  std::mt19937_64 rng(kSeed + 2);
  std::uniform_real_distribution<double> um(0.05, 5.0);
  const auto N = NormalizationScheme::constant();
  Worst spin1, timelike, renorm;
  for (int t = 0; t < 100; ++t) {
    const Momentum3 p = draw_p(rng, 5.0);
    const double m = um(rng);
    for (Mode l : kSpinOneModes) {
      const auto pol = polarization_vector(p, l, m, N);
      // terms in the residual are of size E^2 |u| / m
      const double scale = std::max(1.0, pol.energy() * pol.energy() / m * pol.u.norm());
      for (int s : {1, -1}) spin1.add(proca_residual(pol, s), 1e-12 * scale);
      renorm.add(normalization_change_check(pol), 1e-12 * scale * m);
    }
    const auto pt = polarization_vector(p, Mode::timelike, m, N);
    const double expected = 0.5 * m * pt.u.cwiseAbs().maxCoeff();
    timelike.add(std::abs(proca_residual(pt, +1) - expected), 1e-12 * std::max(1.0, expected));
  }
  return {spin1.ok() && timelike.ok() && renorm.ok(),
          fmt::format("spin-1 worst scaled {:.2e}; 0t |r - (m/2)max|u|| worst {:.2e}; "
                      "normalization change worst scaled {:.2e}",
                      spin1.ratio * 1e-12, timelike.value, renorm.ratio * 1e-12)};
}

Outcome oracle_phase() {
  std::mt19937_64 rng(kSeed + 3);
  std::uniform_real_distribution<double> um(0.1, 4.0);
  const auto N = NormalizationScheme::constant();
  double spread = 0.0;
  // one phase per (mode, kind, energy sign); measured at each momentum
  for (Mode l : kSpinOneModes)
    for (FieldKind kind : {FieldKind::B, FieldKind::E})
      for (int s : {1, -1}) {
        std::vector<cplx> phases;
        std::mt19937_64 local(rng());
        for (int t = 0; t < 50; ++t) {
          const Momentum3 p = draw_p(local, 5.0);
          const double m = um(local);
          auto pol = polarization_vector(p, l, m, N);
          if (s < 0) pol.u = pol.u.conjugate();  // negative-frequency potential
          const ASTField f = ast_from_potential(pol, s);
          const Vec3c derived = kind == FieldKind::B ? f.magnetic() : f.electric();
          const Vec3c printed = field_triplet(p, l, kind, s, m, N).vec;
          Eigen::Index i = 0;
          derived.cwiseAbs().maxCoeff(&i);
          const cplx ph = printed(i) / derived(i);
          // the phase must also hold componentwise
          spread = std::max(spread, (printed - ph * derived).norm() / printed.norm());
          phases.push_back(ph);
        }
        for (const cplx& a : phases)
          for (const cplx& b : phases) spread = std::max(spread, std::abs(a - b));
      }
  return {spread <= 1e-8, fmt::format("12 (mode, kind, sign) series x 50 momenta, phase spread {:.2e}", spread)};
}

Outcome massless_slopes() {
  const Momentum3 p{0.6, 0.8, 1.0};
  const auto N1 = NormalizationScheme::constant();
  const auto Nm = NormalizationScheme::mass();
  const double s_t = massless_scaling(Mode::timelike, N1, p);
  const double s_0 = massless_scaling(Mode::zero, N1, p);
  const double s_p = massless_scaling(Mode::plus, Nm, p);
  const double s_m = massless_scaling(Mode::minus, Nm, p);
  const bool ok = std::abs(s_t + 1) <= 0.02 && std::abs(s_0 + 1) <= 0.02 && std::abs(s_p) <= 0.02 &&
                  std::abs(s_m) <= 0.02;
  return {ok, fmt::format("p = (0.6, 0.8, 1.0): (0t, N=1) {:.4f}, (0, N=1) {:.4f}, (+1, N=m) {:.4f}, "
                          "(-1, N=m) {:.4f}",
                          s_t, s_0, s_p, s_m)};
}

Outcome phase_relations() {
  std::mt19937_64 rng(kSeed + 5);
  std::uniform_real_distribution<double> um(0.1, 4.0);
  const auto N = NormalizationScheme::constant();
  const double sign[] = {1.0, -1.0, 1.0};
  double mod = 0.0, pattern = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Momentum3 p = draw_p(rng, 5.0);
    const double m = um(rng);
    for (int li = 0; li < 3; ++li)
      for (FieldKind kind : {FieldKind::B, FieldKind::E}) {
        const cplx r = phase_relation(p, kSpinOneModes[li], kind, m, N);
        mod = std::max(mod, std::abs(std::abs(r) - 1.0));
        pattern = std::max(pattern, std::abs(r - sign[li]));
      }
  }
  return {mod <= 1e-10 && pattern <= 1e-10,
          fmt::format("100 momenta x 3 modes x {{B, E}}: max ||r| - 1| {:.2e}, max |r - (+,-,+)| {:.2e}",
                      mod, pattern)};
}

Outcome vacuum_reduction() {
  const Grid g{64, 2 * kPi, 3};
  const VacuumPlaneWave wave{{0, 0, 1}, -1, 1.0};
  const double T = 2 * kPi;
  const FieldState s0 = init_state(g, wave);
  const auto result = run(s0, T, T / 256, 0);
  const double err = relative_l2_error(result.final_state, *analytic_solution(g, wave, T));
  const double ratio = measured_frequency(s0, result.final_state, wave) / wave.k.norm();
  return {err <= 1e-6 && std::abs(ratio - 1) <= 1e-6,
          fmt::format("64^3, 256 steps: L2 error {:.2e}, omega / |k| - 1 = {:.2e}", err, ratio - 1)};
}

Outcome chi_mode() {
  const Grid g{64, 2 * kPi, 3};
  const auto result = run(init_state(g, ChiGaussian{}), g.L, cfl_bound(g), 0);
  double ge = 0, gb = 0, cj = 0, co = 0;
  for (const auto& d : result.series) {
    ge = std::max(ge, d.gauss_e_residual);
    gb = std::max(gb, d.gauss_b_residual);
    cj = std::max(cj, d.curl_j_residual);
    co = std::max(co, d.continuity_residual);
  }
  return {ge <= 1e-8 && gb <= 1e-8 && cj <= 1e-12 && co <= 1e-9 && result.final_state.all_finite(),
          fmt::format("64^3 to t = L in {} steps: max gauss E {:.2e}, gauss B {:.2e}, curl j {:.2e}, "
                      "continuity {:.2e}",
                      result.steps, ge, gb, cj, co)};
}

Outcome dirac_chain() {
  std::mt19937_64 rng(kSeed + 9);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Momentum3 p = draw_p(rng);
    Eigen::SelfAdjointEigenSolver<SpinMatrix> es(spin_dot_p(Momentum3(p.vec().normalized())));
    const int col = t % 2 ? 0 : 2;  // helicity -1 or +1
    const Vec3c psi = es.eigenvectors().col(col) * draw_c(rng);
    const auto r = dirac_chain_residual(p, -es.eigenvalues()(col) * p.norm(), psi);
    for (double x : r) worst = std::max(worst, x);
  }
  const auto d = singularity_report();
  const double det = std::max({d[0], d[1], d[2]});
  return {worst <= 1e-11 && det <= 1e-15,
          fmt::format("100 eigenvectors: worst chain residual {:.2e}; max |det S_i| {:.2e}", worst, det)};
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

Outcome determinism() {
  const std::string a = cmd_verify(42, 1000).to_json().dump(2);
  const std::string b = cmd_verify(42, 1000).to_json().dump(2);
  bool ok = a == b;
  std::string detail = ok ? "verify reports identical" : "verify reports differ";

  const fs::path dir = fs::temp_directory_path() / "genmax_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  // snapshot
  const Grid g{16, 2 * kPi, 3};
  auto r = run(init_state(g, ChiGaussian{0.7, 1.3, 0.4}, ChiMode::complex), 0.37, 0.05, 0);
  const FieldState& s = r.final_state;
  const FieldState back = io::read_snapshot(io::write_snapshot(dir, "snap", s));
  bool snap_ok = same_bits(back.t, s.t);
  const auto fa = s.fields();
  const auto fb = back.fields();
  for (std::size_t i = 0; i < fa.size(); ++i)
    snap_ok = snap_ok && std::memcmp(fa[i]->data(), fb[i]->data(), fa[i]->size() * sizeof(double)) == 0;

  // diagnostics series
  std::stringstream ds;
  io::write_diagnostics_csv(ds, r.series);
  const auto series = io::read_diagnostics_csv(ds);
  bool diag_ok = series.size() == r.series.size();
  for (std::size_t i = 0; diag_ok && i < series.size(); ++i) {
    diag_ok = same_bits(series[i].t, r.series[i].t) && same_bits(series[i].energy, r.series[i].energy) &&
              same_bits(series[i].gauss_e_residual, r.series[i].gauss_e_residual) &&
              same_bits(series[i].gauss_b_residual, r.series[i].gauss_b_residual) &&
              same_bits(series[i].curl_j_residual, r.series[i].curl_j_residual) &&
              same_bits(series[i].continuity_residual, r.series[i].continuity_residual);
  }

  // polarization table
  std::vector<Mode> modes(std::begin(kAllModes), std::end(kAllModes));
  const auto rows = cmd_polarization_table({{0.1, -0.7, 1.9}, {0, 0, 3}}, modes, 0.3,
                                           NormalizationScheme::sqrt_mass());
  std::stringstream ps;
  write_polarization_csv(ps, rows);
  const auto rows2 = read_polarization_csv(ps);
  bool table_ok = rows2.size() == rows.size();
  for (std::size_t i = 0; table_ok && i < rows.size(); ++i) {
    table_ok = same_bits(rows[i].value.real(), rows2[i].value.real()) &&
               same_bits(rows[i].value.imag(), rows2[i].value.imag()) &&
               same_bits(rows[i].p.px, rows2[i].p.px);
  }
  fs::remove_all(dir);

  ok = ok && snap_ok && diag_ok && table_ok;
  detail += fmt::format("; snapshot {}, diagnostics CSV {}, polarization CSV {}",
                        snap_ok ? "bit-exact" : "MISMATCH", diag_ok ? "bit-exact" : "MISMATCH",
                        table_ok ? "bit-exact" : "MISMATCH");
  return {ok, detail};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0: no runtime limit
  std::function<Outcome()> body;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "identity suite", 5, identity_suite},
      {2, "generalized-solution suite", 5, generalized_suite},
      {3, "Proca dichotomy", 5, proca_dichotomy},
      {4, "closed-form / field-strength phase", 5, oracle_phase},
      {5, "massless scaling", 2, massless_slopes},
      {6, "phase relations", 2, phase_relations},
      {7, "solver vacuum reduction", 60, vacuum_reduction},
      {8, "solver chi mode", 120, chi_mode},
      {9, "Dirac chain and singularity", 2, dirac_chain},
      {10, "determinism and round trips", 0, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit_s == 0 || secs < c.limit_s;
    const bool pass = out.ok && in_time;
    failed += !pass;
    const std::string limit = c.limit_s > 0 ? fmt::format(" (limit {:g} s)", c.limit_s) : "";
    fmt::print("{} {:2d} {}: {} [{:.2f} s{}]\n", pass ? "PASS" : "FAIL", c.id, c.name, out.detail,
               secs, in_time ? limit : " OVER" + limit);
    std::fflush(stdout);
  }
  fmt::print("{} of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
