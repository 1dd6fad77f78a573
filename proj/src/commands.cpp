#include "genmax/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "genmax/errors.hpp"
#include "genmax/io.hpp"
#include "genmax/scenario.hpp"
#include "genmax/spin_algebra.hpp"

namespace genmax {

using nlohmann::json;

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

json VerifyReport::to_json() const {
  json list = json::array();
  for (const auto& c : checks) {
    list.push_back({{"name", c.name},
                    {"anchor", c.anchor},
                    {"residual", c.residual},
                    {"tolerance", c.tolerance},
                    {"passed", c.passed}});
  }
  return {{"tool", "genmax verify"}, {"version", version}, {"seed", seed},
          {"trials", trials},        {"passed", passed()}, {"checks", list}};
}

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  Momentum3 momentum(double r) { return {uniform(-r, r), uniform(-r, r), uniform(-r, r)}; }
  cplx complex(double r) { return {uniform(-r, r), uniform(-r, r)}; }
  Vec3c cvec3(double r) { return {complex(r), complex(r), complex(r)}; }
  int sign() { return uniform(0.0, 1.0) < 0.5 ? -1 : 1; }

 private:
  std::mt19937_64 rng_;
};

struct Suite {
  std::vector<CheckResult> checks;

  void add(std::string name, std::string anchor, double residual, double tolerance) {
    const bool ok = std::isfinite(residual) && residual <= tolerance;
    checks.push_back({std::move(name), std::move(anchor), residual, tolerance, ok});
  }
};

void spin_checks(Suite& suite, Sampler& rng, int trials) {
  const auto& S = spin_matrices();

  double comm = 0.0, herm = 0.0;
  for (int i = 0; i < 3; ++i) {
    herm = std::max(herm, (S[i] - S[i].adjoint()).cwiseAbs().maxCoeff());
    for (int j = 0; j < 3; ++j) {
      SpinMatrix expected = SpinMatrix::Zero();
      for (int k = 0; k < 3; ++k) expected += kI * static_cast<double>(levi_civita(i, j, k)) * S[k];
      comm = std::max(comm, (S[i] * S[j] - S[j] * S[i] - expected).cwiseAbs().maxCoeff());
    }
  }
  suite.add("spin.commutators", "[S_i, S_j] = i eps_ijk S_k", comm, 1e-15);
  suite.add("spin.hermitian", "S_i^dagger = S_i", herm, 1e-15);

  double spectrum = 0.0, annihilation = 0.0, product = 0.0, det_sp = 0.0, chain = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Momentum3 p = rng.momentum(10.0);
    const double pn = p.norm();

    const Momentum3 hat(p.vec() / pn);
    Eigen::SelfAdjointEigenSolver<SpinMatrix> es(spin_dot_p(hat));
    const Vec3 ev = es.eigenvalues();
    spectrum = std::max({spectrum, std::abs(ev(0) + 1.0), std::abs(ev(1)), std::abs(ev(2) - 1.0)});

    annihilation = std::max(annihilation, annihilation_residual(p) / (pn * pn));
    for (Axis a : {Axis::x, Axis::y, Axis::z}) {
      product = std::max(product, product_identity_residual(a, p) / (1.0 + pn));
    }
    det_sp = std::max(det_sp, std::abs(spin_dot_p(p).determinant()) / (pn * pn * pn));

    // transverse eigenvector of S.p_hat with eigenvalue h solves {pt + S.p} psi = 0 at pt = -h|p|
    const int h = rng.sign();
    const Vec3c psi = rng.complex(1.0) * helicity_eigenvector(p, h);
    const auto r = dirac_chain_residual(p, -h * pn, psi);
    chain = std::max({chain, r[0], r[1], r[2]});
  }
  suite.add("spin.spectrum", "eig(S.p_hat) = {-1, 0, +1}", spectrum, 1e-12);
  suite.add("spin.annihilation", "(S.p) p = i eps p p = 0", annihilation, 1e-14);
  suite.add("spin.product_identity", "S^i (S.p) = p^i I - i [S x p]^i - p^m delta^ij", product,
            1e-13);
  suite.add("spin.dirac_chain", "S_x, S_y, S_z times {pt + S.p} psi = 0 with p.psi = 0", chain,
            1e-11);

  const auto dets = singularity_report();
  suite.add("spin.singularity", "det S_x = det S_y = det S_z = 0",
            std::max({dets[0], dets[1], dets[2]}), 1e-15);
  suite.add("spin.det_s_dot_p", "det(S.p) = 0", det_sp, 1e-13);
}

void gersten_checks(Suite& suite, Sampler& rng, int trials) {
  double factorization = 0.0, gen = 0.0, onshell = 0.0, dispersion = 0.0, found = 0.0, reduction = 0.0,
         helicity = 0.0;
  for (int t = 0; t < trials; ++t) {
    // off-shell on purpose
    const MomentumState s{rng.uniform(-10.0, 10.0), rng.momentum(10.0), 0.0};
    RSVector v{rng.cvec3(1.0), rng.complex(1.0)};
    factorization = std::max(factorization, eq9_residual(s, v) / ((1.0 + s.E * s.E + s.p.squared_norm()) *
                                              std::max(v.psi.norm(), 1e-300)));

    v.chi = {};
    const auto std_r = standard_solution_residual(s, v);
    const auto gen_r = generalized_solution_residual(s, v);
    reduction = std::max({reduction, std::abs(std_r.first - gen_r.first),
                          std::abs(std_r.second - gen_r.second)});

    const Momentum3 p = rng.momentum(10.0);
    const int sign = rng.sign();
    const cplx a = rng.complex(1.0), chi = rng.complex(1.0);
    const auto [ms, rs] = build_generalized_planewave(p, sign, a, chi);
    const auto [r1, r2] = generalized_solution_residual(ms, rs);
    const double scale = (1.0 + p.norm()) * std::max(1.0, rs.psi.norm() + std::abs(rs.chi));
    gen = std::max(gen, std::max(r1, r2) / scale);
    onshell = std::max(onshell, chi_onshell_residual(ms, rs) /
                                    ((1.0 + p.squared_norm()) * std::abs(rs.chi)));

    const Momentum3 hat(p.vec() / p.norm());
    const Vec3c e_plus = build_generalized_planewave(p, +1, 1.0, 0.0).second.psi;
    const Vec3c e_minus = build_generalized_planewave(p, -1, 1.0, 0.0).second.psi;
    helicity = std::max({helicity, (spin_dot_p(hat) * e_plus + e_plus).norm(),
                         (spin_dot_p(hat) * e_minus - e_minus).norm()});

    for (const auto& mode : find_generalized_solutions(p)) {
      dispersion = std::max({dispersion, std::abs(std::abs(mode.E()) - p.norm()),
                             std::abs(mode.eigenvalue.imag())});
      const MomentumState at{mode.E(), p, 0.0};
      const auto [f1, f2] = generalized_solution_residual(at, mode.v);
      found = std::max(found, std::max(f1, f2) / (1.0 + p.norm()));
    }
  }
  suite.add("gersten.factorization_identity", "(E^2 - p^2) Psi = (E - p.S)(E + p.S) Psi - p (p.Psi)", factorization,
            1e-12);
  suite.add("gersten.chi_zero_reduction", "chi = 0 recovers (E + p.S) Psi = 0, p.Psi = 0",
            reduction, 0.0);
  suite.add("gersten.generalized_planewave", "(E + p.S) Psi = p chi, p.Psi = E chi", gen, 1e-13);
  suite.add("gersten.chi_onshell", "(E^2 - p^2) chi = 0", onshell, 1e-12);
  suite.add("gersten.helicity_sign", "E = +|p|: helicity -1; E = -|p|: helicity +1", helicity,
            1e-12);
  suite.add("gersten.found_modes_solve_pair", "eigenvectors of the (Psi, chi) pencil", found,
            1e-12);
  suite.add("gersten.forced_dispersion", "nonzero generalized solutions have |E| = |p|",
            dispersion, 1e-10);
}

void bw_checks(Suite& suite, Sampler& rng, int trials) {
  const auto unit = NormalizationScheme::constant();
  const auto by_mass = NormalizationScheme::mass();

  double transverse = 0.0, proca = 0.0, timelike = 0.0, renorm = 0.0, gram = 0.0, linear = 0.0,
         gauge = 0.0, antisym = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Momentum3 p = rng.momentum(3.0);
    const double m = rng.uniform(0.5, 3.0);
    const double e = energy(p, m);

    for (Mode l : kSpinOneModes) {
      const auto pol = polarization_vector(p, l, m, unit);
      const Vec4c pc = pol.four_momentum().cast<cplx>();
      transverse = std::max(transverse, std::abs(minkowski_dot(pc, pol.u)) /
                                            (e * pol.u.cwiseAbs().maxCoeff()));
      proca = std::max({proca, proca_residual(pol, +1), proca_residual(pol, -1)});
      renorm = std::max(renorm, normalization_change_check(pol));
    }
    const auto tl = polarization_vector(p, Mode::timelike, m, unit);
    timelike = std::max(timelike,
                        std::abs(proca_residual(tl, +1) - 0.5 * m * tl.u.cwiseAbs().maxCoeff()));

    // Gram matrix u_a^dagger g u_b, expected N^2 diag(-1, -1, -1, +1)
    const double n2 = by_mass(m) * by_mass(m);
    for (int a = 0; a < 4; ++a) {
      const Vec4c ua = polarization_vector(p, kAllModes[a], m, by_mass).u;
      for (int b = 0; b < 4; ++b) {
        const Vec4c ub = polarization_vector(p, kAllModes[b], m, by_mass).u;
        const double expected = a != b ? 0.0 : (a == 3 ? 1.0 : -1.0);
        const cplx g = minkowski_dot(ua.conjugate(), ub) / n2;
        gram = std::max(gram, std::abs(g - expected) / (1.0 + e * e / (m * m)));
      }
    }

    const NormalizationScheme doubled{"double", [](double) { return 2.0; }};
    for (Mode l : kAllModes) {
      const Vec4c u1 = polarization_vector(p, l, m, unit).u;
      const Vec4c u2 = polarization_vector(p, l, m, doubled).u;
      linear = std::max(linear, (u2 - 2.0 * u1).cwiseAbs().maxCoeff());
    }

    const ASTField f = ast_from_potential(polarization_vector(p, Mode::plus, m, unit), +1);
    const cplx c = rng.complex(1.0);
    const Vec4c lambda_p = c * Vec4(e, p.px, p.py, p.pz).cast<cplx>();
    const ASTField same = ast_gauge_transform(f, lambda_p, p, e);
    gauge = std::max(gauge, (same.F - f.F).cwiseAbs().maxCoeff() / (1.0 + e * e));
    const Vec4c generic{rng.complex(1.0), rng.complex(1.0), rng.complex(1.0), rng.complex(1.0)};
    const ASTField moved = ast_gauge_transform(f, generic, p, e);
    antisym = std::max(antisym, (moved.F + moved.F.transpose()).cwiseAbs().maxCoeff());
  }
  suite.add("bw.transversality", "p_mu u^mu(p, lambda) = 0, lambda = +1, 0, -1", transverse,
            1e-12);
  suite.add("bw.proca_spin1", "d_a F^{a mu} + (m/2) A^mu = 0 with 2m F = dA - dA", proca, 1e-12);
  suite.add("bw.proca_timelike", "0_t mode: residual = (m/2) max|u|", timelike, 1e-12);
  suite.add("bw.normalization_change", "A -> 2m A gives d_a F^{a mu} + m^2 A^mu = 0", renorm,
            1e-12);
  suite.add("bw.gram", "u^dagger g u = N^2 diag(-1, -1, -1, +1)", gram, 1e-12);
  suite.add("bw.linear_in_N", "u scales linearly with N", linear, 0.0);
  suite.add("bw.gauge_pure_momentum", "F -> F + d L - d L is the identity for L ~ p", gauge, 1e-13);
  suite.add("bw.gauge_antisymmetry", "F + F^T = 0 after gauge transformation", antisym, 0.0);

  // Printed triplets against the field strength of the potential.  (+) uses
  // u exp(-i p.x); (-) uses u* exp(+i p.x).
  double spread = 0.0, modulus = 0.0, sign_pattern = 0.0;
  for (Mode l : kSpinOneModes) {
    for (FieldKind kind : {FieldKind::B, FieldKind::E}) {
      for (int sgn : {+1, -1}) {
        std::optional<cplx> ref;
        for (int t = 0; t < trials; ++t) {
          const Momentum3 p = rng.momentum(3.0);
          const double m = rng.uniform(0.5, 3.0);
          auto pol = polarization_vector(p, l, m, unit);
          if (sgn < 0) pol.u = pol.u.conjugate();
          const ASTField f = ast_from_potential(pol, sgn);
          const Vec3c oracle = kind == FieldKind::B ? f.magnetic() : f.electric();
          const Vec3c printed = field_triplet(p, l, kind, sgn, m, unit).vec;
          Eigen::Index i = 0;
          oracle.cwiseAbs().maxCoeff(&i);
          const cplx phase = printed(i) / oracle(i);
          const double mismatch = (printed - phase * oracle).cwiseAbs().maxCoeff() / printed.norm();
          if (!ref) ref = phase;
          spread = std::max({spread, std::abs(phase - *ref), mismatch});
        }
      }

      const double expected = l == Mode::zero ? -1.0 : 1.0;
      for (int t = 0; t < trials; ++t) {
        const Momentum3 p = rng.momentum(3.0);
        const double m = rng.uniform(0.5, 3.0);
        const cplx r = phase_relation(p, l, kind, m, unit);
        modulus = std::max(modulus, std::abs(std::abs(r) - 1.0));
        sign_pattern = std::max(sign_pattern, std::abs(r - expected));
      }
    }
  }
  suite.add("bw.oracle_phase_spread", "printed B, E vs F^{mu nu}-derived, one phase per mode",
            spread, 1e-8);
  suite.add("bw.phase_unit_modulus", "|B+(p, l) / B-(p, -l)| = 1 and likewise for E", modulus,
            1e-10);
  suite.add("bw.phase_sign_pattern", "(+, -, +) for lambda = (+1, 0, -1)", sign_pattern, 1e-10);

  const Momentum3 generic(0.6, 0.8, 1.0);
  struct Expect {
    Mode l;
    NormalizationScheme s;
    double slope;
  };
  const Expect cases[] = {{Mode::timelike, unit, -1.0},
                          {Mode::zero, unit, -1.0},
                          {Mode::plus, by_mass, 0.0},
                          {Mode::minus, by_mass, 0.0}};
  double slope_err = 0.0;
  for (const auto& c : cases) {
    slope_err = std::max(slope_err, std::abs(massless_scaling(c.l, c.s, generic) - c.slope));
  }
  suite.add("bw.massless_slopes", "||u|| ~ m^-1 for (0_t, N=1), (0, N=1); ~ m^0 for (+-1, N=m)",
            slope_err, 0.02);
}

}  // namespace

VerifyReport cmd_verify(std::uint64_t seed, int trials) {
  if (trials < 1) throw UsageError("trials must be >= 1");
  Sampler rng(seed);
  Suite suite;
  spin_checks(suite, rng, trials);
  gersten_checks(suite, rng, trials);
  bw_checks(suite, rng, trials);

  VerifyReport report;
  report.checks = std::move(suite.checks);
  report.seed = seed;
  report.trials = trials;
  return report;
}

std::vector<TableRow> cmd_polarization_table(const std::vector<Momentum3>& momenta,
                                             const std::vector<Mode>& modes, double m,
                                             const NormalizationScheme& scheme) {
  if (!(m > 0.0)) throw NonpositiveMass(m);
  std::vector<TableRow> rows;
  for (const auto& p : momenta) {
    for (Mode l : modes) {
      const Vec4c u = polarization_vector(p, l, m, scheme).u;
      for (int c = 0; c < 4; ++c) rows.push_back({p, "u", l, +1, c, u(c)});
    }
    for (Mode l : modes) {
      if (l == Mode::timelike) continue;
      for (FieldKind kind : {FieldKind::B, FieldKind::E}) {
        for (int sgn : {+1, -1}) {
          const Vec3c v = field_triplet(p, l, kind, sgn, m, scheme).vec;
          for (int c = 0; c < 3; ++c) {
            rows.push_back({p, std::string(to_string(kind)), l, sgn, c, v(c)});
          }
        }
      }
    }
  }
  return rows;
}

void write_polarization_csv(std::ostream& os, const std::vector<TableRow>& rows) {
  os << "p1,p2,p3,quantity,lambda,energy_sign,component,real,imag\n";
  for (const auto& r : rows) {
    os << io::format_double(r.p.px) << ',' << io::format_double(r.p.py) << ','
       << io::format_double(r.p.pz) << ',' << r.quantity << ',' << to_string(r.lambda) << ','
       << r.energy_sign << ',' << r.component << ',' << io::format_double(r.value.real()) << ','
       << io::format_double(r.value.imag()) << '\n';
  }
}

std::vector<TableRow> read_polarization_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) ||
      line != "p1,p2,p3,quantity,lambda,energy_sign,component,real,imag") {
    throw std::runtime_error("unexpected polarization table header");
  }
  std::vector<TableRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto c = io::split_csv_line(line);
    if (c.size() != 9) throw std::runtime_error("polarization row must have 9 columns");
    rows.push_back({Momentum3(io::parse_double(c[0]), io::parse_double(c[1]), io::parse_double(c[2])), c[3],
                    parse_mode(c[4]), std::stoi(c[5]), std::stoi(c[6]),
                    cplx{io::parse_double(c[7]), io::parse_double(c[8])}});
  }
  return rows;
}

json polarization_json(const std::vector<TableRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"p", {r.p.px, r.p.py, r.p.pz}},
                   {"quantity", r.quantity},
                   {"lambda", to_string(r.lambda)},
                   {"energy_sign", r.energy_sign},
                   {"component", r.component},
                   {"real", r.value.real()},
                   {"imag", r.value.imag()}});
  }
  return out;
}

std::vector<ScanSeries> cmd_massless_scan(const std::vector<Mode>& modes,
                                          const std::vector<NormalizationScheme>& schemes,
                                          const Momentum3& p) {
  std::vector<ScanSeries> out;
  for (Mode l : modes) {
    for (const auto& s : schemes) {
      out.push_back({l, s.label, massless_scan(l, s, p), massless_scaling(l, s, p)});
    }
  }
  return out;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanSeries>& series) {
  os << "m,norm,mode,scheme\n";
  for (const auto& s : series) {
    for (const auto& pt : s.points) {
      os << io::format_double(pt.m) << ',' << io::format_double(pt.norm) << ','
         << to_string(s.lambda) << ',' << s.scheme << '\n';
    }
  }
}

json scan_summary_json(const std::vector<ScanSeries>& series, const Momentum3& p) {
  json slopes = json::array();
  for (const auto& s : series) {
    slopes.push_back({{"mode", to_string(s.lambda)}, {"scheme", s.scheme}, {"slope", s.slope}});
  }
  return {{"p", {p.px, p.py, p.pz}}, {"masses", massless_scan_masses()}, {"slopes", slopes}};
}

json cmd_planewave(const Momentum3& p, int energy_sign, cplx amplitude, cplx chi) {
  const auto [s, v] = build_generalized_planewave(p, energy_sign, amplitude, chi);
  const auto [r1, r2] = generalized_solution_residual(s, v);
  auto c2j = [](cplx z) { return json::array({z.real(), z.imag()}); };
  json psi = json::array();
  for (int i = 0; i < 3; ++i) psi.push_back(c2j(v.psi(i)));
  const Vec3 e = v.e_field(), b = v.b_field();
  return {{"p", {p.px, p.py, p.pz}},
          {"energy_sign", energy_sign},
          {"E", s.E},
          {"psi", psi},
          {"chi", c2j(v.chi)},
          {"E_field", {e.x(), e.y(), e.z()}},
          {"B_field", {b.x(), b.y(), b.z()}},
          {"residuals",
           {{"generalized", {r1, r2}},
            {"chi_onshell", chi_onshell_residual(s, v)},
            {"factorization", eq9_residual(s, v)}}}};
}

json cmd_simulate(const json& config, const std::filesystem::path& out_dir,
                  const std::string& base_dir) {
  const RunConfig cfg = parse_run_config(config, base_dir);
  const FieldState initial = init_state(cfg.grid, cfg.scenario, cfg.chi_mode);

  const auto snap_dir = out_dir / "snapshots";
  std::vector<std::string> names;
  const SnapshotSink sink = [&](const FieldState& s, int index) {
    const std::string stem = fmt::format("snapshot_{:04d}", index);
    io::write_snapshot(snap_dir, stem, s);
    if (s.grid.dims == 1) {
      std::ofstream csv(snap_dir / (stem + ".csv"));
      io::write_fields_csv_1d(csv, s);
    }
    names.push_back(stem);
  };
  const RunResult result = run(initial, cfg.t_end, cfg.dt, cfg.output_every, sink);

  {
    std::ofstream csv(out_dir / "diagnostics.csv");
    io::write_diagnostics_csv(csv, result.series);
  }

  double ge = 0, gb = 0, cj = 0, co = 0;
  for (const auto& d : result.series) {
    ge = std::max(ge, d.gauss_e_residual);
    gb = std::max(gb, d.gauss_b_residual);
    cj = std::max(cj, d.curl_j_residual);
    co = std::max(co, d.continuity_residual);
  }
  json summary = {
      {"scenario", cfg.scenario_type},
      {"grid", {{"n", cfg.grid.n}, {"L", cfg.grid.L}, {"dims", cfg.grid.dims}}},
      {"chi_mode", cfg.chi_mode == ChiMode::real ? "real" : "complex"},
      {"steps", result.steps},
      {"dt_used", result.dt_used},
      {"t_end", result.final_state.t},
      {"max_gauss_e", ge},
      {"max_gauss_b", gb},
      {"max_curl_j", cj},
      {"max_continuity", co},
      {"energy_initial", result.series.front().energy},
      {"energy_final", result.series.back().energy},
      {"snapshots", names},
  };
  if (auto exact = analytic_solution(cfg.grid, cfg.scenario, result.final_state.t)) {
    summary["final_error"] = relative_l2_error(result.final_state, *exact);
  }
  if (const auto* w = std::get_if<VacuumPlaneWave>(&cfg.scenario)) {
    summary["dispersion_ratio"] =
        measured_frequency(initial, result.final_state, *w) / w->k.norm();
  }
  io::write_text(out_dir / "summary.json", summary.dump(2) + "\n");
  return summary;
}

}  // namespace genmax
