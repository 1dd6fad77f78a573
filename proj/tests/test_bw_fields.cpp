#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "genmax/bw_fields.hpp"
#include "genmax/errors.hpp"
#include "oracles.hpp"

using namespace genmax;

namespace {

const double r2 = std::sqrt(2.0);
const auto N1 = NormalizationScheme::constant();
const auto Nm = NormalizationScheme::mass();

Momentum3 random_p(std::mt19937_64& rng, double a = 5.0) {
  std::uniform_real_distribution<double> u(-a, a);
  return {u(rng), u(rng), u(rng)};
}

// Conjugating Minkowski product, assembled by hand.
cplx gram(const Vec4c& a, const Vec4c& b) {
  return std::conj(a(0)) * b(0) - std::conj(a(1)) * b(1) - std::conj(a(2)) * b(2) -
         std::conj(a(3)) * b(3);
}

}  // namespace

TEST_CASE("mode and scheme parsing") {
  for (Mode m : kAllModes) CHECK(parse_mode(to_string(m)) == m);
  CHECK(parse_mode("0_t") == Mode::timelike);
  CHECK_THROWS_AS(parse_mode("2"), std::invalid_argument);
  CHECK(opposite(Mode::plus) == Mode::minus);
  CHECK(opposite(Mode::zero) == Mode::zero);
  CHECK(opposite(Mode::timelike) == Mode::timelike);
  CHECK(NormalizationScheme::parse("m")(3.0) == 3.0);
  CHECK(NormalizationScheme::parse("constant")(3.0) == 1.0);
  CHECK(NormalizationScheme::parse("sqrt_mass")(4.0) == 2.0);
  CHECK_THROWS_AS(NormalizationScheme::parse("bogus"), std::invalid_argument);
}

TEST_CASE("polarization vectors") {
  SUBCASE("rest frame, time-like") {
    const auto pol = polarization_vector({0, 0, 0}, Mode::timelike, 1.0, N1);
    CHECK((pol.u - Vec4c(1, 0, 0, 0)).norm() == 0.0);
  }
  SUBCASE("rest frame, helicity +1") {
    const auto pol = polarization_vector({0, 0, 0}, Mode::plus, 1.0, N1);
    const Vec4c expected = -(1.0 / r2) * Vec4c(0, 1, cplx(0, 1), 0);
    CHECK((pol.u - expected).norm() <= 1e-15);
  }
  SUBCASE("longitudinal along z") {
    const auto pol = polarization_vector({0, 0, 3}, Mode::zero, 4.0, N1);
    CHECK(pol.energy() == 5.0);
    CHECK((pol.u - Vec4c(0.75, 0, 0, 1.25)).norm() <= 1e-15);
    CHECK(std::abs(5.0 * pol.u(0) - 3.0 * pol.u(3)) <= 1e-15);
  }
  SUBCASE("nonpositive mass") {
    CHECK_THROWS_AS(polarization_vector({0, 0, 1}, Mode::plus, 0.0, N1), NonpositiveMass);
    CHECK_THROWS_AS(polarization_vector({0, 0, 1}, Mode::plus, -1.0, N1), NonpositiveMass);
  }
  SUBCASE("transversality for the spin-1 modes") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> um(0.1, 5.0);
    for (int t = 0; t < 500; ++t) {
      const Momentum3 p = random_p(rng);
      const double m = um(rng);
      for (Mode l : kSpinOneModes) {
        const auto pol = polarization_vector(p, l, m, N1);
        const Vec4c pu = pol.four_momentum().cast<cplx>();
        const double scale = (1 + pol.energy()) * pol.u.norm();
        CHECK(std::abs(minkowski_dot(pu, pol.u)) <= 1e-12 * scale);
      }
      // time-like mode is parallel to p
      const auto pt = polarization_vector(p, Mode::timelike, m, N1);
      CHECK(std::abs(minkowski_dot(pt.four_momentum().cast<cplx>(), pt.u) - m) <= 1e-12 * (1 + pt.energy() * pt.energy()));
    }
  }
  SUBCASE("Gram matrix with N = m is N^2 diag(-1, -1, -1, +1)") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> um(0.2, 3.0);
    for (int t = 0; t < 100; ++t) {
      const Momentum3 p = random_p(rng, 3.0);
      const double m = um(rng);
      std::vector<Vec4c> us;
      for (Mode l : kAllModes) us.push_back(polarization_vector(p, l, m, Nm).u);
      const double scale = m * m * (1 + p.squared_norm() / (m * m));
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          const cplx g = gram(us[a], us[b]);
          const double expected = a == b ? (a == 3 ? m * m : -m * m) : 0.0;
          CHECK(std::abs(g - expected) <= 1e-12 * scale);
        }
    }
  }
  SUBCASE("linear in N") {
    const Momentum3 p{0.3, -0.4, 1.2};
    for (Mode l : kAllModes) {
      const auto a = polarization_vector(p, l, 2.0, N1);
      const auto b = polarization_vector(p, l, 2.0, Nm);
      CHECK((2.0 * a.u - b.u).norm() <= 1e-14);
    }
  }
}

TEST_CASE("field triplets") {
  SUBCASE("z-axis helicity +1 magnetic triplet") {
    const double k = 2.5, m = 1.5;
    const auto t = field_triplet({0, 0, k}, Mode::plus, FieldKind::B, +1, m, N1);
    const Vec3c expected = (cplx(0, -1) / (2 * r2 * m)) * Vec3c(cplx(0, -k), k, 0);
    CHECK((t.vec - expected).norm() <= 1e-15);
  }
  SUBCASE("rest frame longitudinal B vanishes") {
    const auto t = field_triplet({0, 0, 0}, Mode::zero, FieldKind::B, +1, 1.0, N1);
    CHECK(t.vec.norm() == 0.0);
  }
  SUBCASE("time-like triplets vanish") {
    for (FieldKind k : {FieldKind::B, FieldKind::E})
      for (int s : {1, -1})
        CHECK(field_triplet({1, 2, 3}, Mode::timelike, k, s, 1.0, N1).vec.norm() == 0.0);
  }
  SUBCASE("negative energy is the conjugate form") {
    const Momentum3 p{0.7, 0.1, -0.9};
    for (Mode l : kAllModes)
      for (FieldKind k : {FieldKind::B, FieldKind::E}) {
        const auto a = field_triplet(p, l, k, +1, 1.3, N1).vec;
        const auto b = field_triplet(p, l, k, -1, 1.3, N1).vec;
        CHECK((a.conjugate() - b).norm() == 0.0);
      }
  }
  SUBCASE("bad energy sign") {
    CHECK_THROWS_AS(field_triplet({0, 0, 1}, Mode::plus, FieldKind::B, 0, 1.0, N1),
                    std::invalid_argument);
  }
}

TEST_CASE("closed-form triplets agree with the field strength of the potential") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> um(0.1, 4.0);
  for (int t = 0; t < 200; ++t) {
    const Momentum3 p = random_p(rng);
    const double m = um(rng);
    for (Mode l : kSpinOneModes) {
      const auto pol = polarization_vector(p, l, m, N1);
      Polarization4 conj_pol = pol;
      conj_pol.u = pol.u.conjugate();
      const ASTField fp = ast_from_potential(pol, +1);
      const ASTField fm = ast_from_potential(conj_pol, -1);
      const double scale = 1e-12 * (1 + pol.energy()) * pol.u.norm();
      CHECK((field_triplet(p, l, FieldKind::B, +1, m, N1).vec - fp.magnetic()).norm() <= scale);
      CHECK((field_triplet(p, l, FieldKind::E, +1, m, N1).vec - fp.electric()).norm() <= scale);
      CHECK((field_triplet(p, l, FieldKind::B, -1, m, N1).vec - fm.magnetic()).norm() <= scale);
      CHECK((field_triplet(p, l, FieldKind::E, -1, m, N1).vec - fm.electric()).norm() <= scale);
    }
  }
}

TEST_CASE("field strength from the potential") {
  SUBCASE("time-like potential is pure gauge") {
    const auto pol = polarization_vector({1, -2, 0.5}, Mode::timelike, 1.7, N1);
    CHECK(ast_from_potential(pol, +1).F.cwiseAbs().maxCoeff() <= 1e-15);
  }
  SUBCASE("rest frame helicity +1 has only F^{0i}") {
    const double m = 2.0;
    const auto pol = polarization_vector({0, 0, 0}, Mode::plus, m, N1);
    for (int s : {1, -1}) {
      const Mat4c F = ast_from_potential(pol, s).F;
      for (int i = 1; i < 4; ++i) {
        CHECK(std::abs(F(0, i) - cplx(0, -s) / (2 * m) * m * pol.u(i)) <= 1e-15);
        for (int j = 1; j < 4; ++j) CHECK(F(i, j) == cplx(0, 0));
      }
    }
  }
  SUBCASE("antisymmetric") {
    const auto pol = polarization_vector({0.2, 0.4, -1}, Mode::minus, 0.5, N1);
    const Mat4c F = ast_from_potential(pol, 1).F;
    CHECK((F + F.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("Proca residual separates spin-1 from the time-like mode") {
  SUBCASE("z-axis examples") {
    const auto pol = polarization_vector({0, 0, 3}, Mode::plus, 4.0, N1);
    CHECK(proca_residual(pol, +1) <= 1e-12);
    CHECK(normalization_change_check(pol) <= 1e-12);
  }
  SUBCASE("rest-frame time-like residual is (m/2) u") {
    const auto pol = polarization_vector({0, 0, 0}, Mode::timelike, 1.0, N1);
    const Vec4c r = proca_residual_vector(pol, +1);
    CHECK((r - Vec4c(0.5, 0, 0, 0)).norm() == 0.0);
    CHECK(proca_residual(pol, +1) == 0.5);
  }
  SUBCASE("rest-frame longitudinal normalization change") {
    CHECK(normalization_change_check(polarization_vector({0, 0, 0}, Mode::zero, 2.0, N1)) == 0.0);
  }
  SUBCASE("random sweep") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> um(0.1, 5.0);
    for (int t = 0; t < 300; ++t) {
      const Momentum3 p = random_p(rng);
      const double m = um(rng);
      for (Mode l : kSpinOneModes) {
        const auto pol = polarization_vector(p, l, m, N1);
        const double scale = (1 + pol.energy() * pol.energy() / m) * pol.u.norm();
        CHECK(proca_residual(pol, +1) <= 1e-12 * scale);
        CHECK(proca_residual(pol, -1) <= 1e-12 * scale);
        CHECK(normalization_change_check(pol) <= 1e-12 * scale * m);
      }
      const auto pt = polarization_vector(p, Mode::timelike, m, N1);
      const double expected = 0.5 * m * pt.u.cwiseAbs().maxCoeff();
      CHECK(std::abs(proca_residual(pt, +1) - expected) <= 1e-12 * (1 + expected));
      CHECK(std::abs(normalization_change_check(pt) - 2 * m * m * m * pt.u.norm()) <=
            1e-12 * (1 + m * m * m * pt.u.norm()));
    }
  }
}

TEST_CASE("phase relations") {
  SUBCASE("signs (+, -, +) for (+1, 0, -1), unit modulus") {
    std::mt19937_64 rng(25);
    std::uniform_real_distribution<double> um(0.1, 4.0);
    const double expected[] = {1.0, -1.0, 1.0};
    for (int t = 0; t < 100; ++t) {
      const Momentum3 p = random_p(rng);
      const double m = um(rng);
      for (int li = 0; li < 3; ++li)
        for (FieldKind k : {FieldKind::B, FieldKind::E}) {
          const cplx r = phase_relation(p, kSpinOneModes[li], k, m, N1);
          CHECK(std::abs(std::abs(r) - 1.0) <= 1e-10);
          CHECK(std::abs(r - expected[li]) <= 1e-10);
        }
    }
  }
  SUBCASE("longitudinal B on the z-axis is degenerate") {
    CHECK_THROWS_AS(phase_relation({0, 0, 2}, Mode::zero, FieldKind::B, 1.0, N1), DegenerateMode);
    CHECK_THROWS_AS(phase_relation({1, 2, 2}, Mode::timelike, FieldKind::E, 1.0, N1),
                    DegenerateMode);
  }
  SUBCASE("longitudinal E at generic momentum has negative sign") {
    const cplx r = phase_relation({0.3, 0.5, -0.8}, Mode::zero, FieldKind::E, 1.2, N1);
    CHECK(r.real() < 0);
  }
}

TEST_CASE("massless scaling") {
  // Independent closed-form norms for the fit.
  auto fit = [](auto norm_of_m) {
    std::vector<double> xs, ys;
    for (double m = 1e-1; m > 5e-7; m /= 10) {
      xs.push_back(std::log(m));
      ys.push_back(std::log(norm_of_m(m)));
    }
    return oracle::fit_slope(xs, ys);
  };
  const Momentum3 z{0, 0, 1};
  const Momentum3 g{0.6, 0.8, 1.0};

  SUBCASE("oracle slopes") {
    // |u(0t)| = sqrt(E^2 + p^2)/m for N = 1
    const double o_t = fit([](double m) { return std::sqrt(1 + m * m + 1) / m; });
    CHECK(o_t == doctest::Approx(-1.0).epsilon(0.02));
    CHECK(massless_scaling(Mode::timelike, N1, z) == doctest::Approx(o_t).epsilon(1e-9));
    // longitudinal on z: (1/m)(1, 0, 0, m + 1/(E + m))
    const double o_0 = fit([](double m) {
      const double e = std::sqrt(1 + m * m);
      const double u3 = m + 1.0 / (e + m);
      return std::sqrt(1 + u3 * u3) / m;
    });
    CHECK(o_0 == doctest::Approx(-1.0).epsilon(0.02));
    CHECK(massless_scaling(Mode::zero, N1, z) == doctest::Approx(o_0).epsilon(1e-9));
  }
  SUBCASE("transverse modes with N = m stay finite off the z-axis") {
    CHECK(std::abs(massless_scaling(Mode::plus, Nm, g)) <= 0.02);
    CHECK(std::abs(massless_scaling(Mode::minus, Nm, g)) <= 0.02);
    CHECK(massless_scaling(Mode::timelike, N1, g) == doctest::Approx(-1.0).epsilon(0.02));
    CHECK(massless_scaling(Mode::zero, N1, g) == doctest::Approx(-1.0).epsilon(0.02));
  }
  SUBCASE("on the z-axis the transverse N = m vector is m (0, 1, i, 0)/sqrt2") {
    for (double m : massless_scan_masses()) {
      const auto pol = polarization_vector(z, Mode::plus, m, Nm);
      CHECK(std::abs(pol.u.norm() - m) <= 1e-15);
    }
    CHECK(massless_scaling(Mode::plus, Nm, z) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("scan shape and errors") {
    const auto pts = massless_scan(Mode::plus, Nm, g);
    CHECK(pts.size() == 6);
    CHECK(pts.front().m == 1e-1);
    CHECK(pts.back().m == 1e-6);
    CHECK_THROWS_AS(massless_scaling(Mode::plus, Nm, {0, 0, 0}), ZeroMomentum);
  }
}

TEST_CASE("tensor gauge transformation") {
  const auto pol = polarization_vector({0.4, -0.3, 1.1}, Mode::plus, 0.9, N1);
  const ASTField f = ast_from_potential(pol, +1);
  const double E = pol.energy();

  CHECK(ast_gauge_transform(f, Vec4c::Zero(), pol.p, E).F == f.F);

  const Vec4c along_p = cplx(0.3, -1.2) * pol.four_momentum().cast<cplx>();
  CHECK((ast_gauge_transform(f, along_p, pol.p, E).F - f.F).cwiseAbs().maxCoeff() <= 1e-15);

  std::mt19937_64 rng(26);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 100; ++t) {
    const Vec4c L(cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng)),
                  cplx(u(rng), u(rng)));
    const Mat4c d = ast_gauge_transform(f, L, pol.p, E).F - f.F;
    CHECK((d + d.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
    Eigen::JacobiSVD<Mat4c> svd(d);
    svd.setThreshold(1e-12);
    CHECK(svd.rank() <= 2);
  }
}
