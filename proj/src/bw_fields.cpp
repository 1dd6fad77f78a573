#include "genmax/bw_fields.hpp"

#include <cmath>
#include <stdexcept>

#include "genmax/errors.hpp"
#include "genmax/spin_algebra.hpp"

namespace genmax {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

const Eigen::Vector4d kMetric{1.0, -1.0, -1.0, -1.0};

void require_mass(double m) {
  if (!(m > 0.0)) throw NonpositiveMass(m);
}

// The (+) closed forms as printed, before conjugation for (-).
Vec3c printed_triplet(const Momentum3& p, Mode lambda, FieldKind kind, double m, double N) {
  const double e = energy(p, m);
  const double em = e + m;
  const double p1 = p.px, p2 = p.py, p3 = p.pz;
  const cplx pr = p.p_r(), pl = p.p_l();

  if (kind == FieldKind::B) {
    switch (lambda) {
      case Mode::plus:
        return (-kI * N / (2.0 * kSqrt2 * m)) * Vec3c(-kI * p3, p3, kI * pr);
      case Mode::zero:
        return (kI * N / (2.0 * m)) * Vec3c(p2, -p1, 0.0);
      case Mode::minus:
        return (kI * N / (2.0 * kSqrt2 * m)) * Vec3c(kI * p3, p3, -kI * pl);
      case Mode::timelike:
        return Vec3c::Zero();
    }
  } else {
    switch (lambda) {
      case Mode::plus:
        return (-kI * N / (2.0 * kSqrt2 * m)) *
               Vec3c(e - p1 * pr / em, kI * e - p2 * pr / em, -p3 * pr / em);
      case Mode::zero:
        return (kI * N / (2.0 * m)) * Vec3c(-p1 * p3 / em, -p2 * p3 / em, e - p3 * p3 / em);
      case Mode::minus:
        return (kI * N / (2.0 * kSqrt2 * m)) *
               Vec3c(e - p1 * pl / em, -kI * e - p2 * pl / em, -p3 * pl / em);
      case Mode::timelike:
        return Vec3c::Zero();
    }
  }
  return Vec3c::Zero();
}

// (-i s) p_a F^{a mu}, the momentum image of d_a F^{a mu} for exp(-i s p.x).
Vec4c divergence(const Mat4c& f, const Vec4& p_upper, int energy_sign) {
  const Vec4c p_lower = p_upper.cwiseProduct(kMetric).cast<cplx>();
  return (-kI * static_cast<double>(energy_sign)) * (f.transpose() * p_lower);
}

Mat4c wedge(const Vec4& p, const Vec4c& u) {
  const Vec4c pc = p.cast<cplx>();
  return pc * u.transpose() - u * pc.transpose();
}

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::plus: return "+1";
    case Mode::zero: return "0";
    case Mode::minus: return "-1";
    case Mode::timelike: return "0t";
  }
  return "?";
}

std::string_view to_string(FieldKind k) { return k == FieldKind::B ? "B" : "E"; }

Mode parse_mode(std::string_view s) {
  if (s == "+1" || s == "1" || s == "plus") return Mode::plus;
  if (s == "0" || s == "zero") return Mode::zero;
  if (s == "-1" || s == "minus") return Mode::minus;
  if (s == "0t" || s == "0_t" || s == "timelike") return Mode::timelike;
  throw std::invalid_argument("unknown polarization mode '" + std::string(s) + "'");
}

Mode opposite(Mode m) {
  if (m == Mode::plus) return Mode::minus;
  if (m == Mode::minus) return Mode::plus;
  return m;
}

NormalizationScheme NormalizationScheme::constant() {
  return {"constant", [](double) { return 1.0; }};
}
NormalizationScheme NormalizationScheme::mass() {
  return {"mass", [](double m) { return m; }};
}
NormalizationScheme NormalizationScheme::sqrt_mass() {
  return {"sqrt_mass", [](double m) { return std::sqrt(m); }};
}

NormalizationScheme NormalizationScheme::parse(std::string_view name) {
  if (name == "constant" || name == "1") return constant();
  if (name == "mass" || name == "m") return mass();
  if (name == "sqrt_mass" || name == "sqrt_m") return sqrt_mass();
  throw std::invalid_argument("unknown normalization scheme '" + std::string(name) + "'");
}

double energy(const Momentum3& p, double m) { return std::sqrt(p.squared_norm() + m * m); }

double Polarization4::energy() const { return genmax::energy(p, m); }

Vec4 Polarization4::four_momentum() const { return {energy(), p.px, p.py, p.pz}; }

Vec3c ASTField::electric() const { return {F(1, 0), F(2, 0), F(3, 0)}; }

Vec3c ASTField::magnetic() const {
  Vec3c b = Vec3c::Zero();
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const int e = levi_civita(k, i, j);
        if (e != 0) b(k) -= 0.5 * e * F(i + 1, j + 1);
      }
  return b;
}

cplx minkowski_dot(const Vec4c& a, const Vec4c& b) {
  return a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3);
}

Polarization4 polarization_vector(const Momentum3& p, Mode lambda, double m,
                                  const NormalizationScheme& scheme) {
  require_mass(m);
  const double N = scheme(m);
  const double e = energy(p, m);
  const double em = e + m;
  const double p1 = p.px, p2 = p.py, p3 = p.pz;

  Polarization4 pol;
  pol.lambda = lambda;
  pol.p = p;
  pol.m = m;
  pol.scheme = scheme;

  switch (lambda) {
    case Mode::plus: {
      const cplx pr = p.p_r();
      pol.u = (-N / (kSqrt2 * m)) *
              Vec4c(pr, m + p1 * pr / em, kI * m + p2 * pr / em, p3 * pr / em);
      break;
    }
    case Mode::minus: {
      const cplx pl = p.p_l();
      pol.u = (N / (kSqrt2 * m)) *
              Vec4c(pl, m + p1 * pl / em, -kI * m + p2 * pl / em, p3 * pl / em);
      break;
    }
    case Mode::zero:
      pol.u = (N / m) * Vec4c(p3, p1 * p3 / em, p2 * p3 / em, m + p3 * p3 / em);
      break;
    case Mode::timelike:
      pol.u = (N / m) * Vec4c(e, p1, p2, p3);
      break;
  }
  return pol;
}

FieldTriplet field_triplet(const Momentum3& p, Mode lambda, FieldKind kind, int energy_sign,
                           double m, const NormalizationScheme& scheme) {
  require_mass(m);
  if (energy_sign != 1 && energy_sign != -1) {
    throw std::invalid_argument("energy_sign must be +1 or -1");
  }
  Vec3c v = printed_triplet(p, lambda, kind, m, scheme(m));
  if (energy_sign < 0) v = v.conjugate();
  return {v, kind, lambda, energy_sign};
}

ASTField ast_from_potential(const Polarization4& pol, int energy_sign) {
  const cplx factor = -kI * static_cast<double>(energy_sign) / (2.0 * pol.m);
  return {factor * wedge(pol.four_momentum(), pol.u)};
}

Vec4c proca_residual_vector(const Polarization4& pol, int energy_sign) {
  const ASTField f = ast_from_potential(pol, energy_sign);
  return divergence(f.F, pol.four_momentum(), energy_sign) + (pol.m / 2.0) * pol.u;
}

double proca_residual(const Polarization4& pol, int energy_sign) {
  return proca_residual_vector(pol, energy_sign).cwiseAbs().maxCoeff();
}

double normalization_change_check(const Polarization4& pol) {
  const Vec4 p = pol.four_momentum();
  const Vec4c u = (2.0 * pol.m) * pol.u;
  const Mat4c f = -kI * wedge(p, u);
  return (divergence(f, p, +1) + pol.m * pol.m * u).norm();
}

cplx phase_relation(const Momentum3& p, Mode lambda, FieldKind kind, double m,
                    const NormalizationScheme& scheme) {
  const Vec3c a = field_triplet(p, lambda, kind, +1, m, scheme).vec;
  const Vec3c b = field_triplet(p, opposite(lambda), kind, -1, m, scheme).vec;

  const double scale = scheme(m) / m * (1.0 + energy(p, m));
  if (a.norm() <= 1e-13 * scale || b.norm() <= 1e-13 * scale) {
    throw DegenerateMode(std::string(to_string(kind)) + " triplet vanishes for lambda = " +
                         std::string(to_string(lambda)));
  }
  Eigen::Index i = 0;
  b.cwiseAbs().maxCoeff(&i);
  const cplx ratio = a(i) / b(i);
  if ((a - ratio * b).cwiseAbs().maxCoeff() > 1e-10 * a.norm()) {
    throw Error("triplet ratio is not constant across components");
  }
  return ratio;
}

std::vector<double> massless_scan_masses() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

std::vector<ScanPoint> massless_scan(Mode lambda, const NormalizationScheme& scheme,
                                     const Momentum3& p) {
  if (p.norm() == 0.0) throw ZeroMomentum();
  std::vector<ScanPoint> out;
  for (double m : massless_scan_masses()) {
    out.push_back({m, polarization_vector(p, lambda, m, scheme).u.norm()});
  }
  return out;
}

double massless_scaling(Mode lambda, const NormalizationScheme& scheme, const Momentum3& p) {
  const auto pts = massless_scan(lambda, scheme, p);
  const double n = static_cast<double>(pts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& pt : pts) {
    const double x = std::log(pt.m), y = std::log(pt.norm);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ASTField ast_gauge_transform(const ASTField& f, const Vec4c& gauge, const Momentum3& p,
                             double E) {
  const Vec4c pc = Vec4(E, p.px, p.py, p.pz).cast<cplx>();
  // p^nu L^mu - p^mu L^nu as a matrix in (mu, nu)
  const Mat4c d = gauge * pc.transpose() - pc * gauge.transpose();
  return {f.F - kI * d};
}

}  // namespace genmax
