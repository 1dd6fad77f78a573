#pragma once

// Momentum-space content of the massive spin-1 (Bargmann-Wigner) system
//   d_a F^{a mu} + (m/2) A^mu = 0,     2m F^{mu nu} = d^mu A^nu - d^nu A^mu
// for plane waves A = u exp(-/+ i p.x): the polarization 4-vectors u(p, lambda),
// the B and E triplets of the field strength, their (+)/(-) phase relations,
// the massless-limit scaling of u under a chosen normalization, and the tensor
// gauge transformation of F.
//
// Metric (+,-,-,-), index order (0,1,2,3), E_p = +sqrt(p^2 + m^2).

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "genmax/types.hpp"

namespace genmax {

enum class Mode { plus, zero, minus, timelike };
enum class FieldKind { B, E };

inline constexpr Mode kAllModes[] = {Mode::plus, Mode::zero, Mode::minus, Mode::timelike};
inline constexpr Mode kSpinOneModes[] = {Mode::plus, Mode::zero, Mode::minus};

/// "+1", "0", "-1", "0t"
std::string_view to_string(Mode m);
std::string_view to_string(FieldKind k);
Mode parse_mode(std::string_view s);
/// -lambda for +-1, identity for 0 and 0_t.
Mode opposite(Mode m);

/// Overall factor N(m) of the polarization vectors; arbitrary by construction.
struct NormalizationScheme {
  std::string label;
  std::function<double(double)> N;

  double operator()(double m) const { return N(m); }

  static NormalizationScheme constant();   // N = 1
  static NormalizationScheme mass();       // N = m
  static NormalizationScheme sqrt_mass();  // N = sqrt(m)
  /// "constant", "mass", "sqrt_mass" (also "1", "m", "sqrt_m").
  static NormalizationScheme parse(std::string_view name);
};

struct Polarization4 {
  Vec4c u = Vec4c::Zero();
  Mode lambda = Mode::plus;
  Momentum3 p;
  double m = 1.0;
  NormalizationScheme scheme = NormalizationScheme::constant();

  double energy() const;
  /// (E_p, p1, p2, p3)
  Vec4 four_momentum() const;
};

struct FieldTriplet {
  Vec3c vec = Vec3c::Zero();
  FieldKind kind = FieldKind::B;
  Mode lambda = Mode::plus;
  int energy_sign = +1;
};

/// Antisymmetric field-strength amplitude F^{mu nu} (upper indices).
struct ASTField {
  Mat4c F = Mat4c::Zero();

  /// E^i = F^{i0}
  Vec3c electric() const;
  /// B^k = -1/2 eps^{kij} F^{ij}
  Vec3c magnetic() const;
};

double energy(const Momentum3& p, double m);

/// a^mu b_mu without complex conjugation.
cplx minkowski_dot(const Vec4c& a, const Vec4c& b);

/// Closed-form u^mu(p, lambda). Throws NonpositiveMass for m <= 0.
Polarization4 polarization_vector(const Momentum3& p, Mode lambda, double m,
                                  const NormalizationScheme& scheme);

/// Closed-form B/E triplets.  The (+) forms are the printed momentum-space
/// expressions; the (-) forms belong to the negative-frequency potential
/// u* exp(+i p.x) and equal the complex conjugate of the (+) form (N real).
/// lambda = 0_t gives the zero vector (its field strength vanishes).
FieldTriplet field_triplet(const Momentum3& p, Mode lambda, FieldKind kind, int energy_sign,
                           double m, const NormalizationScheme& scheme);

/// F^{mu nu} = (-i s / 2m)(p^mu u^nu - p^nu u^mu) for A = u exp(-i s p.x).
ASTField ast_from_potential(const Polarization4& pol, int energy_sign);

/// Component vector of d_a F^{a mu} + (m/2) A^mu with F from ast_from_potential.
Vec4c proca_residual_vector(const Polarization4& pol, int energy_sign);
/// Max-component of proca_residual_vector.
double proca_residual(const Polarization4& pol, int energy_sign);

/// Rescales u -> 2m u, forms F = -i (p^mu u^nu - p^nu u^mu) and returns
/// || d_a F^{a mu} + m^2 A^mu || (positive-energy plane wave).
double normalization_change_check(const Polarization4& pol);

/// Componentwise ratio kind^(+)(p, lambda) / kind^(-)(p, -lambda).
/// Throws DegenerateMode if either triplet vanishes and Error if the ratio is
/// not constant across the nonzero components (to 1e-10).
cplx phase_relation(const Momentum3& p, Mode lambda, FieldKind kind, double m,
                    const NormalizationScheme& scheme);

struct ScanPoint {
  double m;
  double norm;
};

/// Masses probed by the massless-limit scan: 1e-1 ... 1e-6.
std::vector<double> massless_scan_masses();

/// ||u(p, lambda)|| (Euclidean, complex) at every scan mass.
std::vector<ScanPoint> massless_scan(Mode lambda, const NormalizationScheme& scheme,
                                     const Momentum3& p);

/// Least-squares slope of log||u|| against log m over the scan.
/// Throws ZeroMomentum for p = 0.
double massless_scaling(Mode lambda, const NormalizationScheme& scheme, const Momentum3& p);

/// F_{mu nu} -> F_{mu nu} + d_nu L_mu - d_mu L_nu with d -> -i p for the
/// 4-momentum (E, p).
ASTField ast_gauge_transform(const ASTField& f, const Vec4c& gauge, const Momentum3& p, double E);

}  // namespace genmax
