#pragma once

// Momentum-space first-order photon equations: the factorization identity
//   (E^2 - p^2) Psi = (E - S.p)(E + S.p) Psi - p (p.Psi)
// and the two solution families built on it,
//   standard:     (E + S.p) Psi = 0,      p.Psi = 0
//   generalized:  (E + S.p) Psi = p chi,  p.Psi = E chi
// Natural units c = hbar = 1.  Psi = E_field - i B_field.

#include <utility>
#include <vector>

#include "genmax/types.hpp"

namespace genmax {

struct MomentumState {
  double E = 0.0;
  Momentum3 p;
  double m = 0.0;

  /// |E^2 - p^2 - m^2| <= 1e-12 max(1, E^2)
  bool on_shell() const;
};

/// Riemann-Silberstein amplitude plus the scalar chi.
struct RSVector {
  Vec3c psi = Vec3c::Zero();
  cplx chi{0.0, 0.0};

  Vec3 e_field() const { return psi.real(); }
  Vec3 b_field() const { return -psi.imag(); }
  static RSVector from_fields(const Vec3& e, const Vec3& b, cplx chi = {});
};

/// Max-norm of LHS - RHS of the factorization identity. Holds off-shell.
double eq9_residual(const MomentumState& s, const RSVector& v);

/// (||(E + S.p) Psi||, |p.Psi|)
std::pair<double, double> standard_solution_residual(const MomentumState& s, const RSVector& v);

/// (||(E + S.p) Psi - p chi||, |p.Psi - E chi|)
std::pair<double, double> generalized_solution_residual(const MomentumState& s,
                                                        const RSVector& v);

/// Unit vector e with (S.p_hat) e = helicity * e, helicity in {-1, +1}.
///
/// Built by rotating the z-frame eigenvector (1, i*helicity, 0)/sqrt2 onto
/// p_hat (polar angle theta, azimuth phi = atan2(py, px), phi = 0 when
/// p_r = 0).  Throws ZeroMomentum for p = 0.
Vec3c helicity_eigenvector(const Momentum3& p, int helicity);

/// E = sign |p|,  Psi = a e_h + (p / E) chi  with (S.p_hat) e_h = -sign e_h.
/// Throws ZeroMomentum for p = 0 and std::invalid_argument for sign not +-1.
std::pair<MomentumState, RSVector> build_generalized_planewave(const Momentum3& p,
                                                               int energy_sign,
                                                               cplx transverse_amplitude,
                                                               cplx chi);

/// |(E^2 - p^2) chi|. Requires v to be a generalized solution (residual pair
/// within 1e-12 scaled) with chi != 0, else PreconditionViolated.
double chi_onshell_residual(const MomentumState& s, const RSVector& v);

/// A nontrivial (Psi, chi) together with the energy at which it solves the
/// generalized pair.
struct GeneralizedMode {
  cplx eigenvalue;
  RSVector v;

  double E() const { return eigenvalue.real(); }
};

/// Every solution of the generalized pair for fixed p, found as the
/// eigen-decomposition of the 4x4 pencil acting on (Psi, chi).  No on-shell
/// assumption is made; the returned energies are whatever the pencil yields.
std::vector<GeneralizedMode> find_generalized_solutions(const Momentum3& p);

}  // namespace genmax
