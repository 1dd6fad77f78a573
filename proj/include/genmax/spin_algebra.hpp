#pragma once

// Spin-1 matrices in the Cartesian basis and the matrix identities that the
// first-order (Riemann-Silberstein) form of the Maxwell equations relies on.
//
// Convention: (S_i)^{jk} = i eps^{jik} = -i eps^{ijk}.  With it
// (S.p) v = i p x v, so (S.p) p = 0 and the real/imaginary split of
// (E + S.p) Psi = 0 with Psi = E - iB reproduces the vacuum curl equations.

#include <array>

#include "genmax/types.hpp"

namespace genmax {

using SpinMatrix = Mat3c;

/// Levi-Civita symbol on {0,1,2}; returns 0 for repeated indices.
int levi_civita(int i, int j, int k);

struct SpinMatrices {
  SpinMatrix x, y, z;

  const SpinMatrix& operator[](Axis a) const;
  const SpinMatrix& operator[](int i) const { return (*this)[static_cast<Axis>(i)]; }
};

SpinMatrices build_spin_matrices();

/// The shared immutable set built once on first use.
const SpinMatrices& spin_matrices();

/// sum_i p_i S_i
SpinMatrix spin_dot_p(const Momentum3& p);

/// sum_{k,l} eps^{ikl} S_k p_l, the i-th component of the matrix-valued S x p.
SpinMatrix spin_cross_p(Axis i, const Momentum3& p);

/// || (S.p) p ||; vanishes identically (rot grad = 0 in coordinate space).
double annihilation_residual(const Momentum3& p);

/// Max-entry deviation of S_i (S.p) from p_i I - i [S x p]^i - p^m delta^{ij}.
double product_identity_residual(Axis i, const Momentum3& p);

/// Residual norms of the three equations obtained by multiplying
/// {pt + S.p} psi = 0 from the left by S_x, S_y, S_z.  The coefficient of pt
/// is fixed to 1.
///
/// Throws PreconditionViolated if psi does not solve {pt + S.p} psi = 0 or is
/// not transverse (p.psi = 0) to within 1e-12 (scaled by input magnitude).
std::array<double, 3> dirac_chain_residual(const Momentum3& p, double pt, const Vec3c& psi);

/// (|det Sx|, |det Sy|, |det Sz|)
std::array<double, 3> singularity_report();

/// Bilinear (non-conjugating) contraction p.v.
cplx dot(const Momentum3& p, const Vec3c& v);

}  // namespace genmax
