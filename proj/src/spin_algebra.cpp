#include "genmax/spin_algebra.hpp"

#include <cmath>

#include "genmax/errors.hpp"

namespace genmax {

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  // even permutations of (0,1,2) are cyclic shifts
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

const SpinMatrix& SpinMatrices::operator[](Axis a) const {
  switch (a) {
    case Axis::x: return x;
    case Axis::y: return y;
    case Axis::z: return z;
  }
  return z;
}

SpinMatrices build_spin_matrices() {
  std::array<SpinMatrix, 3> s;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        s[i](j, k) = kI * static_cast<double>(levi_civita(j, i, k));
      }
    }
  }
  return {s[0], s[1], s[2]};
}

const SpinMatrices& spin_matrices() {
  static const SpinMatrices kS = build_spin_matrices();
  return kS;
}

SpinMatrix spin_dot_p(const Momentum3& p) {
  const auto& s = spin_matrices();
  return s.x * p.px + s.y * p.py + s.z * p.pz;
}

SpinMatrix spin_cross_p(Axis axis, const Momentum3& p) {
  const auto& s = spin_matrices();
  const int i = static_cast<int>(axis);
  SpinMatrix out = SpinMatrix::Zero();
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      const int e = levi_civita(i, k, l);
      if (e != 0) out += static_cast<double>(e) * p[l] * s[k];
    }
  }
  return out;
}

cplx dot(const Momentum3& p, const Vec3c& v) {
  return p.px * v(0) + p.py * v(1) + p.pz * v(2);
}

double annihilation_residual(const Momentum3& p) {
  return (spin_dot_p(p) * p.cvec()).norm();
}

double product_identity_residual(Axis axis, const Momentum3& p) {
  const int i = static_cast<int>(axis);
  const SpinMatrix lhs = spin_matrices()[axis] * spin_dot_p(p);

  SpinMatrix rhs = p[i] * SpinMatrix::Identity() - kI * spin_cross_p(axis, p);
  // - p^m delta^{ij}: only row j = i is touched
  for (int m = 0; m < 3; ++m) rhs(i, m) -= p[m];

  return (lhs - rhs).cwiseAbs().maxCoeff();
}

std::array<double, 3> dirac_chain_residual(const Momentum3& p, double pt, const Vec3c& psi) {
  const auto& S = spin_matrices();
  const SpinMatrix I = SpinMatrix::Identity();
  const double scale = (1.0 + std::abs(pt) + p.norm()) * std::max(1.0, psi.norm());

  const double wave_residual = ((pt * I + spin_dot_p(p)) * psi).norm();
  const double transverse = std::abs(dot(p, psi));
  if (wave_residual > 1e-12 * scale) {
    throw PreconditionViolated("psi does not solve {pt + S.p} psi = 0 (residual " +
                               std::to_string(wave_residual) + ")");
  }
  if (transverse > 1e-12 * scale) {
    throw PreconditionViolated("psi is not transverse (|p.psi| = " + std::to_string(transverse) +
                               ")");
  }

  const double px = p.px, py = p.py, pz = p.pz;
  const std::array<SpinMatrix, 3> ops = {
      px * I + S.x * pt - kI * S.y * pz + kI * S.z * py,
      py * I + S.y * pt - kI * S.z * px + kI * S.x * pz,
      pz * I + S.z * pt - kI * S.x * py + kI * S.y * px,
  };
  const cplx p_dot_psi = dot(p, psi);

  std::array<double, 3> out{};
  for (int a = 0; a < 3; ++a) {
    Vec3c r = ops[a] * psi;
    r(a) -= p_dot_psi;
    out[a] = r.norm();
  }
  return out;
}

std::array<double, 3> singularity_report() {
  const auto& s = spin_matrices();
  return {std::abs(s.x.determinant()), std::abs(s.y.determinant()),
          std::abs(s.z.determinant())};
}

}  // namespace genmax
