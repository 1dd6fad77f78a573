#include "genmax/gersten.hpp"

#include <cmath>
#include <stdexcept>

#include "genmax/errors.hpp"
#include "genmax/spin_algebra.hpp"

namespace genmax {

bool MomentumState::on_shell() const {
  return std::abs(E * E - p.squared_norm() - m * m) <= 1e-12 * std::max(1.0, E * E);
}

RSVector RSVector::from_fields(const Vec3& e, const Vec3& b, cplx chi) {
  RSVector v;
  v.psi = e.cast<cplx>() - kI * b.cast<cplx>();
  v.chi = chi;
  return v;
}

double eq9_residual(const MomentumState& s, const RSVector& v) {
  const SpinMatrix I = SpinMatrix::Identity();
  const SpinMatrix sp = spin_dot_p(s.p);
  const Vec3c lhs = (s.E * s.E - s.p.squared_norm()) * v.psi;
  const Vec3c rhs = (s.E * I - sp) * ((s.E * I + sp) * v.psi) - s.p.cvec() * dot(s.p, v.psi);
  return (lhs - rhs).norm();
}

std::pair<double, double> standard_solution_residual(const MomentumState& s, const RSVector& v) {
  const Vec3c r = s.E * v.psi + spin_dot_p(s.p) * v.psi;
  return {r.norm(), std::abs(dot(s.p, v.psi))};
}

std::pair<double, double> generalized_solution_residual(const MomentumState& s,
                                                        const RSVector& v) {
  // Written so that chi = 0 reproduces standard_solution_residual bit for bit.
  Vec3c r = s.E * v.psi + spin_dot_p(s.p) * v.psi;
  cplx t = dot(s.p, v.psi);
  if (v.chi != cplx{}) {
    r -= s.p.cvec() * v.chi;
    t -= s.E * v.chi;
  }
  return {r.norm(), std::abs(t)};
}

Vec3c helicity_eigenvector(const Momentum3& p, int helicity) {
  if (helicity != 1 && helicity != -1) {
    throw std::invalid_argument("helicity must be +1 or -1");
  }
  const double pn = p.norm();
  if (pn == 0.0) throw ZeroMomentum();

  const double rho = std::hypot(p.px, p.py);
  const double theta = std::atan2(rho, p.pz);
  const double phi = (rho == 0.0) ? 0.0 : std::atan2(p.py, p.px);

  const Eigen::Matrix3d rot =
      (Eigen::AngleAxisd(phi, Vec3::UnitZ()) * Eigen::AngleAxisd(theta, Vec3::UnitY()))
          .toRotationMatrix();
  const Vec3c ez = Vec3c(1.0, kI * static_cast<double>(helicity), 0.0) / std::sqrt(2.0);
  return rot.cast<cplx>() * ez;
}

std::pair<MomentumState, RSVector> build_generalized_planewave(const Momentum3& p,
                                                               int energy_sign,
                                                               cplx transverse_amplitude,
                                                               cplx chi) {
  if (energy_sign != 1 && energy_sign != -1) {
    throw std::invalid_argument("energy_sign must be +1 or -1");
  }
  const double pn = p.norm();
  if (pn == 0.0) throw ZeroMomentum();

  MomentumState s{energy_sign * pn, p, 0.0};
  RSVector v;
  v.psi = transverse_amplitude * helicity_eigenvector(p, -energy_sign) +
          p.cvec() * (chi / s.E);
  v.chi = chi;
  return {s, v};
}

double chi_onshell_residual(const MomentumState& s, const RSVector& v) {
  const auto [r1, r2] = generalized_solution_residual(s, v);
  const double scale =
      (1.0 + std::abs(s.E) + s.p.norm()) * std::max(1.0, v.psi.norm() + std::abs(v.chi));
  if (r1 > 1e-12 * scale || r2 > 1e-12 * scale) {
    throw PreconditionViolated("not a solution of the generalized pair (residuals " +
                               std::to_string(r1) + ", " + std::to_string(r2) + ")");
  }
  return std::abs((s.E * s.E - s.p.squared_norm()) * v.chi);
}

std::vector<GeneralizedMode> find_generalized_solutions(const Momentum3& p) {
  // E D x + K x = 0 with x = (Psi, chi), D = diag(1,1,1,-1) and
  // K = [[S.p, -p], [p^T, 0]]  <=>  (-D K) x = E x.
  Mat4c a = Mat4c::Zero();
  a.topLeftCorner<3, 3>() = -spin_dot_p(p);
  a.topRightCorner<3, 1>() = p.cvec();
  a.bottomLeftCorner<1, 3>() = p.cvec().transpose();

  Eigen::ComplexEigenSolver<Mat4c> es(a);
  std::vector<GeneralizedMode> out;
  out.reserve(4);
  for (int i = 0; i < 4; ++i) {
    const Vec4c x = es.eigenvectors().col(i);
    RSVector v;
    v.psi = x.head<3>();
    v.chi = x(3);
    out.push_back({es.eigenvalues()(i), v});
  }
  return out;
}

}  // namespace genmax
