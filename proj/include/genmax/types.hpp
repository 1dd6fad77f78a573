#pragma once

#include <complex>

#include <Eigen/Dense>

namespace genmax {

using cplx = std::complex<double>;

using Vec3 = Eigen::Vector3d;
using Vec3c = Eigen::Vector3cd;
using Vec4 = Eigen::Vector4d;
using Vec4c = Eigen::Vector4cd;
using Mat3c = Eigen::Matrix3cd;
using Mat4c = Eigen::Matrix4cd;

inline constexpr cplx kI{0.0, 1.0};

/// Real spatial momentum (c = hbar = 1).
struct Momentum3 {
  double px = 0.0;
  double py = 0.0;
  double pz = 0.0;

  Momentum3() = default;
  Momentum3(double x, double y, double z) : px(x), py(y), pz(z) {}
  explicit Momentum3(const Vec3& v) : px(v.x()), py(v.y()), pz(v.z()) {}

  Vec3 vec() const { return {px, py, pz}; }
  Vec3c cvec() const { return vec().cast<cplx>(); }
  double operator[](int i) const { return i == 0 ? px : (i == 1 ? py : pz); }
  double norm() const { return vec().norm(); }
  double squared_norm() const { return vec().squaredNorm(); }

  /// p_r = p1 + i p2
  cplx p_r() const { return {px, py}; }
  /// p_l = p1 - i p2
  cplx p_l() const { return {px, -py}; }
};

/// Cartesian axis selector for the spin matrices.
enum class Axis { x = 0, y = 1, z = 2 };

}  // namespace genmax
