#pragma once

// Matrix functions of symmetric matrices via the symmetric eigendecomposition,
// Mandel vectorization, and small quaternion / rotation helpers.

#include <Eigen/Dense>
#include <functional>

namespace gadmp::linalg {

/// V f(Λ) Vᵀ for symmetric A (A is symmetrized first).
Eigen::MatrixXd sym_apply(const Eigen::MatrixXd& a, const std::function<double(double)>& f);

Eigen::MatrixXd sym_log(const Eigen::MatrixXd& a);
Eigen::MatrixXd sym_exp(const Eigen::MatrixXd& a);
Eigen::MatrixXd sym_sqrt(const Eigen::MatrixXd& a);
Eigen::MatrixXd sym_inv_sqrt(const Eigen::MatrixXd& a);

double min_eigenvalue(const Eigen::MatrixXd& a);

/// Mandel layout: diagonal first, then √2·a(i,j) for i<j in row-major order.
Eigen::VectorXd to_mandel(const Eigen::MatrixXd& sym);
Eigen::MatrixXd from_mandel(const Eigen::Ref<const Eigen::VectorXd>& v, int m);

inline Eigen::Matrix3d hat(const Eigen::Vector3d& w) {
  Eigen::Matrix3d k;
  k << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
       -w.y(), w.x(), 0.0;
  return k;
}

/// Hamilton product of [w, x, y, z] quaternions.
inline Eigen::Vector4d quat_mul(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  // Terms are paired so that q * conj(q) has an exactly zero vector part.
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          (a[0] * b[1] + a[1] * b[0]) + (a[2] * b[3] - a[3] * b[2]),
          (a[0] * b[2] + a[2] * b[0]) + (a[3] * b[1] - a[1] * b[3]),
          (a[0] * b[3] + a[3] * b[0]) + (a[1] * b[2] - a[2] * b[1])};
}

inline Eigen::Vector4d quat_conj(const Eigen::Vector4d& q) { return {q[0], -q[1], -q[2], -q[3]}; }

}  // namespace gadmp::linalg
