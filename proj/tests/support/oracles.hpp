#pragma once

// Random sampling on the manifolds and closed-form reference implementations
// that do not go through the library's map code.

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "gadmp/dmp.hpp"
#include "gadmp/manifolds.hpp"

namespace gadmp::testing {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using manifolds::Descriptor;
using manifolds::Kind;
using manifolds::Point;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

  VectorXd normal_vector(Eigen::Index n) {
    VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  VectorXd unit_vector(Eigen::Index n) {
    VectorXd v = normal_vector(n);
    while (v.norm() < 1e-3) v = normal_vector(n);
    return v.normalized();
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline MatrixXd random_rotation(Rng& rng, int m) {
  MatrixXd a(m, m);
  for (int i = 0; i < m; ++i) a.col(i) = rng.normal_vector(m);
  Eigen::HouseholderQR<MatrixXd> qr(a);
  MatrixXd q = qr.householderQ();
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

/// SPD matrix with eigenvalues exp(U(-spread, spread)).
inline MatrixXd random_spd(Rng& rng, int m, double spread = 1.0) {
  const MatrixXd q = random_rotation(rng, m);
  VectorXd lambda(m);
  for (int i = 0; i < m; ++i) lambda(i) = std::exp(rng.uniform(-spread, spread));
  const MatrixXd s = q * lambda.asDiagonal() * q.transpose();
  return 0.5 * (s + s.transpose());
}

inline VectorXd row_major(const MatrixXd& m) {
  VectorXd out(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i * m.cols() + j) = m(i, j);
  return out;
}

inline MatrixXd square(const VectorXd& data) {
  const auto m = static_cast<Eigen::Index>(std::lround(std::sqrt(static_cast<double>(data.size()))));
  MatrixXd out(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) out(i, j) = data(i * m + j);
  return out;
}

inline VectorXd random_point_data(Rng& rng, const Descriptor& d) {
  switch (d.kind()) {
    case Kind::Euclidean: return rng.normal_vector(d.dimension());
    case Kind::Sphere: return rng.unit_vector(d.dimension() + 1);
    case Kind::UnitQuaternion: return rng.unit_vector(4);
    case Kind::SpecialOrthogonal: return row_major(random_rotation(rng, d.dimension()));
    case Kind::Spd: return row_major(random_spd(rng, d.dimension()));
    case Kind::Product: {
      VectorXd out(d.ambient_dim());
      const auto parts = d.parts();
      const auto offsets = d.ambient_offsets();
      for (std::size_t i = 0; i < parts.size(); ++i) {
        out.segment(offsets[i], parts[i].ambient_dim()) = random_point_data(rng, parts[i]);
      }
      return out;
    }
  }
  return {};
}

inline Point random_point(Rng& rng, const Descriptor& d) { return {d, random_point_data(rng, d)}; }

// Removes base-normal components of sphere parts.
inline void make_tangent(const Descriptor& d, const VectorXd& base, Eigen::Ref<VectorXd> v) {
  if (d.kind() == Kind::Sphere) {
    v -= v.dot(base) * base;
  } else if (d.kind() == Kind::Product) {
    const auto parts = d.parts();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      make_tangent(parts[i], base.segment(d.ambient_offsets()[i], parts[i].ambient_dim()),
                   v.segment(d.tangent_offsets()[i], parts[i].tangent_dim()));
    }
  }
}

/// Random tangent coordinates at `base` with the given norm.
inline VectorXd random_tangent(Rng& rng, const Point& base, double norm) {
  VectorXd v = rng.normal_vector(base.descriptor.tangent_dim());
  make_tangent(base.descriptor, base.data, v);
  while (v.norm() < 1e-3) {
    v = rng.normal_vector(base.descriptor.tangent_dim());
    make_tangent(base.descriptor, base.data, v);
  }
  return norm * v.normalized();
}

// ---------------------------------------------------------------------------
// Closed-form oracles.

/// Affine-invariant Log_P(Q) as an ambient symmetric matrix.
inline MatrixXd spd_log_oracle(const MatrixXd& p, const MatrixXd& q) {
  const MatrixXd ph = p.sqrt();
  const MatrixXd pih = ph.inverse();
  return ph * (pih * q * pih).log() * ph;
}

inline MatrixXd spd_exp_oracle(const MatrixXd& p, const MatrixXd& v) {
  const MatrixXd ph = p.sqrt();
  const MatrixXd pih = ph.inverse();
  return ph * (pih * v * pih).exp() * ph;
}

/// Ambient matrix of whitened Mandel coordinates: P^½ sym(v) P^½.
inline MatrixXd spd_ambient_tangent(const MatrixXd& p, const VectorXd& mandel) {
  const int m = static_cast<int>(p.rows());
  MatrixXd s = MatrixXd::Zero(m, m);
  int k = m;
  for (int i = 0; i < m; ++i) s(i, i) = mandel(i);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) s(i, j) = s(j, i) = mandel(k++) / std::sqrt(2.0);
  const MatrixXd ph = p.sqrt();
  return ph * s * ph;
}

/// ω with R₂R₁ᵀ = rotation by |ω| about ω/|ω|, through the unit quaternion.
inline Eigen::Vector3d so3_log_oracle(const Eigen::Matrix3d& r1, const Eigen::Matrix3d& r2) {
  const Eigen::Quaterniond q(Eigen::Matrix3d(r2 * r1.transpose()));
  Eigen::Vector3d v = q.vec();
  double w = q.w();
  if (w < 0.0) {
    v = -v;
    w = -w;
  }
  const double s = v.norm();
  if (s == 0.0) return Eigen::Vector3d::Zero();
  return (2.0 * std::atan2(s, w) / s) * v;
}

inline Eigen::Matrix3d so3_exp_oracle(const Eigen::Matrix3d& r, const Eigen::Vector3d& w) {
  const double angle = w.norm();
  if (angle == 0.0) return r;
  const Eigen::Quaterniond q(std::cos(angle / 2.0), std::sin(angle / 2.0) * w.x() / angle,
                             std::sin(angle / 2.0) * w.y() / angle, std::sin(angle / 2.0) * w.z() / angle);
  return q.toRotationMatrix() * r;
}

/// Great circle through p with initial velocity v (v ⟂ p).
inline VectorXd sphere_exp_oracle(const VectorXd& p, const VectorXd& v) {
  const double a = v.norm();
  if (a == 0.0) return p;
  return std::cos(a) * p + std::sin(a) * (v / a);
}

inline VectorXd sphere_log_oracle(const VectorXd& p, const VectorXd& q) {
  const double c = std::clamp(p.dot(q), -1.0, 1.0);
  const VectorXd u = q - c * p;
  if (u.norm() == 0.0) return VectorXd::Zero(p.size());
  return std::acos(c) * u.normalized();
}

// ---------------------------------------------------------------------------
// Classical (vector-space) DMP with the same semi-implicit integrator:
//   τż = α(β(g − y) − z) + f(x),  f(x) = (g − y₀)·(Σψw / Σψ)·x
//   z += ż δt,  y += z δt / τ,  x *= exp(−α_x δt / τ)
// Weights, centers and widths are taken as given.

struct ClassicalDmp {
  double alpha_z, beta_z, alpha_x, tau;
  std::vector<double> centers, widths;
  MatrixXd weights;  // dims × N
  VectorXd y0, goal;
};

inline std::vector<VectorXd> classical_rollout(const ClassicalDmp& dmp, double dt, int steps) {
  const Eigen::Index dims = dmp.y0.size();
  const std::size_t n = dmp.centers.size();
  VectorXd y = dmp.y0, z = VectorXd::Zero(dims);
  double x = 1.0;
  const double decay = std::exp(-dmp.alpha_x * dt / dmp.tau);
  std::vector<VectorXd> out{y};
  std::vector<double> psi(n);
  for (int s = 0; s < steps; ++s) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      psi[i] = std::exp(-dmp.widths[i] * (x - dmp.centers[i]) * (x - dmp.centers[i]));
      total += psi[i];
    }
    VectorXd zdot(dims);
    for (Eigen::Index k = 0; k < dims; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += dmp.weights(k, static_cast<Eigen::Index>(i)) * psi[i];
      const double f = (dmp.goal(k) - dmp.y0(k)) * (acc / total) * x;
      zdot(k) = (dmp.alpha_z * (dmp.beta_z * (dmp.goal(k) - y(k)) - z(k)) + f) / dmp.tau;
    }
    z += zdot * dt;
    y += z * (dt / dmp.tau);
    x = std::max(x * decay, dmp::kPhaseFloor);
    out.push_back(y);
  }
  return out;
}

inline double max_abs_diff(const VectorXd& a, const VectorXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace gadmp::testing
