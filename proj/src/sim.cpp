#include "gadmp/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gadmp/errors.hpp"
#include "gadmp/matrix_functions.hpp"

namespace gadmp::sim {

using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::VectorXd;

double PlanarArm::reach() const {
  double r = 0.0;
  for (double l : link_lengths) r += l;
  return r;
}

void PlanarArm::check() const {
  if (link_lengths.size() < 2) fail(ErrorCode::InvalidArgument, "arm needs at least 2 links");
  for (double l : link_lengths) {
    if (!(l > 0.0)) fail(ErrorCode::InvalidArgument, "link lengths must be positive");
  }
  if (!joint_limits.empty() && joint_limits.size() != link_lengths.size()) {
    fail(ErrorCode::InvalidArgument, "joint limits must match the number of links");
  }
}

namespace {

void require_joints(const PlanarArm& arm, const VectorXd& q) {
  if (q.size() != arm.dof()) {
    fail(ErrorCode::InvalidArgument, "expected " + std::to_string(arm.dof()) + " joint values, got " +
                                         std::to_string(q.size()));
  }
}

bool is_spd(const MatrixXd& a) {
  if (a.rows() != a.cols() || !a.allFinite()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) return false;
  return linalg::min_eigenvalue(a) > 0.0;
}

double log_det(const MatrixXd& a) {
  Eigen::LLT<MatrixXd> llt(0.5 * (a + a.transpose()));
  if (llt.info() != Eigen::Success) fail(ErrorCode::NonSpdInput, "matrix is not positive definite");
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

double clamp_to_limits(const PlanarArm& arm, int i, double v) {
  if (arm.joint_limits.empty()) return v;
  return std::clamp(v, arm.joint_limits[i].first, arm.joint_limits[i].second);
}

}  // namespace

Vector2d forward_kinematics(const PlanarArm& arm, const VectorXd& q) {
  require_joints(arm, q);
  Vector2d p = Vector2d::Zero();
  double phi = 0.0;
  for (int k = 0; k < arm.dof(); ++k) {
    phi += q(k);
    p += arm.link_lengths[k] * Vector2d(std::cos(phi), std::sin(phi));
  }
  return p;
}

MatrixXd jacobian(const PlanarArm& arm, const VectorXd& q) {
  require_joints(arm, q);
  const int n = arm.dof();
  std::vector<double> phi(n);
  double acc = 0.0;
  for (int k = 0; k < n; ++k) phi[k] = acc += q(k);
  MatrixXd j = MatrixXd::Zero(2, n);
  // Column k sums the contributions of links k..n-1.
  double sx = 0.0, sy = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    sx += arm.link_lengths[k] * std::sin(phi[k]);
    sy += arm.link_lengths[k] * std::cos(phi[k]);
    j(0, k) = -sx;
    j(1, k) = sy;
  }
  return j;
}

Eigen::Matrix2d manipulability(const MatrixXd& j, bool inverted) {
  const Eigen::Matrix2d jjt = j * j.transpose();
  if (!inverted) return jjt;
  return linalg::sym_apply(jjt, [](double v) { return 1.0 / std::max(v, kManipulabilityFloor); });
}

MatrixXd pseudo_inverse(const MatrixXd& j) { return j.transpose() * manipulability(j, true); }

double stein_cost(const MatrixXd& a, const MatrixXd& b) {
  if (!is_spd(a) || !is_spd(b) || a.rows() != b.rows()) {
    fail(ErrorCode::NonSpdInput, "stein cost needs two SPD matrices of equal size");
  }
  const double v = log_det(0.5 * (a + b)) - 0.5 * (log_det(a) + log_det(b));
  return std::max(v, 0.0);
}

VectorXd inverse_kinematics(const PlanarArm& arm, const Vector2d& target, const VectorXd& q_init,
                            const IkOptions& options) {
  arm.check();
  require_joints(arm, q_init);
  if (!(target.norm() < arm.reach() - 1e-6)) {
    fail(ErrorCode::Unreachable, "target at distance " + std::to_string(target.norm()) +
                                     " is outside the reach " + std::to_string(arm.reach()));
  }
  VectorXd q = q_init;
  const double lambda2 = options.damping * options.damping;
  for (int it = 0; it < options.max_iterations; ++it) {
    const Vector2d e = target - forward_kinematics(arm, q);
    if (e.norm() < options.tolerance) return q;
    const MatrixXd j = jacobian(arm, q);
    const Eigen::Matrix2d a = j * j.transpose() + lambda2 * Eigen::Matrix2d::Identity();
    q += j.transpose() * a.ldlt().solve(e);
    for (int i = 0; i < arm.dof(); ++i) q(i) = clamp_to_limits(arm, i, q(i));
  }
  const double residual = (target - forward_kinematics(arm, q)).norm();
  if (residual < options.tolerance) return q;
  fail(ErrorCode::IkDiverged, "inverse kinematics residual " + std::to_string(residual) + " after " +
                                  std::to_string(options.max_iterations) + " iterations");
}

VectorXd manipulability_gradient(const PlanarArm& arm, const VectorXd& q,
                                 const Eigen::Matrix2d& target, double h) {
  VectorXd grad(q.size());
  VectorXd qp = q, qm = q;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    qp(i) = q(i) + h;
    qm(i) = q(i) - h;
    const double fp = stein_cost(manipulability(jacobian(arm, qp)), target);
    const double fm = stein_cost(manipulability(jacobian(arm, qm)), target);
    grad(i) = (fp - fm) / (2.0 * h);
    qp(i) = qm(i) = q(i);
  }
  return grad;
}

VectorXd tracking_velocity(const PlanarArm& arm, const VectorXd& q, const Vector2d& p_dot,
                           const Vector2d& error_rate, const Eigen::Matrix2d& ups_target,
                           double alpha, double h) {
  const MatrixXd j = jacobian(arm, q);
  const MatrixXd jp = pseudo_inverse(j);
  VectorXd qdot = jp * (p_dot + error_rate);
  if (alpha != 0.0) {
    const MatrixXd null = MatrixXd::Identity(q.size(), q.size()) - jp * j;
    qdot -= null * (alpha * manipulability_gradient(arm, q, ups_target, h));
  }
  return qdot;
}

TrackingResult track_with_manipulability(const PlanarArm& arm, const PlanarTrajectory& p_des,
                                         const ManifoldTrajectory& ups_des, const VectorXd& q0,
                                         const TrackingOptions& options) {
  arm.check();
  require_joints(arm, q0);
  if (arm.dof() <= 2) fail(ErrorCode::InvalidArgument, "manipulability tracking needs a redundant arm");
  if (!(ups_des.descriptor == manifolds::Descriptor::spd(2)) || ups_des.size() != p_des.size() ||
      p_des.size() < 2) {
    fail(ErrorCode::InvalidArgument, "need equally long position and SPD(2) profiles");
  }
  for (const auto& p : p_des.positions) {
    if (!(p.norm() < arm.reach() - 1e-6)) fail(ErrorCode::Unreachable, "desired path leaves the workspace");
  }
  if ((forward_kinematics(arm, q0) - p_des.positions[0]).norm() > 1e-3) {
    fail(ErrorCode::InvalidArgument, "initial configuration does not reach the path start");
  }

  TrackingResult out;
  out.manipulability.descriptor = manifolds::Descriptor::spd(2);
  VectorXd q = q0;
  const auto record = [&](std::size_t l) {
    const Eigen::Matrix2d ups = manipulability(jacobian(arm, q));
    const Eigen::Matrix2d target = manifolds::as_matrix(ups_des.point(l));
    out.joints.push_back(q);
    out.manipulability.push_back(p_des.times[l],
                                 manifolds::from_matrix(ups, out.manipulability.descriptor).data);
    out.cost.push_back(stein_cost(ups, target));
    out.position_error.push_back((forward_kinematics(arm, q) - p_des.positions[l]).norm());
  };
  record(0);
  for (std::size_t l = 0; l + 1 < p_des.size(); ++l) {
    const double dt = p_des.times[l + 1] - p_des.times[l];
    if (!(dt > 0.0)) fail(ErrorCode::NonMonotonicTime, "path timestamps must increase strictly");
    const Vector2d p_dot = (p_des.positions[l + 1] - p_des.positions[l]) / dt;
    const Vector2d error_rate =
        options.feedback * (p_des.positions[l] - forward_kinematics(arm, q)) / dt;
    const Eigen::Matrix2d target = manifolds::as_matrix(ups_des.point(l));
    q += tracking_velocity(arm, q, p_dot, error_rate, target, options.alpha,
                           options.gradient_step) * dt;
    for (int i = 0; i < arm.dof(); ++i) q(i) = clamp_to_limits(arm, i, q(i));
    record(l + 1);
  }
  double total = 0.0;
  for (double c : out.cost) total += c;
  out.mean_cost = total / static_cast<double>(out.cost.size());
  out.final_error = out.position_error.back();
  return out;
}

MsdStep msd_step(const MsdState& state, const Eigen::Matrix2d& k, const Eigen::Matrix2d& d,
                 const Vector2d& p_des, const Vector2d& v_des, double dt) {
  if (!is_spd(k) || !is_spd(d)) fail(ErrorCode::NonSpdGain, "stiffness and damping must be SPD");
  if (!(state.mass > 0.0) || !(dt > 0.0)) {
    fail(ErrorCode::InvalidArgument, "mass and dt must be positive");
  }
  MsdStep out;
  out.spring_force = k * (p_des - state.p);
  const Vector2d f = out.spring_force + d * (v_des - state.v);
  out.state = state;
  out.state.v += (f / state.mass) * dt;
  out.state.p += out.state.v * dt;
  return out;
}

}  // namespace gadmp::sim
