#pragma once

// Kinematic planar-arm simulation with manipulability tracking in the null
// space, and a planar mass-spring-damper driven by variable stiffness.

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "gadmp/trajectory.hpp"

namespace gadmp::sim {

inline constexpr double kManipulabilityFloor = 1e-10;
inline constexpr double kGradientStep = 1e-6;

struct PlanarArm {
  std::vector<double> link_lengths;
  std::vector<std::pair<double, double>> joint_limits;  // optional, radians

  int dof() const { return static_cast<int>(link_lengths.size()); }
  double reach() const;
  /// Throws InvalidArgument for fewer than 2 links or non-positive lengths.
  void check() const;
};

Eigen::Vector2d forward_kinematics(const PlanarArm& arm, const Eigen::VectorXd& q);
/// 2×n analytic Jacobian.
Eigen::MatrixXd jacobian(const PlanarArm& arm, const Eigen::VectorXd& q);

/// (JJᵀ)^† with eigenvalues of JJᵀ floored at kManipulabilityFloor; JJᵀ itself
/// when `inverted` is false.
Eigen::Matrix2d manipulability(const Eigen::MatrixXd& j, bool inverted = true);

/// Jᵀ (JJᵀ)^† using the same floored inversion.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& j);

/// log det((A+B)/2) − ½ log det(AB). Throws NonSpdInput.
double stein_cost(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct IkOptions {
  double damping = 1e-3;
  int max_iterations = 500;
  double tolerance = 1e-8;  // meters
};

/// Damped least squares from `q_init`. Throws Unreachable or IkDiverged.
Eigen::VectorXd inverse_kinematics(const PlanarArm& arm, const Eigen::Vector2d& target,
                                   const Eigen::VectorXd& q_init, const IkOptions& options = {});

struct TrackingOptions {
  double alpha = 0.0;
  /// Fraction of the current position error fed back per step.
  double feedback = 0.5;
  double gradient_step = kGradientStep;
};

struct TrackingResult {
  std::vector<Eigen::VectorXd> joints;
  ManifoldTrajectory manipulability;  // achieved Υ, SPD(2)
  std::vector<double> cost;           // g_t per sample
  std::vector<double> position_error;
  double mean_cost = 0.0;
  double final_error = 0.0;
};

/// ∇_q of stein_cost(Υ(q), target) by central differences.
Eigen::VectorXd manipulability_gradient(const PlanarArm& arm, const Eigen::VectorXd& q,
                                        const Eigen::Matrix2d& target, double h = kGradientStep);

/// Joint velocity J^†(ṗ + feedback·e/δt) − (I − J^†J) α ∇g.
Eigen::VectorXd tracking_velocity(const PlanarArm& arm, const Eigen::VectorXd& q,
                                  const Eigen::Vector2d& p_dot, const Eigen::Vector2d& error_rate,
                                  const Eigen::Matrix2d& ups_target, double alpha,
                                  double h = kGradientStep);

/// Follows p_des while pulling Υ(q) toward ups_des in the null space.
TrackingResult track_with_manipulability(const PlanarArm& arm, const PlanarTrajectory& p_des,
                                         const ManifoldTrajectory& ups_des,
                                         const Eigen::VectorXd& q0, const TrackingOptions& options);

struct MsdState {
  Eigen::Vector2d p = Eigen::Vector2d::Zero();
  Eigen::Vector2d v = Eigen::Vector2d::Zero();
  double mass = 1.0;
};

struct MsdStep {
  MsdState state;
  Eigen::Vector2d spring_force;  // K(p_des − p) before the step
};

/// Semi-implicit Euler step of m a = K(p_des − p) + D(v_des − v). Throws NonSpdGain.
MsdStep msd_step(const MsdState& state, const Eigen::Matrix2d& k, const Eigen::Matrix2d& d,
                 const Eigen::Vector2d& p_des, const Eigen::Vector2d& v_des, double dt);

}  // namespace gadmp::sim
