#pragma once

// End-to-end pipelines: a composite ℝ²×SPD(2) primitive driving either a
// variable-stiffness mass-spring-damper or a redundant arm that tracks a
// manipulability profile.

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gadmp/dmp.hpp"
#include "gadmp/sim.hpp"

namespace gadmp::experiments {

/// Horizontally aligned start stiffness of the variable-stiffness experiment (N/m).
Eigen::Matrix2d reference_stiffness();

/// Splits a composite ℝ²×SPD(2) trajectory into positions and matrices.
PlanarTrajectory position_part(const ManifoldTrajectory& composite);
ManifoldTrajectory spd_part(const ManifoldTrajectory& composite);

/// Joins a planar path and an SPD(2) profile sampled at the same times.
ManifoldTrajectory compose(const PlanarTrajectory& path, const ManifoldTrajectory& spd);

struct MsdConfig {
  Eigen::Matrix2d k_start = reference_stiffness();
  double total_angle = 1.5707963267948966;
  Eigen::Vector2d p_start{0.0, 0.0};
  Eigen::Vector2d p_goal{0.4, 0.2};
  int samples = 200;
  double tau = 1.0;
  double duration = 3.0;  // rollout length, leaves time to settle
  double mass = 1.0;
  double alpha_z = dmp::kDefaultAlphaZ;
  int n_basis = dmp::kDefaultBasisCount;
  /// Optional stiffness goal switch (time, new stiffness).
  std::optional<std::pair<double, Eigen::Matrix2d>> stiffness_switch;
};

struct MsdRun {
  ManifoldTrajectory demo;
  dmp::Model model;
  dmp::RolloutResult rollout;
  std::vector<Eigen::Vector2d> positions;  // MSD position per rollout sample
  std::vector<Eigen::Vector2d> forces;     // spring force per rollout sample
  double final_error = 0.0;                // ‖p_end − p_goal‖
  double final_stiffness_distance = 0.0;   // affine-invariant, to the active stiffness goal
  double dt = 0.0;
};

MsdRun run_msd(const MsdConfig& cfg);

struct ManipulabilityConfig {
  sim::PlanarArm arm{{0.6, 0.6, 0.6, 0.6, 0.6}, {}};
  Eigen::Vector2d center{1.4, 0.4};
  double box = 1.0;
  double duration = 2.0;
  /// Posture from which the desired profile is generated.
  Eigen::VectorXd q_reference = (Eigen::VectorXd(5) << 1.2, -0.6, -0.6, -0.4, 0.2).finished();
  /// Initial guess for the tracking run's starting posture.
  Eigen::VectorXd q_start_guess = (Eigen::VectorXd(5) << -0.4, 0.6, 0.6, 0.2, -0.6).finished();
  double alpha_z = dmp::kDefaultAlphaZ;
  int n_basis = dmp::kDefaultBasisCount;
};

struct ManipulabilityRun {
  ManifoldTrajectory demo;
  dmp::Model model;
  PlanarTrajectory p_des;
  ManifoldTrajectory ups_des;
  sim::TrackingResult tracking;
};

/// Fits the composite primitive to `path` mapped into the arm's workspace plus
/// its manipulability profile, then tracks the rollout with gain `alpha`.
ManipulabilityRun run_manipulability(const ManipulabilityConfig& cfg, const PlanarTrajectory& path,
                                     double alpha);

}  // namespace gadmp::experiments
